#pragma once

#include <string>

#include <json.hpp>

#include "rb/instance.hpp"

namespace rb {

using Json = nlohmann::ordered_json;

Json params_to_json(const RbParams& params);
RbParams params_from_json(const Json& j);

/// Canonical form: fixed key order, tuples sorted, no whitespace.
Json instance_to_json(const Instance& instance);
std::string serialize_instance(const Instance& instance);

Instance instance_from_json(const Json& j);
Instance parse_instance(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace rb
