#include "rb/serialize.hpp"

#include <fstream>
#include <sstream>

#include "rb/error.hpp"

namespace rb {

Json params_to_json(const RbParams& params) {
  Json j;
  j["n"] = params.n;
  j["alpha"] = params.alpha;
  j["p"] = params.p;
  j["k"] = params.k;
  j["d"] = params.d;
  j["b"] = params.b;
  j["p_eff"] = params.p_eff;
  j["r"] = params.r;
  j["m"] = params.m;
  j["seed"] = params.seed;
  j["r_cr"] = params.r_cr;
  j["delta"] = params.delta;
  j["omega"] = params.omega;
  return j;
}

RbParams params_from_json(const Json& j) {
  RbParams params;
  params.n = j.at("n").get<int>();
  params.alpha = j.at("alpha").get<double>();
  params.p = j.at("p").get<double>();
  params.k = j.at("k").get<int>();
  params.d = j.at("d").get<int>();
  params.b = j.at("b").get<int>();
  params.p_eff = j.at("p_eff").get<double>();
  params.r = j.at("r").get<double>();
  params.m = j.at("m").get<int>();
  params.seed = j.at("seed").get<std::uint64_t>();
  params.r_cr = j.at("r_cr").get<double>();
  params.delta = j.at("delta").get<double>();
  params.omega = j.at("omega").get<double>();
  return params;
}

Json instance_to_json(const Instance& instance) {
  Json j;
  j["format"] = kFormatVersion;
  j["params"] = params_to_json(instance.params);
  Json base;
  if (instance.base_kind == BaseKind::kCirculant) {
    base["kind"] = "circulant";
    base["b"] = instance.params.b;
  } else {
    base["kind"] = "explicit";
    base["tuples"] = instance.base.tuples();
  }
  j["base"] = std::move(base);
  Json constraints = Json::array();
  for (const auto& c : instance.constraints) {
    Json cj;
    cj["scope"] = c.scope;
    cj["perms"] = c.perms;
    constraints.push_back(std::move(cj));
  }
  j["constraints"] = std::move(constraints);
  j["planted"] = instance.planted ? Json(*instance.planted) : Json(nullptr);
  return j;
}

std::string serialize_instance(const Instance& instance) {
  return instance_to_json(instance).dump();
}

Instance instance_from_json(const Json& j) {
  try {
    const int format = j.at("format").get<int>();
    if (format != kFormatVersion) {
      throw Error(ErrorCode::kSchemaVersion,
                  "unsupported instance format " + std::to_string(format));
    }
    Instance inst;
    inst.params = params_from_json(j.at("params"));
    const auto& base = j.at("base");
    const auto kind = base.at("kind").get<std::string>();
    if (kind == "circulant") {
      inst.base_kind = BaseKind::kCirculant;
      const int b = base.at("b").get<int>();
      if (b != inst.params.b) {
        throw Error(ErrorCode::kParse, "circulant base degree differs from params.b");
      }
      inst.base = gen_base_relation(inst.params.d, inst.params.k, b);
    } else if (kind == "explicit") {
      inst.base_kind = BaseKind::kExplicit;
      inst.base = Relation::from_tuples(inst.params.k, inst.params.d,
                                        base.at("tuples").get<std::vector<Tuple>>());
    } else {
      throw Error(ErrorCode::kParse, "unknown base kind '" + kind + "'");
    }
    for (const auto& cj : j.at("constraints")) {
      Constraint c;
      c.scope = cj.at("scope").get<std::vector<int>>();
      c.perms = cj.at("perms").get<std::vector<Permutation>>();
      inst.constraints.push_back(std::move(c));
    }
    if (!j.at("planted").is_null()) inst.planted = j.at("planted").get<Assignment>();
    validate(inst);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed instance JSON: ") + e.what());
  }
}

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed instance JSON: ") + e.what());
  }
  return instance_from_json(j);
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

void save_instance(const Instance& instance, const std::string& path) {
  write_file(path, serialize_instance(instance) + "\n");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << contents;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace rb
