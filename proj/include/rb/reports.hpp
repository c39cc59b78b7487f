#pragma once

#include "rb/analytics.hpp"
#include "rb/params.hpp"
#include "rb/search.hpp"
#include "rb/serialize.hpp"
#include "rb/symmetry.hpp"

namespace rb {

/// {status, count, nodes, solutions}
Json to_json(const SolveReport& report);
Json to_json(const NearSolutionReport& report);
Json to_json(const SelfUnsatReport& report);
Json to_json(const DegreeReport& report);
Json to_json(const AlphaReport& report);
Json to_json(const Thresholds& thresholds);
/// F terms are left out; they go to the per-S CSV.
Json to_json(const MomentReport& report);
Json to_json(const FlipOutcome& outcome);

/// "S,s,F" rows for S = 0..n.
std::string f_terms_csv(const MomentReport& report);

}  // namespace rb
