#include "rb/reports.hpp"

#include <cmath>
#include <cstdio>

namespace rb {
namespace {

// JSON has no infinity; unbounded values become null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const SolveReport& report) {
  Json j;
  j["status"] = to_string(report.status);
  j["count"] = report.count ? Json(*report.count) : Json(nullptr);
  j["nodes"] = report.nodes;
  j["solutions"] = report.solutions;
  j["mode"] = to_string(report.mode);
  return j;
}

Json to_json(const NearSolutionReport& report) {
  Json j;
  j["constraint_index"] = report.constraint_index;
  j["status"] = to_string(report.status);
  j["count"] = report.count ? Json(*report.count) : Json(nullptr);
  j["witness"] = report.witness ? Json(*report.witness) : Json(nullptr);
  j["nodes"] = report.nodes;
  return j;
}

Json to_json(const SelfUnsatReport& report) {
  Json j;
  j["unsat"] = report.unsat;
  j["is_self_unsat_formula"] = report.is_self_unsat_formula;
  j["per_constraint"] = report.per_constraint;
  j["per_variable"] = report.per_variable;
  return j;
}

Json to_json(const DegreeReport& report) {
  Json j;
  j["degrees"] = report.degrees;
  j["min"] = report.min;
  j["mean"] = report.mean;
  j["threshold"] = report.threshold;
  j["below_threshold_count"] = report.below_threshold_count;
  return j;
}

Json to_json(const AlphaReport& report) {
  Json j;
  j["bounds"] = Json::array({report.bound_one, finite_or_null(report.bound_omega),
                             report.bound_degree, report.bound_self_unsat});
  j["exceeds"] = Json::array({report.exceeds_one, report.exceeds_omega, report.exceeds_degree,
                              report.exceeds_self_unsat});
  j["k_condition"] = report.k_condition;
  j["omega_negative"] = report.omega_negative;
  j["binding_bound"] = finite_or_null(report.binding_bound);
  j["binding_index"] = report.binding_index;
  j["all_hold"] = report.all_hold();
  return j;
}

Json to_json(const Thresholds& t) {
  Json j;
  j["r_cr"] = t.r_cr;
  j["delta"] = t.delta;
  j["omega"] = t.omega;
  j["omega_alt"] = t.omega_alt;
  j["r_threshold"] = t.r_threshold;
  j["omega_check"] = t.omega_check;
  return j;
}

Json to_json(const MomentReport& report) {
  Json j;
  j["EX"] = report.ex;
  j["EX2"] = report.ex2;
  j["ratio"] = report.ratio;
  j["EN"] = report.en;
  j["F0"] = report.f_zero;
  j["Fn"] = report.f_n;
  j["inverse_EX"] = report.inverse_ex;
  j["ratio_bound"] = report.ratio_bound;
  j["cauchy_lower_bound"] = report.cauchy_lower_bound;
  return j;
}

Json to_json(const FlipOutcome& outcome) {
  Json j;
  j["direction"] = to_string(outcome.direction);
  j["constraint_index"] = outcome.swap.constraint_index;
  j["coord"] = outcome.swap.coord;
  j["u"] = outcome.swap.u;
  j["u_prime"] = outcome.swap.u_prime;
  j["v"] = outcome.swap.v;
  j["v_prime"] = outcome.swap.v_prime;
  j["pre_status"] = to_string(outcome.pre_status);
  j["post_status"] = to_string(outcome.post_status);
  j["pre_count"] = outcome.pre_count ? Json(*outcome.pre_count) : Json(nullptr);
  j["post_count"] = outcome.post_count ? Json(*outcome.post_count) : Json(nullptr);
  j["avoid"] = outcome.avoid_set;
  j["u_in_avoid"] = outcome.u_in_avoid;
  j["subproblems_unchanged"] = outcome.subproblems_unchanged;
  j["witness"] = outcome.witness;
  j["witness_satisfies_post"] = outcome.witness_satisfies_post;
  return j;
}

std::string f_terms_csv(const MomentReport& report) {
  std::string out = "S,s,F\n";
  const auto n = report.f_terms.size() - 1;
  char buf[96];
  for (std::size_t s = 0; s <= n; ++s) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", s,
                  n > 0 ? static_cast<double>(s) / static_cast<double>(n) : 0.0,
                  report.f_terms[s]);
    out += buf;
  }
  return out;
}

}  // namespace rb
