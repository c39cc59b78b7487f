#include "rb/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rb/analytics.hpp"
#include "rb/error.hpp"

namespace rb {

double RbParams::m_real() const {
  return r * n * std::log(static_cast<double>(d));
}

bool operator==(const RbParams& a, const RbParams& b) {
  return a.n == b.n && a.alpha == b.alpha && a.p == b.p && a.k == b.k && a.d == b.d &&
         a.b == b.b && a.p_eff == b.p_eff && a.r == b.r && a.m == b.m &&
         a.seed == b.seed && a.r_cr == b.r_cr && a.delta == b.delta &&
         a.omega == b.omega;
}

RbParams derive_params(int n, double alpha, double p, int k, std::uint64_t seed,
                       const DensityMode& mode) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be at least 2");
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::kInvalidArgument, "p must lie in (0,1)");
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be at least 2");

  RbParams params;
  params.n = n;
  params.alpha = alpha;
  params.p = p;
  params.k = k;
  params.seed = seed;
  params.d = mode.explicit_d ? *mode.explicit_d
                             : static_cast<int>(std::lround(std::pow(n, alpha)));
  if (params.d < 2) {
    throw Error(ErrorCode::kInvalidArgument, "domain size d = round(n^alpha) must be >= 2");
  }

  const long raw_b = std::lround((1.0 - p) * params.d);
  params.b = static_cast<int>(std::clamp<long>(raw_b, 1, params.d - 1));
  params.p_eff = 1.0 - static_cast<double>(params.b) / params.d;
  if (params.b != raw_b && std::abs(params.p_eff - p) > 0.25) {
    std::ostringstream msg;
    msg << "tightness p=" << p << " degenerates at d=" << params.d
        << " (effective p=" << params.p_eff << ")";
    throw Error(ErrorCode::kDegenerateTightness, msg.str());
  }

  const Thresholds t = thresholds(params.p_eff, k, alpha, n, params.d);
  params.r_cr = t.r_cr;
  params.delta = t.delta;
  params.omega = t.omega;
  params.r = mode.explicit_r ? *mode.explicit_r : t.r_threshold;
  if (!(params.r > 0.0)) throw Error(ErrorCode::kInvalidArgument, "r must be positive");
  params.m = std::max(1, static_cast<int>(std::lround(params.m_real())));
  return params;
}

void check_params(const RbParams& params) {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "invalid parameters: " + what);
  };
  if (params.n < 1) fail("n < 1");
  if (params.k < 2) fail("k < 2");
  if (params.d < 2) fail("d < 2");
  if (params.b < 1 || params.b > params.d - 1) fail("b outside [1, d-1]");
  if (params.m < 0) fail("m < 0");
  if (!(params.p_eff > 0.0 && params.p_eff < 1.0)) fail("p_eff outside (0,1)");
}

AlphaReport validate_alpha(const RbParams& params) {
  const double p = params.p_eff;
  const double k = params.k;
  const double log_q = std::log1p(-p);
  AlphaReport report;

  const double slope = 1.0 + p * k / log_q;
  report.bound_omega =
      slope < 0.0 ? -1.0 / slope : std::numeric_limits<double>::infinity();
  report.bound_degree = -2.0 * (100.0 / 99.0) * (100.0 / 99.0) * log_q / k;
  report.bound_self_unsat = 100.0 * log_q / (k * std::log1p(-p / 3.0));

  const double alpha = params.alpha;
  report.exceeds_one = alpha > report.bound_one;
  report.exceeds_omega = alpha > report.bound_omega;
  report.exceeds_degree = alpha > report.bound_degree;
  report.exceeds_self_unsat = alpha > report.bound_self_unsat;
  report.k_condition = k >= 1.0 / (1.0 - p);
  report.omega_negative = 1.0 + alpha * slope < 0.0;

  const double bounds[] = {report.bound_one, report.bound_omega, report.bound_degree,
                           report.bound_self_unsat};
  const auto* max_it = std::max_element(std::begin(bounds), std::end(bounds));
  report.binding_bound = *max_it;
  report.binding_index = static_cast<int>(max_it - std::begin(bounds));
  return report;
}

}  // namespace rb
