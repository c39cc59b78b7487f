#pragma once

#include <cstdint>
#include <optional>

namespace rb {

/// Model RB parameters. `b` is the integral row degree actually used; every
/// analytic quantity is computed from `p_eff = 1 - b/d`, not from `p`.
struct RbParams {
  int n = 0;
  double alpha = 0.0;
  double p = 0.0;
  int k = 2;
  int d = 0;
  int b = 0;
  double p_eff = 0.0;
  double r = 0.0;
  int m = 0;
  std::uint64_t seed = 0;
  double r_cr = 0.0;
  double delta = 0.0;
  double omega = 0.0;

  /// r·n·ln d before rounding to the integer constraint count.
  double m_real() const;
};

bool operator==(const RbParams& a, const RbParams& b);

struct DensityMode {
  /// Unset: the threshold point r = r_cr + delta/(n ln d).
  std::optional<double> explicit_r;
  /// Unset: d = round(n^alpha).
  std::optional<int> explicit_d;

  static DensityMode threshold() { return {}; }
  static DensityMode with_r(double r) { return {r, std::nullopt}; }
};

RbParams derive_params(int n, double alpha, double p, int k, std::uint64_t seed,
                       const DensityMode& mode = DensityMode::threshold());

/// Checks the RbParams invariants; throws rb::Error on violation.
void check_params(const RbParams& params);

/// The four lower bounds on alpha from the asymptotic alpha condition, plus
/// the side conditions. A pure report: desk-scale parameters fail it.
struct AlphaReport {
  double bound_one = 1.0;
  /// inf{alpha : omega < 0}; +inf when omega never goes negative.
  double bound_omega = 0.0;
  double bound_degree = 0.0;
  double bound_self_unsat = 0.0;
  bool exceeds_one = false;
  bool exceeds_omega = false;
  bool exceeds_degree = false;
  bool exceeds_self_unsat = false;
  bool k_condition = false;  ///< k >= 1/(1 - p_eff)
  bool omega_negative = false;
  double binding_bound = 0.0;  ///< max of the four bounds
  int binding_index = 0;       ///< 0..3, which bound is the max

  bool all_hold() const {
    return exceeds_one && exceeds_omega && exceeds_degree && exceeds_self_unsat &&
           k_condition;
  }
};

AlphaReport validate_alpha(const RbParams& params);

}  // namespace rb
