#pragma once

#include <vector>

#include "rb/params.hpp"

namespace rb {

struct Thresholds {
  double r_cr = 0.0;
  double delta = 0.0;
  /// 1 + alpha(1 - r_cr p k)
  double omega = 0.0;
  /// 1 + alpha(1 + p k / ln(1-p)); algebraically equal to `omega`.
  double omega_alt = 0.0;
  double r_threshold = 0.0;
  /// (ln n + ln d - p k r ln d) / ln n at the threshold density: the exponent
  /// of n governing the F(n-1) boundary term.
  double omega_check = 0.0;
};

Thresholds thresholds(double p_eff, int k, double alpha, int n, int d);

/// Which constraint count the moment formulas use: the generated integer m,
/// or the real-valued r·n·ln d.
enum class MomentBasis { kRounded, kUnrounded };

double constraint_count(const RbParams& params, MomentBasis basis);

/// E[X] = d^n (1-p)^m, evaluated in log space.
double expected_solution_count(const RbParams& params,
                               MomentBasis basis = MomentBasis::kRounded);
double log_expected_solution_count(const RbParams& params,
                                   MomentBasis basis = MomentBasis::kRounded);

/// E[N] = d^n (1-p)^(m-1) p, near-solutions of one fixed constraint.
double expected_near_solutions(const RbParams& params,
                               MomentBasis basis = MomentBasis::kRounded);

struct MomentReport {
  double ex = 0.0;
  double ex2 = 0.0;
  /// E[X^2] / E[X]^2, i.e. the sum of the F terms.
  double ratio = 0.0;
  double en = 0.0;
  std::vector<double> f_terms;  ///< F(S) for S = 0..n
  double f_zero = 0.0;
  double f_n = 0.0;
  double inverse_ex = 0.0;
  /// 1 + 1/E[X], the bound carried by F(0) and F(n).
  double ratio_bound = 0.0;
  /// E[X]^2 / E[X^2], lower bound on Pr(X > 0).
  double cauchy_lower_bound = 0.0;
};

/// Second-moment evaluation with F(S) = C(n,S)(1-1/d)^(n-S)(1/d)^S
/// [1 + p/(1-p) s^k]^m, s = S/n. Guarded to n <= 10^4.
MomentReport second_moment(const RbParams& params,
                           MomentBasis basis = MomentBasis::kRounded);

/// Wilson score interval at 95%.
struct Interval {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

Interval wilson_interval(long long successes, long long trials);

}  // namespace rb
