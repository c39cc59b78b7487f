#include "rb/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rb/error.hpp"

namespace rb {
namespace {

constexpr int kMomentGuard = 10000;

double log_binomial(int n, int s) {
  return std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0);
}

// Neumaier summation over terms sorted by descending magnitude.
double compensated_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(), std::greater<>());
  double sum = 0.0;
  double carry = 0.0;
  for (double t : terms) {
    const double next = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      carry += (sum - next) + t;
    } else {
      carry += (t - next) + sum;
    }
    sum = next;
  }
  return sum + carry;
}

}  // namespace

Thresholds thresholds(double p_eff, int k, double alpha, int n, int d) {
  if (!(p_eff > 0.0 && p_eff < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "p_eff must lie in (0,1)");
  }
  const double log_q = std::log1p(-p_eff);
  const double ln_d = std::log(static_cast<double>(d));
  const double ln_n = std::log(static_cast<double>(n));
  Thresholds t;
  t.r_cr = 1.0 / -log_q;
  t.delta = std::log(2.0) / -log_q;
  t.omega = 1.0 + alpha * (1.0 - t.r_cr * p_eff * k);
  t.omega_alt = 1.0 + alpha * (1.0 + p_eff * k / log_q);
  t.r_threshold = t.r_cr + t.delta / (n * ln_d);
  t.omega_check = ln_n > 0.0 ? (ln_n + ln_d - p_eff * k * t.r_threshold * ln_d) / ln_n : 0.0;
  return t;
}

double constraint_count(const RbParams& params, MomentBasis basis) {
  return basis == MomentBasis::kRounded ? static_cast<double>(params.m) : params.m_real();
}

double log_expected_solution_count(const RbParams& params, MomentBasis basis) {
  return params.n * std::log(static_cast<double>(params.d)) +
         constraint_count(params, basis) * std::log1p(-params.p_eff);
}

double expected_solution_count(const RbParams& params, MomentBasis basis) {
  return std::exp(log_expected_solution_count(params, basis));
}

double expected_near_solutions(const RbParams& params, MomentBasis basis) {
  const double log_en = params.n * std::log(static_cast<double>(params.d)) +
                        (constraint_count(params, basis) - 1.0) * std::log1p(-params.p_eff) +
                        std::log(params.p_eff);
  return std::exp(log_en);
}

MomentReport second_moment(const RbParams& params, MomentBasis basis) {
  if (params.n > kMomentGuard) {
    throw Error(ErrorCode::kOracleGuard, "second moment summation limited to n <= 10^4");
  }
  const int n = params.n;
  const double d = params.d;
  const double m = constraint_count(params, basis);
  const double odds = params.p_eff / (1.0 - params.p_eff);

  std::vector<double> log_terms(static_cast<std::size_t>(n) + 1);
  for (int s = 0; s <= n; ++s) {
    const double frac = static_cast<double>(s) / n;
    log_terms[s] = log_binomial(n, s) + (n - s) * std::log1p(-1.0 / d) - s * std::log(d) +
                   m * std::log1p(odds * std::pow(frac, params.k));
  }
  const double log_max = *std::max_element(log_terms.begin(), log_terms.end());
  std::vector<double> scaled(log_terms.size());
  for (std::size_t i = 0; i < log_terms.size(); ++i) {
    scaled[i] = std::exp(log_terms[i] - log_max);
  }
  const double log_sum = log_max + std::log(compensated_sum(scaled));

  MomentReport report;
  const double log_ex = log_expected_solution_count(params, basis);
  report.ex = std::exp(log_ex);
  report.ex2 = std::exp(2.0 * log_ex + log_sum);
  report.ratio = std::exp(log_sum);
  report.en = expected_near_solutions(params, basis);
  report.f_terms.reserve(log_terms.size());
  for (double lt : log_terms) report.f_terms.push_back(std::exp(lt));
  report.f_zero = report.f_terms.front();
  report.f_n = report.f_terms.back();
  report.inverse_ex = std::exp(-log_ex);
  report.ratio_bound = 1.0 + report.inverse_ex;
  report.cauchy_lower_bound = std::exp(-log_sum);
  return report;
}

Interval wilson_interval(long long successes, long long trials) {
  if (trials <= 0) return {0.0, 0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double nn = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {phat, std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace rb
