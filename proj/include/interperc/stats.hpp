#pragma once

// Monte Carlo proportions, moments and Kolmogorov-Smirnov statistics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "error.hpp"

namespace interperc {

/// Proportion of successes with a normal-approximation 95% interval.
struct McEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;

  static McEstimate from_counts(std::uint64_t successes, std::uint64_t trials) {
    detail::require(trials > 0 && successes <= trials, "McEstimate: bad counts");
    McEstimate e{successes, trials, 0.0, 0.0, 0.0};
    double n = static_cast<double>(trials);
    e.p_hat = static_cast<double>(successes) / n;
    double half = 1.959963984540054 * std::sqrt(e.p_hat * (1.0 - e.p_hat) / n);
    e.ci_lo = std::max(0.0, e.p_hat - half);
    e.ci_hi = std::min(1.0, e.p_hat + half);
    return e;
  }

  [[nodiscard]] bool ci_contains(double p) const { return ci_lo <= p && p <= ci_hi; }
};

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;         // unbiased
  double excess_kurtosis = 0.0;  // m4 / m2^2 - 3
  double mean_se = 0.0;
  double variance_se = 0.0;      // sqrt((m4 - m2^2) / n)
};

inline Moments moments(std::span<const double> xs) {
  Moments m;
  m.n = xs.size();
  if (m.n < 2) return m;
  double n = static_cast<double>(m.n);
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    double d = x - m.mean;
    double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  m.variance = m2 / (n - 1.0);
  double c2 = m2 / n, c4 = m4 / n;
  m.excess_kurtosis = c4 / (c2 * c2) - 3.0;
  m.mean_se = std::sqrt(m.variance / n);
  m.variance_se = std::sqrt(std::max(0.0, c4 - c2 * c2) / n);
  return m;
}

/// Kolmogorov survival function Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
inline double kolmogorov_q(double t) {
  if (t < 1e-3) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

namespace detail {
inline double ks_p_value(double d, double effective_n) {
  double s = std::sqrt(effective_n);
  return kolmogorov_q((s + 0.12 + 0.11 / s) * d);
}
}  // namespace detail

/// One-sample KS test of `xs` against a continuous CDF.
template <typename Cdf>
KsResult ks_test(std::vector<double> xs, Cdf cdf) {
  detail::require(!xs.empty(), "ks_test: empty sample");
  std::sort(xs.begin(), xs.end());
  double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, detail::ks_p_value(d, n)};
}

/// Two-sample KS test.
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  detail::require(!a.empty() && !b.empty(), "ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, detail::ks_p_value(d, na * nb / (na + nb))};
}

inline double exponential_cdf(double x, double rate) {
  return x <= 0.0 ? 0.0 : -std::expm1(-rate * x);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace interperc
