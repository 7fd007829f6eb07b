#pragma once

// Summability diagnostics for intensity and length sequences, and the block
// construction of an index set with divergent prefix-minimum sum.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace interperc {

/// Positive sequence indexed from n = 1 (or n = 0 for extract_divergent_subset).
using Sequence = std::function<double(std::uint64_t)>;

enum class SeriesKind {
  wm,          // sum exp(-epsilon * lambda_n)
  reciprocal,  // sum 1 / lambda_n
  shepp,       // sum n^-2 exp(l_1 + ... + l_n)
};

inline const char* to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::wm: return "wm";
    case SeriesKind::reciprocal: return "reciprocal";
    case SeriesKind::shepp: return "shepp";
  }
  return "?";
}

enum class Trend { divergent_looking, convergent_looking, undetermined };

inline const char* to_string(Trend t) {
  switch (t) {
    case Trend::divergent_looking: return "divergent-looking";
    case Trend::convergent_looking: return "convergent-looking";
    case Trend::undetermined: return "undetermined";
  }
  return "?";
}

/// Partial sums at the requested cutoffs plus a least-squares slope of
/// log(increment per unit log-cutoff) against log(cutoff). A slope near 0
/// means the sum keeps gaining a fixed amount per decade (harmonic-like);
/// a slope near -1 means geometric decay of the tail. This is a diagnostic:
/// no finite computation decides divergence.
struct SeriesDiagnostic {
  SeriesKind kind = SeriesKind::reciprocal;
  double epsilon = 1.0;  // only used by wm
  std::vector<std::uint64_t> cutoffs;
  std::vector<double> partial_sums;
  std::optional<double> growth_exponent;  // empty when it cannot be fitted
  Trend trend = Trend::undetermined;
};

inline constexpr double kDivergentSlope = -0.2;
inline constexpr double kConvergentSlope = -0.5;

namespace detail {

// Neumaier compensated summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + carry; }
};

inline std::optional<double> fit_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 2) return std::nullopt;
  double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) return std::nullopt;
  return sxy / sxx;
}

inline void classify(SeriesDiagnostic& d) {
  if (d.cutoffs.size() < 3) return;
  std::vector<double> xs, ys;
  bool all_zero = true;
  for (std::size_t j = 1; j < d.cutoffs.size(); ++j) {
    double inc = d.partial_sums[j] - d.partial_sums[j - 1];
    double span = std::log(static_cast<double>(d.cutoffs[j])) - std::log(static_cast<double>(d.cutoffs[j - 1]));
    if (inc > 0.0) {
      all_zero = false;
      xs.push_back(std::log(static_cast<double>(d.cutoffs[j])));
      ys.push_back(std::log(inc / span));
    }
  }
  if (all_zero) {
    d.trend = Trend::convergent_looking;
    return;
  }
  if (xs.size() < 2) return;
  d.growth_exponent = fit_slope(xs, ys);
  if (!d.growth_exponent) return;
  if (*d.growth_exponent > kDivergentSlope) {
    d.trend = Trend::divergent_looking;
  } else if (*d.growth_exponent < kConvergentSlope) {
    d.trend = Trend::convergent_looking;
  }
}

}  // namespace detail

/// Exact (compensated) partial sums of the chosen series at each cutoff.
/// `params(n)` is lambda_n for wm/reciprocal and l_n for shepp, n >= 1.
inline SeriesDiagnostic series_partial_sums(SeriesKind kind, const Sequence& params,
                                            std::span<const std::uint64_t> cutoffs,
                                            double epsilon = 1.0) {
  detail::require(!cutoffs.empty(), "series_partial_sums: no cutoffs");
  detail::require(cutoffs.front() >= 1, "series_partial_sums: cutoffs start at 1");
  for (std::size_t i = 1; i < cutoffs.size(); ++i) {
    detail::require(cutoffs[i] > cutoffs[i - 1], "series_partial_sums: cutoffs must increase");
  }
  if (kind == SeriesKind::wm) {
    detail::require(std::isfinite(epsilon) && epsilon > 0.0, "series_partial_sums: epsilon must be positive");
  }
  SeriesDiagnostic d;
  d.kind = kind;
  d.epsilon = epsilon;
  d.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  detail::CompensatedSum total, lengths;
  std::size_t next = 0;
  for (std::uint64_t n = 1; n <= cutoffs.back(); ++n) {
    double p = params(n);
    double term = 0.0;
    if (kind == SeriesKind::shepp) {
      if (!(p > 0.0 && p <= 1.0))
        throw InvalidArgument("series_partial_sums: length l_" + std::to_string(n) + " outside (0,1]");
      lengths.add(p);
      term = std::exp(lengths.value() - 2.0 * std::log(static_cast<double>(n)));
    } else {
      if (!(std::isfinite(p) && p > 0.0))
        throw InvalidArgument("series_partial_sums: lambda_" + std::to_string(n) + " must be positive");
      term = kind == SeriesKind::wm ? std::exp(-epsilon * p) : 1.0 / p;
    }
    total.add(term);
    if (n == cutoffs[next]) {
      d.partial_sums.push_back(total.value());
      ++next;
    }
  }
  detail::classify(d);
  return d;
}

// ---------------------------------------------------------------------------
// Divergent subset extraction

/// A bijection of N_0 given by both directions.
struct Permutation {
  std::function<std::uint64_t(std::uint64_t)> forward;
  std::function<std::uint64_t(std::uint64_t)> inverse;
};

inline Permutation identity_permutation() {
  auto id = [](std::uint64_t a) { return a; };
  return {id, id};
}

/// Reverses each dyadic block [2^k - 1, 2^(k+1) - 2]; an involution.
inline Permutation dyadic_block_reversal() {
  auto rev = [](std::uint64_t a) {
    int k = std::bit_width(a + 1) - 1;
    std::uint64_t lo = (std::uint64_t{1} << k) - 1;
    std::uint64_t hi = (std::uint64_t{1} << (k + 1)) - 2;
    return lo + hi - a;
  };
  return {rev, rev};
}

struct SubsetBlock {
  std::vector<std::uint64_t> members;  // increasing
  std::uint64_t m = 0;                 // m_k (0 for the seed block)
  std::uint64_t n = 0;                 // n_k
  double min_mu = 0.0;                 // min over members of mu(phi(m))
  double certificate = 0.0;            // #members * min_mu
};

struct DivergentSubset {
  double epsilon = 0.0;
  std::vector<SubsetBlock> blocks;  // blocks[0] is the seed {0}
  double sum = 0.0;                 // sum over blocks 1.. of prefix minima
  bool reached = false;
};

struct SubsetConfig {
  std::uint64_t probe_budget = std::uint64_t{1} << 20;
  std::uint64_t max_index = std::uint64_t{1} << 32;
  std::size_t max_blocks = 4096;
};

/// max n * mu_n over n in [budget/2, budget], halved as in the construction.
/// Returns the probed epsilon (before halving).
inline double probe_epsilon(const Sequence& mu, std::uint64_t budget) {
  detail::require(budget >= 2, "probe_epsilon: budget must be at least 2");
  double best = 0.0;
  for (std::uint64_t n = budget / 2; n <= budget; ++n) {
    double v = static_cast<double>(n) * mu(n);
    if (std::isfinite(v)) best = std::max(best, v);
  }
  if (!(best > 0.0)) throw ProbeFailed("probe_epsilon: no positive lower bound for n*mu_n");
  return best;
}

/// Sum over n in `members` (any order) of min{mu(phi(m)) : m in members, m <= n}.
inline double prefix_min_sum(std::vector<std::uint64_t> members, const Sequence& mu, const Permutation& phi) {
  std::sort(members.begin(), members.end());
  detail::CompensatedSum s;
  double running = std::numeric_limits<double>::infinity();
  for (auto m : members) {
    running = std::min(running, mu(phi.forward(m)));
    s.add(running);
  }
  return s.value();
}

/// Blocks M_k = phi^-1((m_k, n_k]) with m_k = max phi over [0, max M_{k-1}]
/// and n_k the first n > m_k with (n - m_k) mu_n > epsilon / 2; stops once
/// the prefix-minimum sum over M_1 u ... u M_k reaches `target`.
inline DivergentSubset extract_divergent_subset(const Sequence& mu, const Permutation& phi, double target,
                                                const SubsetConfig& config = {}) {
  detail::require(std::isfinite(target), "extract_divergent_subset: target must be finite");
  DivergentSubset out;
  out.epsilon = probe_epsilon(mu, config.probe_budget);
  const double half = out.epsilon / 2.0;

  SubsetBlock seed;
  seed.members = {0};
  seed.min_mu = mu(phi.forward(0));
  seed.certificate = seed.min_mu;
  out.blocks.push_back(seed);

  detail::CompensatedSum total;
  double running = std::numeric_limits<double>::infinity();
  std::uint64_t prev_max = 0;
  while (total.value() < target) {
    if (out.blocks.size() > config.max_blocks)
      throw ProbeFailed("extract_divergent_subset: block limit reached before target");
    std::uint64_t m = 0;
    for (std::uint64_t a = 0; a <= prev_max; ++a) m = std::max(m, phi.forward(a));
    std::uint64_t n = m + 1;
    while ((static_cast<double>(n - m) * mu(n)) <= half) {
      if (++n > config.max_index)
        throw ProbeFailed("extract_divergent_subset: no n_k within the index budget");
    }
    SubsetBlock b;
    b.m = m;
    b.n = n;
    b.min_mu = std::numeric_limits<double>::infinity();
    for (std::uint64_t a = m + 1; a <= n; ++a) {
      b.members.push_back(phi.inverse(a));
      b.min_mu = std::min(b.min_mu, mu(a));
    }
    std::sort(b.members.begin(), b.members.end());
    b.certificate = static_cast<double>(b.members.size()) * b.min_mu;
    for (auto x : b.members) {
      running = std::min(running, mu(phi.forward(x)));
      total.add(running);
    }
    prev_max = b.members.back();
    out.blocks.push_back(std::move(b));
  }
  out.sum = total.value();
  out.reached = true;
  return out;
}

struct OrderingViolation {
  std::size_t earlier = 0;
  std::size_t later = 0;
  std::string what;
};

/// Checks m < n and phi(m) < phi(n) for every m in an earlier block and n
/// in a later one, via prefix maxima against suffix minima.
inline std::optional<OrderingViolation> check_block_ordering(std::span<const SubsetBlock> blocks,
                                                             const Permutation& phi) {
  std::uint64_t max_idx = 0, max_img = 0;
  std::size_t arg_idx = 0, arg_img = 0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto& b = blocks[j];
    if (b.members.empty()) return OrderingViolation{j, j, "empty block"};
    std::uint64_t min_idx = *std::min_element(b.members.begin(), b.members.end());
    std::uint64_t min_img = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t blk_max_img = 0;
    for (auto m : b.members) {
      std::uint64_t img = phi.forward(m);
      min_img = std::min(min_img, img);
      blk_max_img = std::max(blk_max_img, img);
    }
    if (j > 0) {
      if (!(max_idx < min_idx)) return OrderingViolation{arg_idx, j, "index order"};
      if (!(max_img < min_img)) return OrderingViolation{arg_img, j, "image order"};
    }
    std::uint64_t blk_max_idx = *std::max_element(b.members.begin(), b.members.end());
    if (j == 0 || blk_max_idx > max_idx) {
      max_idx = blk_max_idx;
      arg_idx = j;
    }
    if (j == 0 || blk_max_img > max_img) {
      max_img = blk_max_img;
      arg_img = j;
    }
  }
  return std::nullopt;
}

}  // namespace interperc
