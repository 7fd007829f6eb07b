#pragma once

// The nearest-neighbour sign tree: from the current value jump to the
// nearest realized point above (+) or below (-) on the next line.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"
#include "interpolate.hpp"
#include "random_set.hpp"

namespace interperc {

enum class Sign : std::int8_t { minus = -1, plus = 1 };
using SignSequence = std::vector<Sign>;

inline char to_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

/// Identity used for g_0 = 0, which is not a realized point.
inline constexpr std::int64_t kNoPoint = std::numeric_limits<std::int64_t>::min();

struct TraceResult {
  SignSequence signs;
  std::vector<Anchor> values;  // g_0 = 0, g_1, ..., g_n
  double total_variation = 0.0;
  std::optional<double> weighted_variation;  // when every line is Poisson
};

inline double total_variation(std::span<const double> seq) {
  double tv = 0.0;
  for (std::size_t i = 1; i < seq.size(); ++i) tv += std::abs(seq[i] - seq[i - 1]);
  return tv;
}

/// Sum of |h_i - h_{i-1}| in exact rational arithmetic.
inline boost::multiprecision::cpp_rational exact_total_variation(std::span<const double> seq) {
  using boost::multiprecision::cpp_rational;
  cpp_rational tv = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    cpp_rational d = cpp_rational(seq[i]) - cpp_rational(seq[i - 1]);
    tv += d < 0 ? cpp_rational(-d) : d;
  }
  return tv;
}

namespace detail {

inline std::optional<std::vector<double>> intensities(std::span<const Line> lines) {
  std::vector<double> out;
  for (const auto& l : lines) {
    auto lam = intensity_of(l.set.model());
    if (!lam) return std::nullopt;
    out.push_back(*lam);
  }
  return out;
}

inline void finish_trace(TraceResult& t, std::span<const Line> lines) {
  std::vector<double> g;
  for (const auto& a : t.values) g.push_back(a.value);
  t.total_variation = total_variation(g);
  if (auto lam = intensities(lines)) {
    double w = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i) w += (*lam)[i - 1] * std::abs(g[i] - g[i - 1]);
    t.weighted_variation = w;
  }
}

inline NearestPoint step(Line& line, double from, Sign s) {
  return nearest(line.set, from, s == Sign::plus ? Direction::up : Direction::down);
}

}  // namespace detail

/// Follow the sign tree so as to trace `f_values` (f_0 := 0):
/// s_i = sign(f_i - g_{i-1}) with sign(0) = +, g_i = nearest point of line i
/// from g_{i-1} in direction s_i.
inline TraceResult greedy_trace(std::span<Line> lines, std::span<const Anchor> f_values) {
  if (lines.size() != f_values.size())
    throw InvalidArgument("greedy_trace: one f value per line required");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& a = f_values[i];
    components_in(lines[i].set, a.value, a.value);
    if (!lines[i].set.contains(a))
      throw InvalidArgument("greedy_trace: f value " + std::to_string(i) +
                            " is not a realized point of its line");
  }
  TraceResult t;
  t.values.push_back({0.0, kNoPoint});
  double g = 0.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Sign s = f_values[i].value - g >= 0.0 ? Sign::plus : Sign::minus;
    auto p = detail::step(lines[i], g, s);
    g = p.value;
    t.signs.push_back(s);
    t.values.push_back({g, p.point_id});
  }
  detail::finish_trace(t, lines);
  return t;
}

/// True iff V(trace) <= V(0, f_1, ..., f_n), compared exactly.
inline bool trace_dominated(const TraceResult& trace, std::span<const Anchor> f_values) {
  std::vector<double> g, f{0.0};
  for (const auto& a : trace.values) g.push_back(a.value);
  for (const auto& a : f_values) f.push_back(a.value);
  return exact_total_variation(g) <= exact_total_variation(f);
}

/// Replay a sign sequence through the tree.
inline TraceResult trace_signs(std::span<Line> lines, const SignSequence& signs) {
  detail::require(signs.size() == lines.size(), "trace_signs: one sign per line required");
  TraceResult t;
  t.signs = signs;
  t.values.push_back({0.0, kNoPoint});
  double g = 0.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto p = detail::step(lines[i], g, signs[i]);
    g = p.value;
    t.values.push_back({g, p.point_id});
  }
  detail::finish_trace(t, lines);
  return t;
}

enum class MinMethod { reachable_states, brute_force };

inline constexpr std::size_t kBruteForceMaxLines = 24;

namespace detail {

// Lexicographic with '-' before '+'.
inline bool signs_less(const SignSequence& a, const SignSequence& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](Sign x, Sign y) { return x < y; });
}

inline void brute_force_dfs(std::span<Line> lines, std::size_t depth, double g, double tv,
                            SignSequence& path, double& best, SignSequence& best_path) {
  if (depth == lines.size()) {
    if (tv < best) {
      best = tv;
      best_path = path;
    }
    return;
  }
  for (Sign s : {Sign::minus, Sign::plus}) {
    auto p = step(lines[depth], g, s);
    path.push_back(s);
    brute_force_dfs(lines, depth + 1, p.value, tv + std::abs(p.value - g), path, best, best_path);
    path.pop_back();
  }
}

}  // namespace detail

/// min over s in {+,-}^n of V(g^s), with the minimizing signs (ties go to
/// the lexicographically smallest sequence, '-' < '+').
///
/// reachable_states keeps, per realized value reachable after i steps, the
/// cheapest sign path reaching it; future jumps depend only on the current
/// value so this is exact. brute_force enumerates all 2^n paths.
inline TraceResult min_total_variation(std::span<Line> lines, MinMethod method) {
  SignSequence best_signs;
  if (method == MinMethod::brute_force) {
    detail::require(lines.size() <= kBruteForceMaxLines, "brute force limited to 24 lines");
    double best = std::numeric_limits<double>::infinity();
    SignSequence path;
    detail::brute_force_dfs(lines, 0, 0.0, 0.0, path, best, best_signs);
  } else {
    struct State {
      double tv;
      SignSequence signs;
    };
    std::map<double, State> states{{0.0, State{0.0, {}}}};
    for (auto& line : lines) {
      std::map<double, State> next;
      for (const auto& [g, st] : states) {
        for (Sign s : {Sign::minus, Sign::plus}) {
          auto p = detail::step(line, g, s);
          State cand{st.tv + std::abs(p.value - g), st.signs};
          cand.signs.push_back(s);
          auto [it, inserted] = next.try_emplace(p.value, cand);
          if (!inserted && (cand.tv < it->second.tv ||
                            (cand.tv == it->second.tv && detail::signs_less(cand.signs, it->second.signs)))) {
            it->second = std::move(cand);
          }
        }
      }
      states = std::move(next);
    }
    const State* best = nullptr;
    for (const auto& [g, st] : states) {
      if (!best || st.tv < best->tv || (st.tv == best->tv && detail::signs_less(st.signs, best->signs)))
        best = &st;
    }
    best_signs = best->signs;
  }
  return trace_signs(lines, best_signs);
}

/// Per-step weighted jumps lambda_i * |g_i - g_{i-1}|.
inline std::vector<double> weighted_variation_diagnostic(const TraceResult& trace,
                                                         std::span<const double> intensities) {
  if (trace.values.size() != intensities.size() + 1)
    throw InvalidArgument("weighted_variation_diagnostic: one intensity per step required");
  std::vector<double> out;
  out.reserve(intensities.size());
  for (std::size_t i = 0; i < intensities.size(); ++i) {
    out.push_back(intensities[i] * std::abs(trace.values[i + 1].value - trace.values[i].value));
  }
  return out;
}

}  // namespace interperc
