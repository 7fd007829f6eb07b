#pragma once

// Continuous (level-by-level refinement) and increasing bounded
// interpolants through a finite family of realized lines.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "error.hpp"
#include "piecewise.hpp"
#include "random_set.hpp"

namespace interperc {

/// A vertical line {x} x Y_x.
struct Line {
  double x = 0.0;
  RealizedSet set;
};

/// Build a family of lines from models; line i uses stream.derive(tag::line, i)
/// and an initial window of [-window, window].
inline std::vector<Line> make_family(std::span<const LineModel> models, RngStream stream,
                                     double window = 4.0) {
  std::vector<Line> lines;
  lines.reserve(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    lines.push_back({models[i].x, realize(models[i], stream.derive(tag::line, i), {-window, window})});
  }
  return lines;
}

/// Level change of the continuous construction: f_level vs f_{level-1},
/// measured on the union of knot abscissae.
struct LevelReport {
  int level = 0;
  std::size_t lines = 0;
  double max_change = 0.0;
  double bound = 0.0;  // 2^-(level-1)
  double max_abs = 0.0;
};

struct ContinuousResult {
  PiecewiseLinearFunction f;
  double K = 0.0;
  std::vector<LevelReport> levels;  // level 0 has bound = +inf
  std::size_t final_sweep = 0;      // lines with [-K,K] inside the set
};

namespace detail {

// min{n >= 0 : radius >= 2^-n}
inline int void_level(double radius) {
  int n = 0;
  while (radius < std::ldexp(1.0, -n)) ++n;
  return n;
}

inline void check_family(std::span<const Line> lines) {
  std::vector<double> xs;
  xs.reserve(lines.size());
  for (const auto& l : lines) xs.push_back(l.x);
  std::sort(xs.begin(), xs.end());
  require(std::adjacent_find(xs.begin(), xs.end()) == xs.end(),
          "line abscissae must be pairwise distinct");
}

}  // namespace detail

/// Continuous f on [a0, a1] with f(a0) = b0, f(a1) = b1 and f(x) in Y_x for
/// every line. Lines enter at level n(x) = min{n : void radius over [-K,K]
/// >= 2^-n}; level 0 lines take the point nearest 0, later ones the point
/// nearest the current interpolant, and the knots are re-linearized after
/// each level. Lines whose set contains [-K,K] are pinned last.
inline ContinuousResult continuous_interpolate(std::span<Line> lines, double a0, double a1,
                                               double b0, double b1) {
  detail::require(std::isfinite(a0) && std::isfinite(a1) && a0 < a1,
                  "continuous_interpolate: need a0 < a1");
  detail::require(std::isfinite(b0) && std::isfinite(b1), "continuous_interpolate: bad b0/b1");
  detail::check_family(lines);
  for (const auto& l : lines) {
    detail::require(a0 < l.x && l.x < a1, "continuous_interpolate: line outside ]a0,a1[");
  }

  ContinuousResult out;
  double sup = 0.0;  // sup over the empty set is 0
  for (auto& l : lines) {
    if (max_void_radius(l.set, 1.0).radius >= 1.0) {
      sup = std::max(sup, nearest(l.set, 0.0, Direction::both).distance);
    }
  }
  out.K = std::max({sup, std::abs(b0), std::abs(b1)}) + 2.0;

  std::vector<int> level(lines.size(), -1);
  int max_level = 0;
  std::vector<std::size_t> pinned;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    double r = max_void_radius(lines[i].set, out.K).radius;
    if (r > 0.0) {
      level[i] = detail::void_level(r);
      max_level = std::max(max_level, level[i]);
    } else {
      pinned.push_back(i);
    }
  }

  PiecewiseLinearFunction f({{a0, b0, std::nullopt}, {a1, b1, std::nullopt}});
  std::size_t count0 = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (level[i] != 0) continue;
    auto p = nearest(lines[i].set, 0.0, Direction::both);
    f.insert({lines[i].x, p.value, p.point_id});
    ++count0;
  }
  out.levels.push_back({0, count0, 0.0, std::numeric_limits<double>::infinity(), f.sup_norm()});

  auto refine = [&](const std::vector<std::size_t>& members, int n, double bound) {
    std::vector<Knot> added;
    for (auto i : members) {
      double target = f(lines[i].x);
      auto p = nearest(lines[i].set, target, Direction::both);
      added.push_back({lines[i].x, p.value, p.point_id});
    }
    PiecewiseLinearFunction next = f;
    for (const auto& k : added) next.insert(k);
    double change = 0.0;
    for (const auto& k : next.knots()) change = std::max(change, std::abs(k.y - f(k.x)));
    f = std::move(next);
    out.levels.push_back({n, members.size(), change, bound, f.sup_norm()});
  };

  for (int n = 1; n <= max_level; ++n) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (level[i] == n) members.push_back(i);
    }
    if (!members.empty()) refine(members, n, std::ldexp(1.0, -(n - 1)));
  }
  if (!pinned.empty()) {
    refine(pinned, max_level + 1, std::ldexp(1.0, -max_level));
  }
  out.final_sweep = pinned.size();
  out.f = std::move(f);
  return out;
}

/// Smallest nondecreasing step function through the lines taken in order of
/// abscissa: y_0 = first point >= start on the leftmost line, then
/// y_i = first point >= y_{i-1}.
inline StepFunction monotone_interpolate(std::span<Line> lines, double start = 0.0) {
  detail::require(std::isfinite(start), "monotone_interpolate: bad start");
  detail::check_family(lines);
  std::vector<std::size_t> order(lines.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lines[a].x < lines[b].x; });
  std::vector<Knot> steps;
  steps.reserve(lines.size());
  double y = start;
  for (auto i : order) {
    auto p = nearest(lines[i].set, y, Direction::up);
    y = p.value;
    steps.push_back({lines[i].x, y, p.point_id});
  }
  return StepFunction(std::move(steps), start);
}

}  // namespace interperc
