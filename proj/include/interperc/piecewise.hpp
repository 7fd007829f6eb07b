#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "error.hpp"

namespace interperc {

struct Knot {
  double x = 0.0;
  double y = 0.0;
  std::optional<std::int64_t> point_id;  // set when y is a realized point
};

/// Continuous piecewise-linear function through sorted knots, clamped to the
/// boundary values outside the knot range.
class PiecewiseLinearFunction {
 public:
  PiecewiseLinearFunction() = default;
  explicit PiecewiseLinearFunction(std::vector<Knot> knots) : knots_(std::move(knots)) {
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      detail::require(knots_[i - 1].x < knots_[i].x, "knot abscissae must be strictly increasing");
    }
  }

  [[nodiscard]] const std::vector<Knot>& knots() const { return knots_; }

  [[nodiscard]] double operator()(double x) const {
    if (knots_.empty()) return 0.0;
    if (x <= knots_.front().x) return knots_.front().y;
    if (x >= knots_.back().x) return knots_.back().y;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const Knot& k) { return v < k.x; });
    const Knot& b = *it;
    const Knot& a = *(it - 1);
    if (x == a.x) return a.y;
    return a.y + (b.y - a.y) * ((x - a.x) / (b.x - a.x));
  }

  /// Insert a knot; an existing knot at the same abscissa is an error.
  void insert(Knot k) {
    auto it = std::lower_bound(knots_.begin(), knots_.end(), k.x,
                               [](const Knot& a, double v) { return a.x < v; });
    detail::require(it == knots_.end() || it->x != k.x, "duplicate knot abscissa");
    knots_.insert(it, k);
  }

  [[nodiscard]] double sup_norm() const {
    double m = 0.0;
    for (const auto& k : knots_) m = std::max(m, std::abs(k.y));
    return m;
  }

 private:
  std::vector<Knot> knots_;
};

/// Right-continuous step function: `left_value` before the first breakpoint,
/// then the y of the last breakpoint at or left of x.
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(std::vector<Knot> breakpoints, double left_value)
      : breakpoints_(std::move(breakpoints)), left_value_(left_value) {
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
      detail::require(breakpoints_[i - 1].x < breakpoints_[i].x,
                      "breakpoints must be strictly increasing");
    }
  }

  [[nodiscard]] const std::vector<Knot>& breakpoints() const { return breakpoints_; }
  [[nodiscard]] double left_value() const { return left_value_; }

  [[nodiscard]] double operator()(double x) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x,
                               [](double v, const Knot& k) { return v < k.x; });
    if (it == breakpoints_.begin()) return left_value_;
    return (it - 1)->y;
  }

  [[nodiscard]] bool nondecreasing() const {
    double prev = left_value_;
    for (const auto& k : breakpoints_) {
      if (k.y < prev) return false;
      prev = k.y;
    }
    return true;
  }

  [[nodiscard]] double sup_norm() const {
    double m = std::abs(left_value_);
    for (const auto& k : breakpoints_) m = std::max(m, std::abs(k.y));
    return m;
  }

 private:
  std::vector<Knot> breakpoints_;
  double left_value_ = 0.0;
};

}  // namespace interperc
