#pragma once

// Levy midpoint refinement in which every new value is the realized point
// nearest to the parents' average on an independent stationary renewal line
// with interarrival law P[T > t] = exp(-2^(n-2) t^2).

#include <cmath>
#include <cstdint>
#include <vector>

#include "error.hpp"
#include "random_set.hpp"
#include "rng.hpp"

namespace interperc {

inline constexpr int kMaxDyadicDepth = 20;

struct DyadicValue {
  double value = 0.0;
  std::int64_t point_id = 0;
  int level = 0;  // -1 for x = 1, 0 for x = 0 (not a realized point)
};

/// B at k * 2^-depth for k = 0 .. 2^depth.
struct DyadicPath {
  int depth = 0;
  std::vector<DyadicValue> values;
  std::size_t ties = 0;  // nearest-point ties broken upward

  [[nodiscard]] double x(std::size_t k) const { return std::ldexp(static_cast<double>(k), -depth); }
};

/// Level of the dyadic abscissa k * 2^-depth: -1 for x = 1, n for odd
/// multiples of 2^-n, 0 for x = 0.
inline int dyadic_level(std::size_t k, int depth) {
  if (k == 0) return 0;
  if (k == (std::size_t{1} << depth)) return -1;
  int n = depth;
  while (k % 2 == 0) {
    k /= 2;
    --n;
  }
  return n;
}

/// The line at x = k * 2^-level (k odd, or level -1 with k = 1). Its stream
/// depends only on (root, level, k); the realization is generated outward
/// from `anchor`, which is legitimate because the process is stationary
/// and independent of everything used to choose the anchor.
inline RealizedSet brownian_line(RngStream root, int level, std::uint64_t k, double anchor) {
  detail::require(level == -1 || level >= 1, "brownian_line: level must be -1 or >= 1");
  double x = level == -1 ? 1.0 : std::ldexp(static_cast<double>(k), -level);
  LineModel model{RenewalWeibull{level}, x};
  double reach = 4.0 * std::ldexp(1.0, -(level + 1) / 2);
  RealizeOptions opts;
  opts.anchor = anchor;
  return realize(model, root.derive(tag::line, static_cast<std::uint64_t>(level + 1), k),
                 {anchor - reach, anchor + reach}, opts);
}

/// Signed displacement Y(z) - z of one level-n line queried at its anchor z.
inline double level_displacement(RngStream root, int level, std::uint64_t k, double z) {
  auto set = brownian_line(root, level, k, z);
  return nearest(set, z, Direction::both).value - z;
}

/// B_0 = 0, B_1 = nearest point to 0 of the level -1 line, and level-n
/// midpoints B_x = nearest point to (B_{x - 2^-n} + B_{x + 2^-n}) / 2.
inline DyadicPath levy_interpolate(RngStream root, int depth) {
  detail::require(depth >= 0 && depth <= kMaxDyadicDepth, "levy_interpolate: depth must be in [0, 20]");
  DyadicPath path;
  path.depth = depth;
  const std::size_t n_points = (std::size_t{1} << depth) + 1;
  path.values.resize(n_points);
  path.values[0] = {0.0, 0, 0};
  {
    auto set = brownian_line(root, -1, 1, 0.0);
    auto p = nearest(set, 0.0, Direction::both);
    path.ties += p.tie ? 1 : 0;
    path.values[n_points - 1] = {p.value, p.point_id, -1};
  }
  for (int n = 1; n <= depth; ++n) {
    std::size_t stride = std::size_t{1} << (depth - n);
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); k += 2) {
      std::size_t at = k * stride;
      double z = 0.5 * (path.values[at - stride].value + path.values[at + stride].value);
      auto set = brownian_line(root, n, k, z);
      auto p = nearest(set, z, Direction::both);
      path.ties += p.tie ? 1 : 0;
      path.values[at] = {p.value, p.point_id, n};
    }
  }
  return path;
}

/// B_{(k+1) 2^-d} - B_{k 2^-d} for k = 0 .. 2^d - 1.
inline std::vector<double> increments(const DyadicPath& path) {
  std::vector<double> out;
  out.reserve(path.values.size() - 1);
  for (std::size_t k = 0; k + 1 < path.values.size(); ++k) {
    out.push_back(path.values[k + 1].value - path.values[k].value);
  }
  return out;
}

}  // namespace interperc
