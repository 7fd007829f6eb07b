#pragma once

// Lipschitz interpolants on integer lines, the reduction to oriented site
// percolation on segments of height 4, and crossing-probability estimates.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "random_set.hpp"
#include "stats.hpp"

namespace interperc {

/// Starting points are confined to [lo, hi]; later points may use the band
/// [lo - K, hi + K].
struct Corridor {
  double lo = 0.0;
  double hi = 0.0;
};

struct LipschitzResult {
  bool feasible = false;
  std::vector<Anchor> path;    // one realized point per line when feasible
  std::size_t dead_line = 0;   // first line with an empty reachable set
  std::vector<std::size_t> reachable_counts;
};

/// Forward dynamic programming over realized points of consecutive integer
/// lines: a point is reachable iff some reachable point of the previous line
/// lies within K. Returns a path with |y_{x+1} - y_x| <= K, or the line at
/// which the reachable frontier empties. `source(x)` yields line x and is
/// only called while the frontier is nonempty.
template <typename LineSource>
LipschitzResult lipschitz_feasible_lazy(std::size_t count, double K, Corridor corridor,
                                        LineSource&& source) {
  detail::require(std::isfinite(K) && K > 0.0, "lipschitz_feasible: K must be positive");
  detail::require(corridor.lo <= corridor.hi, "lipschitz_feasible: empty corridor");
  struct Node {
    double value;
    std::int64_t id;
    std::int32_t parent;
  };
  LipschitzResult out;
  std::vector<std::vector<Node>> reach(count);
  for (std::size_t x = 0; x < count; ++x) {
    auto&& line = source(x);
    detail::require(line.point_kind(), "lipschitz_feasible: point sets required");
    auto& cur = reach[x];
    if (x == 0) {
      for (const auto& c : components_in(line, corridor.lo, corridor.hi)) {
        cur.push_back({c.lo, c.id, -1});
      }
    } else {
      const auto& prev = reach[x - 1];
      std::size_t j = 0;  // first prev node with value >= q
      for (const auto& c : components_in(line, corridor.lo - K, corridor.hi + K)) {
        double q = c.lo;
        while (j < prev.size() && prev[j].value < q) ++j;
        std::int32_t parent = -1;
        double best = K;
        if (j < prev.size() && prev[j].value - q <= best) {
          best = prev[j].value - q;
          parent = static_cast<std::int32_t>(j);
        }
        if (j > 0 && q - prev[j - 1].value <= best) {
          parent = static_cast<std::int32_t>(j - 1);
        }
        if (parent >= 0) cur.push_back({q, c.id, parent});
      }
    }
    out.reachable_counts.push_back(cur.size());
    if (cur.empty()) {
      out.dead_line = x;
      return out;
    }
  }
  out.feasible = true;
  out.dead_line = count;
  if (count == 0) return out;
  out.path.resize(count);
  std::int32_t idx = 0;
  for (std::size_t x = count; x-- > 0;) {
    const Node& node = reach[x][static_cast<std::size_t>(idx)];
    out.path[x] = {node.value, node.id};
    idx = node.parent;
  }
  return out;
}

inline LipschitzResult lipschitz_feasible(std::span<RealizedSet> lines, double K, Corridor corridor) {
  return lipschitz_feasible_lazy(lines.size(), K, corridor,
                                 [&](std::size_t x) -> RealizedSet& { return lines[x]; });
}

/// Analytic answer for lines (U_n + Z) / lambda: a point within K of every
/// height exists on every line iff the spacing 1/lambda is at most 2K.
inline bool periodic_always_feasible(double lambda, double K) {
  detail::require(lambda > 0.0 && K > 0.0, "periodic_always_feasible: positive parameters");
  return 2.0 * K * lambda >= 1.0;
}

// ---------------------------------------------------------------------------
// Oriented site lattice

/// Site (x, i) is the segment {x} x [4i + (-1)^x, 4(i+1) + (-1)^x); it is
/// open iff line x has a realized point in it. Columns are x_first + c,
/// rows row_first + r.
struct SiteLattice {
  std::int64_t x_first = 0;
  std::int64_t row_first = 0;
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> open;  // column-major: open[c * height + r]

  [[nodiscard]] bool is_open(std::size_t c, std::size_t r) const { return open[c * height + r] != 0; }
  [[nodiscard]] std::int64_t x_of(std::size_t c) const { return x_first + static_cast<std::int64_t>(c); }
  [[nodiscard]] std::int64_t row_of(std::size_t r) const {
    return row_first + static_cast<std::int64_t>(r);
  }
  [[nodiscard]] std::size_t open_count() const {
    return static_cast<std::size_t>(std::count(open.begin(), open.end(), std::uint8_t{1}));
  }
};

/// (-1)^x as the offset of the segment grid on line x.
inline int parity_offset(std::int64_t x) { return x % 2 == 0 ? 1 : -1; }

/// Row of the segment on line x containing height y.
inline std::int64_t segment_row(std::int64_t x, double y) {
  int p = parity_offset(x);
  auto i = static_cast<std::int64_t>(std::floor((y - p) / 4.0));
  // The subtraction can round; settle the boundary with exact comparisons.
  while (y < 4.0 * static_cast<double>(i) + p) --i;
  while (y >= 4.0 * static_cast<double>(i + 1) + p) ++i;
  return i;
}

inline SiteLattice build_lattice(std::span<RealizedSet> lines, std::int64_t x_first,
                                 std::int64_t row_first, std::size_t height_sites) {
  SiteLattice lat{x_first, row_first, lines.size(), height_sites,
                  std::vector<std::uint8_t>(lines.size() * height_sites, 0)};
  for (std::size_t c = 0; c < lines.size(); ++c) {
    std::int64_t x = lat.x_of(c);
    int p = parity_offset(x);
    double lo = 4.0 * static_cast<double>(row_first) + p;
    double hi = 4.0 * static_cast<double>(row_first + static_cast<std::int64_t>(height_sites)) + p;
    for (const auto& comp : components_in(lines[c], lo, hi)) {
      for (double y : {comp.lo, comp.hi}) {
        std::int64_t i = segment_row(x, y) - row_first;
        if (i >= 0 && i < static_cast<std::int64_t>(height_sites)) {
          lat.open[c * height_sites + static_cast<std::size_t>(i)] = 1;
        }
      }
      if (!comp.is_point()) {
        // An interval opens every segment it meets.
        std::int64_t a = std::max<std::int64_t>(segment_row(x, comp.lo) - row_first, 0);
        std::int64_t b = std::min<std::int64_t>(segment_row(x, comp.hi) - row_first,
                                                static_cast<std::int64_t>(height_sites) - 1);
        for (std::int64_t i = a; i <= b; ++i) lat.open[c * height_sites + static_cast<std::size_t>(i)] = 1;
      }
    }
  }
  return lat;
}

struct Site {
  std::int64_t x = 0;
  std::int64_t row = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

/// Open oriented path across all columns using edges (x,i)->(x+1,i) and
/// (x,i)->(x+1,i+(-1)^x). Prefers the lowest final row and straight steps.
inline std::optional<std::vector<Site>> directed_crossing(const SiteLattice& lat) {
  if (lat.width == 0 || lat.height == 0) return std::nullopt;
  const auto h = static_cast<std::int64_t>(lat.height);
  // parent[c*h + r]: -2 unreachable, -1 start, else predecessor row index.
  std::vector<std::int64_t> parent(lat.width * lat.height, -2);
  bool any = false;
  for (std::size_t r = 0; r < lat.height; ++r) {
    if (lat.is_open(0, r)) {
      parent[r] = -1;
      any = true;
    }
  }
  for (std::size_t c = 1; c < lat.width && any; ++c) {
    any = false;
    int diag = parity_offset(lat.x_of(c - 1));
    for (std::int64_t r = 0; r < h; ++r) {
      auto ur = static_cast<std::size_t>(r);
      if (!lat.is_open(c, ur)) continue;
      std::size_t base = (c - 1) * lat.height;
      std::int64_t from = r - diag;
      if (parent[base + ur] != -2) {
        parent[c * lat.height + ur] = r;
      } else if (from >= 0 && from < h && parent[base + static_cast<std::size_t>(from)] != -2) {
        parent[c * lat.height + ur] = from;
      } else {
        continue;
      }
      any = true;
    }
  }
  if (!any) return std::nullopt;
  std::size_t last = lat.width - 1;
  std::int64_t r = 0;
  while (r < h && parent[last * lat.height + static_cast<std::size_t>(r)] == -2) ++r;
  if (r == h) return std::nullopt;
  std::vector<Site> path(lat.width);
  for (std::size_t c = lat.width; c-- > 0;) {
    path[c] = {lat.x_of(c), lat.row_of(static_cast<std::size_t>(r))};
    r = parent[c * lat.height + static_cast<std::size_t>(r)];
  }
  return path;
}

// ---------------------------------------------------------------------------
// Monte Carlo

/// Line x (1-based) of a Poisson(lambda) strip, realized on the band of the
/// corridor [0, H].
inline RealizedSet poisson_strip_line(double lambda, double K, double corridor_height,
                                      RngStream trial_stream, std::size_t x) {
  return realize({Poisson{lambda}, static_cast<double>(x)}, trial_stream.derive(tag::line, x),
                 {-K, corridor_height + K});
}

/// Lines 1..width of a strip; trial t uses stream.derive(tag::trial, t).
inline std::vector<RealizedSet> poisson_strip(double lambda, double K, std::size_t width,
                                              double corridor_height, RngStream trial_stream) {
  std::vector<RealizedSet> lines;
  lines.reserve(width);
  for (std::size_t x = 1; x <= width; ++x) {
    lines.push_back(poisson_strip_line(lambda, K, corridor_height, trial_stream, x));
  }
  return lines;
}

struct CrossingConfig {
  double lambda = 1.0;
  double K = 1.0;
  std::size_t width = 20;
  double corridor_height = 20.0;
  std::size_t trials = 100;
  RngStream stream;
  unsigned threads = 1;
};

/// Fraction of strips admitting a K-Lipschitz interpolant started in
/// [0, H]. Lines are realized lazily and a trial stops at the first empty
/// frontier.
inline McEstimate crossing_probability(const CrossingConfig& cfg) {
  detail::require(cfg.lambda > 0.0 && cfg.K > 0.0 && cfg.width > 0 && cfg.corridor_height > 0.0 &&
                      cfg.trials > 0,
                  "crossing_probability: all parameters must be positive");
  std::vector<std::uint8_t> ok(cfg.trials, 0);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    RngStream trial = cfg.stream.derive(tag::trial, t);
    auto r = lipschitz_feasible_lazy(cfg.width, cfg.K, {0.0, cfg.corridor_height}, [&](std::size_t x) {
      return poisson_strip_line(cfg.lambda, cfg.K, cfg.corridor_height, trial, x + 1);
    });
    ok[t] = r.feasible ? 1 : 0;
  });
  std::uint64_t s = 0;
  for (auto v : ok) s += v;
  return McEstimate::from_counts(s, cfg.trials);
}

struct LambdaCConfig {
  double K = 1.0;
  std::vector<std::size_t> widths{200};
  /// Corridor height in units of K (the actual height is corridor * K), so
  /// that runs for different K are related by the vertical scaling.
  double corridor = 200.0;
  std::size_t trials = 400;
  double tol = 0.02;
  double lambda_lo = 0.05;
  double lambda_hi = 4.0;
  int max_levels = 40;
  RngStream stream;
  unsigned threads = 1;
};

struct BisectionLevel {
  double lambda = 0.0;
  McEstimate estimate;
};

struct LambdaCBracket {
  double K = 1.0;
  std::size_t width = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool converged = false;     // width <= tol
  bool inconclusive = false;  // stopped because the midpoint CI straddles 1/2
  std::vector<BisectionLevel> history;

  [[nodiscard]] double midpoint() const { return 0.5 * (lo + hi); }
};

/// Bisection on lambda for the point where the crossing estimate passes 1/2,
/// once per width. All levels of one width share the trial streams.
inline std::vector<LambdaCBracket> estimate_lambda_c(const LambdaCConfig& cfg) {
  detail::require(cfg.tol > 0.0, "estimate_lambda_c: tol must be positive");
  detail::require(cfg.K > 0.0 && cfg.corridor > 0.0 && cfg.trials > 0 && !cfg.widths.empty(),
                  "estimate_lambda_c: positive K, corridor, trials and widths required");
  detail::require(0.0 < cfg.lambda_lo && cfg.lambda_lo < cfg.lambda_hi,
                  "estimate_lambda_c: need 0 < lambda_lo < lambda_hi");
  std::vector<LambdaCBracket> out;
  for (std::size_t width : cfg.widths) {
    CrossingConfig cc;
    cc.K = cfg.K;
    cc.width = width;
    cc.corridor_height = cfg.corridor * cfg.K;
    cc.trials = cfg.trials;
    cc.threads = cfg.threads;
    cc.stream = cfg.stream.derive(width, std::bit_cast<std::uint64_t>(cfg.K));
    LambdaCBracket br;
    br.K = cfg.K;
    br.width = width;
    auto probe = [&](double lambda) {
      cc.lambda = lambda;
      auto e = crossing_probability(cc);
      br.history.push_back({lambda, e});
      return e;
    };
    double lo = cfg.lambda_lo, hi = cfg.lambda_hi;
    if (probe(lo).p_hat >= 0.5 || probe(hi).p_hat < 0.5) {
      throw BracketNotFound("estimate_lambda_c: crossing estimate does not pass 1/2 on [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "] at width " +
                            std::to_string(width));
    }
    for (int level = 0; level < cfg.max_levels; ++level) {
      if (hi - lo <= cfg.tol) {
        br.converged = true;
        break;
      }
      double mid = 0.5 * (lo + hi);
      auto e = probe(mid);
      if (e.ci_contains(0.5)) {
        br.inconclusive = true;
        break;
      }
      (e.p_hat >= 0.5 ? hi : lo) = mid;
    }
    br.lo = lo;
    br.hi = hi;
    out.push_back(std::move(br));
  }
  return out;
}

}  // namespace interperc
