#pragma once

// Coverage of the unit circle R/Z by open arcs (U, U + l) mod 1, fixed or
// rotating at constant speeds.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "error.hpp"

namespace interperc {

struct Arc {
  double length = 0.0;    // in (0, 1]
  double position = 0.0;  // in [0, 1)
};

struct ArcFamily {
  std::vector<Arc> arcs;
  std::vector<double> speeds;  // empty or one per arc
};

/// Closed arc [start, start + length] mod 1; length 0 is a single point.
struct UncoveredArc {
  double start = 0.0;
  double length = 0.0;
};

struct CircleCover {
  std::vector<UncoveredArc> uncovered;  // sorted by start, disjoint
  double uncovered_measure = 0.0;
  double covered_measure = 0.0;  // measure of the union of the arcs

  [[nodiscard]] bool covered() const { return uncovered.empty(); }
};

/// Reduce t to [0, 1).
inline double wrap01(double t) {
  double r = t - std::floor(t);
  return r >= 1.0 ? 0.0 : r;
}

inline void validate(const ArcFamily& family) {
  for (const auto& a : family.arcs) {
    detail::require(a.length > 0.0 && a.length <= 1.0, "arc length outside (0,1]");
    detail::require(a.position >= 0.0 && a.position < 1.0, "arc position outside [0,1)");
  }
  detail::require(family.speeds.empty() || family.speeds.size() == family.arcs.size(),
                  "one speed per arc required");
  for (double s : family.speeds) detail::require(std::isfinite(s), "speeds must be finite");
}

/// Complement of the union of the first n open arcs. Endpoints are compared
/// exactly as stored doubles: an arc ending where another starts leaves that
/// single point uncovered.
inline CircleCover circle_uncovered(std::span<const Arc> arcs) {
  struct Open {
    double a, b;
  };
  std::vector<Open> pieces;
  pieces.reserve(arcs.size() * 2);
  for (const auto& arc : arcs) {
    double a = arc.position;
    double b = arc.position + arc.length;
    pieces.push_back({a, b});
    if (b > 1.0) pieces.push_back({a - 1.0, b - 1.0});  // exact: b in (1, 2)
  }
  std::sort(pieces.begin(), pieces.end(), [](const Open& x, const Open& y) { return x.a < y.a; });

  // Sweep [0, 1]; the gaps between runs of overlapping open pieces are
  // closed intervals, possibly single points.
  CircleCover out;
  std::vector<UncoveredArc> gaps;
  double covered = 0.0;
  bool have_run = false;
  double run_lo = 0.0, reach = 0.0;
  auto close_run = [&] {
    if (have_run) covered += std::max(0.0, std::min(reach, 1.0) - std::max(run_lo, 0.0));
  };
  auto add_gap = [&](double lo, double hi) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (lo <= hi) gaps.push_back({lo, hi - lo});
  };
  for (const auto& p : pieces) {
    if (have_run && p.a < reach) {
      reach = std::max(reach, p.b);
      continue;
    }
    close_run();
    add_gap(have_run ? reach : 0.0, p.a);
    run_lo = p.a;
    reach = p.b;
    have_run = true;
  }
  close_run();
  add_gap(have_run ? reach : 0.0, 1.0);

  // 0 and 1 are the same point, and one is uncovered iff the other is.
  if (gaps.size() > 1 && gaps.front().start == 0.0 && gaps.back().start + gaps.back().length == 1.0) {
    gaps.back().length += gaps.front().length;
    gaps.erase(gaps.begin());
  }
  for (auto& g : gaps) {
    if (g.start >= 1.0) g.start = 0.0;
  }
  std::sort(gaps.begin(), gaps.end(), [](const UncoveredArc& x, const UncoveredArc& y) { return x.start < y.start; });
  for (const auto& g : gaps) out.uncovered_measure += g.length;
  out.uncovered = std::move(gaps);
  out.covered_measure = covered;
  return out;
}

inline CircleCover circle_uncovered(const ArcFamily& family, std::size_t n) {
  validate(family);
  detail::require(n <= family.arcs.size(), "circle_uncovered: n exceeds the family size");
  return circle_uncovered(std::span<const Arc>(family.arcs).first(n));
}

/// True iff the point t in [0,1) lies in no open arc.
inline bool point_uncovered(std::span<const Arc> arcs, double t) {
  for (const auto& arc : arcs) {
    double b = arc.position + arc.length;
    if (arc.position < t && t < b) return false;
    if (b > 1.0 && t < b - 1.0) return false;
  }
  return true;
}

struct ScanSample {
  double t = 0.0;
  double uncovered_measure = 0.0;
  std::size_t uncovered_arcs = 0;
  [[nodiscard]] bool nonempty() const { return uncovered_arcs > 0; }
};

/// Maximal run of consecutive grid times with a nonempty uncovered set.
struct ScanWindow {
  double t_first = 0.0;
  double t_last = 0.0;
  std::size_t samples = 0;
};

struct RotatingScan {
  std::vector<ScanSample> samples;
  std::vector<ScanWindow> windows;
  double fraction_nonempty = 0.0;
};

/// Positions at time t: U_i + speed_i * t mod 1.
inline std::vector<Arc> rotated_arcs(const ArcFamily& family, std::size_t n, double t) {
  std::vector<Arc> out(family.arcs.begin(), family.arcs.begin() + static_cast<std::ptrdiff_t>(n));
  if (family.speeds.empty() || t == 0.0) return out;
  for (std::size_t i = 0; i < n; ++i) out[i].position = wrap01(out[i].position + family.speeds[i] * t);
  return out;
}

inline RotatingScan rotating_cover_scan(const ArcFamily& family, std::size_t n, std::span<const double> times) {
  validate(family);
  detail::require(n <= family.arcs.size(), "rotating_cover_scan: n exceeds the family size");
  RotatingScan scan;
  std::optional<ScanWindow> open;
  std::size_t nonempty = 0;
  for (double t : times) {
    detail::require(std::isfinite(t), "rotating_cover_scan: times must be finite");
    auto arcs = rotated_arcs(family, n, t);
    auto cover = circle_uncovered(std::span<const Arc>(arcs));
    ScanSample s{t, cover.uncovered_measure, cover.uncovered.size()};
    scan.samples.push_back(s);
    if (s.nonempty()) {
      ++nonempty;
      if (!open) open = ScanWindow{t, t, 0};
      open->t_last = t;
      ++open->samples;
    } else if (open) {
      scan.windows.push_back(*open);
      open.reset();
    }
  }
  if (open) scan.windows.push_back(*open);
  if (!times.empty()) scan.fraction_nonempty = static_cast<double>(nonempty) / static_cast<double>(times.size());
  return scan;
}

}  // namespace interperc
