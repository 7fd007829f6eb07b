#pragma once

// Fast sanity checks runnable from an installed binary, without the test
// suite. Every check has a closed-form answer.

#include <cmath>
#include <string>
#include <vector>

#include "interperc/interperc.hpp"

namespace interperc::cli {

struct SuiteResult {
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      messages.push_back(what);
    }
  }
};

inline SuiteResult selftest_rng() {
  SuiteResult s{"rng"};
  Pcg32 g(42, 54);
  const std::uint32_t ref[] = {0xa15c02b7u, 0x7b47f409u, 0xba1d3330u, 0x83d2f293u};
  for (auto v : ref) s.expect(g() == v, "pcg32 reference sequence");
  RngStream root{7, 0};
  s.expect(root.derive(tag::line, 1) == root.derive(tag::line, 1), "derive is deterministic");
  s.expect(!(root.derive(tag::line, 1) == root.derive(tag::line, 2)), "derive separates tags");
  return s;
}

inline SuiteResult selftest_random_set(std::uint64_t seed) {
  SuiteResult s{"random_set"};
  LineModel lattice{Periodic{1.0, {BaseInterval{}}, 0.0}, 0.0};
  auto set = realize(lattice, RngStream{seed, 0}, {-3.0, 3.0});
  s.expect(set.size() == 7, "lattice Z has 7 points in [-3,3]");
  auto p = nearest(set, 0.4, Direction::both);
  s.expect(p.value == 0.0, "nearest lattice point to 0.4 is 0");
  auto q = nearest(set, 0.5, Direction::both);
  s.expect(q.value == 1.0 && q.tie, "tie at 0.5 broken upward");
  LineModel poisson{Poisson{2.0}, 0.0};
  auto a = realize(poisson, RngStream{seed, 1}, {-5.0, 5.0});
  auto b = realize(poisson, RngStream{seed, 1}, {-5.0, 5.0});
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) same = a.components()[i].lo == b.components()[i].lo;
  s.expect(same, "realization is reproducible");
  auto wider = extend(a, {-10.0, 10.0});
  bool kept = true;
  for (const auto& c : a.components()) kept = kept && wider.contains(c.lo, c.id);
  s.expect(kept, "extension keeps existing points");
  return s;
}

inline SuiteResult selftest_interpolation(std::uint64_t seed) {
  SuiteResult s{"interpolation"};
  std::vector<LineModel> models;
  for (int i = 1; i <= 12; ++i) models.push_back({Poisson{static_cast<double>(i)}, i / 13.0});
  auto lines = make_family(models, RngStream{seed, 2});
  auto res = continuous_interpolate(lines, 0.0, 1.0, 0.0, 0.0);
  bool on_points = true;
  for (const auto& k : res.f.knots()) {
    if (!k.point_id) continue;
    bool found = false;
    for (auto& l : lines) found = found || (l.x == k.x && l.set.contains(k.y, *k.point_id));
    on_points = on_points && found;
  }
  s.expect(on_points, "continuous interpolant passes through realized points");
  s.expect(res.f.sup_norm() <= res.K, "continuous interpolant bounded by K");
  auto lines2 = make_family(models, RngStream{seed, 2});
  auto step = monotone_interpolate(lines2);
  s.expect(step.nondecreasing(), "monotone interpolant is nondecreasing");
  return s;
}

inline SuiteResult selftest_variation(std::uint64_t seed) {
  SuiteResult s{"variation"};
  std::vector<double> seq{0.0, 1.0, -1.0, 2.0};
  s.expect(total_variation(seq) == 6.0, "total variation of (0,1,-1,2) is 6");
  std::vector<LineModel> models;
  for (int i = 1; i <= 8; ++i) models.push_back({Poisson{1.0 + i}, static_cast<double>(i)});
  auto a = make_family(models, RngStream{seed, 3});
  auto b = make_family(models, RngStream{seed, 3});
  auto fast = min_total_variation(a, MinMethod::reachable_states);
  auto slow = min_total_variation(b, MinMethod::brute_force);
  s.expect(fast.total_variation == slow.total_variation, "reachable-state minimum equals brute force");
  return s;
}

inline SuiteResult selftest_percolation() {
  SuiteResult s{"percolation"};
  std::vector<RealizedSet> lines;
  for (int x = 1; x <= 10; ++x) {
    lines.push_back(realize({Periodic{2.0, {BaseInterval{}}, 0.0}, static_cast<double>(x)}, RngStream{1, 0}, {-10.0, 10.0}));
  }
  s.expect(lipschitz_feasible(lines, 1.0, {0.0, 1.0}).feasible, "lattice 2Z admits a 1-Lipschitz path");
  s.expect(periodic_always_feasible(0.5, 1.0), "2 K lambda = 1 is feasible");
  s.expect(!periodic_always_feasible(0.4, 1.0), "2 K lambda < 1 is not");
  return s;
}

inline SuiteResult selftest_criteria() {
  SuiteResult s{"criteria"};
  std::vector<std::uint64_t> cut{1000, 10000, 100000};
  auto conv = series_partial_sums(SeriesKind::reciprocal, [](std::uint64_t n) { return double(n) * double(n); }, cut);
  s.expect(conv.trend == Trend::convergent_looking, "sum 1/n^2 looks convergent");
  auto div = series_partial_sums(SeriesKind::reciprocal, [](std::uint64_t n) { return double(n); }, cut);
  s.expect(div.trend == Trend::divergent_looking, "sum 1/n looks divergent");
  auto sub = extract_divergent_subset([](std::uint64_t n) { return 1.0 / double(n + 1); }, dyadic_block_reversal(), 2.0);
  s.expect(sub.reached && !check_block_ordering(sub.blocks, dyadic_block_reversal()), "divergent subset blocks ordered");
  return s;
}

inline SuiteResult selftest_circle() {
  SuiteResult s{"circle"};
  std::vector<Arc> arcs{{0.5, 0.0}, {0.5, 0.5}};
  auto c = circle_uncovered(std::span<const Arc>(arcs));
  s.expect(c.uncovered.size() == 2 && c.uncovered_measure == 0.0, "two half arcs leave two points");
  std::vector<Arc> over{{0.6, 0.0}, {0.6, 0.5}};
  s.expect(circle_uncovered(std::span<const Arc>(over)).covered(), "overlapping arcs cover");
  return s;
}

inline SuiteResult selftest_brownian(std::uint64_t seed) {
  SuiteResult s{"brownian"};
  auto path = levy_interpolate(RngStream{seed, 4}, 4);
  s.expect(path.values.size() == 17, "depth 4 has 17 values");
  s.expect(path.values.front().value == 0.0, "B_0 = 0");
  auto again = levy_interpolate(RngStream{seed, 4}, 4);
  bool same = true;
  for (std::size_t k = 0; k < path.values.size(); ++k) same = same && path.values[k].value == again.values[k].value;
  s.expect(same, "construction is reproducible");
  return s;
}

inline std::vector<SuiteResult> run_selftest(std::uint64_t seed) {
  return {selftest_rng(),         selftest_random_set(seed), selftest_interpolation(seed), selftest_variation(seed),
          selftest_percolation(), selftest_criteria(),       selftest_circle(),            selftest_brownian(seed)};
}

}  // namespace interperc::cli
