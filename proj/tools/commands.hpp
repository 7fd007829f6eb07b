#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "cli_support.hpp"
#include "selftest.hpp"

namespace interperc::cli {

/// One subcommand: its options live in the object so CLI11 can bind them.
class Command {
 public:
  virtual ~Command() = default;
  virtual const char* name() const = 0;
  virtual const char* summary() const = 0;
  virtual std::string footer() const { return {}; }
  virtual void define(Params& p) = 0;
  virtual void run(Run& r) = 0;

  Common common;
  std::unique_ptr<Params> params;
};

namespace detail_cli {

struct Range {
  double lo = 0.0, hi = 1.0;
  void add(double v) {
    if (!std::isfinite(v)) return;
    if (!seen) {
      lo = hi = v;
      seen = true;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  [[nodiscard]] Range padded() const {
    double span = hi - lo;
    double pad = span > 0.0 ? 0.05 * span : 1.0;
    return {lo - pad, hi + pad, true};
  }
  bool seen = false;
};

inline std::vector<double> abscissae(const std::string& placement, std::size_t n, double a0, double a1,
                                     RngStream root) {
  std::vector<double> xs(n);
  if (placement == "grid") {
    for (std::size_t i = 0; i < n; ++i) xs[i] = a0 + (a1 - a0) * static_cast<double>(i + 1) / static_cast<double>(n + 1);
  } else if (placement == "uniform") {
    auto rng = root.derive(tag::param).engine();
    for (auto& x : xs) x = uniform(rng, a0, a1);
    std::sort(xs.begin(), xs.end());
  } else {
    throw InvalidArgument("--xs must be 'grid' or 'uniform'");
  }
  return xs;
}

inline std::string sign_string(const SignSequence& s) {
  std::string out;
  for (Sign v : s) out += to_char(v);
  return out;
}

inline json trend_json(const SeriesDiagnostic& d) {
  json j;
  j["kind"] = to_string(d.kind);
  j["trend"] = to_string(d.trend);
  j["growth_exponent"] = d.growth_exponent ? json(*d.growth_exponent) : json(nullptr);
  return j;
}

}  // namespace detail_cli

// ---------------------------------------------------------------------------

class GenCommand : public Command {
 public:
  const char* name() const override { return "gen"; }
  const char* summary() const override { return "Realize random closed sets on vertical lines"; }
  std::string footer() const override {
    return "Outputs: realization_<i>.csv, one per line. Header '# model=...;seed=...;stream=...;window=lo,hi',\n"
           "then 'value,id' rows for point sets or 'lo,hi,id' rows for interval sets.\n"
           "Models: poisson:L, periodic:S[:U], weibull:N, boolean:L.";
  }
  void define(Params& p) override {
    p.add("model", model, "Model spec");
    p.add("lines", lines, "Number of lines (line i sits at x = i)")->check(CLI::Range(1, 100000));
    p.add("lo", lo, "Window lower end");
    p.add("hi", hi, "Window upper end");
  }
  void run(Run& r) override {
    if (!(lo < hi)) throw InvalidArgument("--lo must be below --hi");
    detail_cli::Range yr;
    SvgPlot* plot = nullptr;
    std::unique_ptr<SvgPlot> owned;
    if (r.common->svg) {
      owned = std::make_unique<SvgPlot>(0.0, static_cast<double>(lines) + 1.0, lo, hi);
      plot = owned.get();
    }
    json counts = json::array();
    for (std::size_t i = 0; i < lines; ++i) {
      auto m = parse_model(model, static_cast<double>(i + 1));
      auto set = realize(m, r.root().derive(tag::line, i), {lo, hi});
      std::ostringstream os;
      write_csv(os, set);
      r.outputs.write("realization_" + std::to_string(i) + ".csv", os.str());
      counts.push_back(set.size());
      if (plot) {
        for (const auto& c : set.components()) {
          double x = m.x;
          double a = std::max(c.lo, lo), b = std::min(c.hi, hi);
          if (c.is_point()) {
            plot->point(x, a, "#1f4e9c");
          } else {
            plot->segment(x, a, x, b, "#1f4e9c", 3.0);
          }
        }
      }
    }
    r.results["components"] = counts;
    if (plot) r.write_svg("realizations.svg", *plot, "realizations");
  }

  std::string model = "poisson:1";
  std::size_t lines = 1;
  double lo = -5.0, hi = 5.0;
};

// ---------------------------------------------------------------------------

class InterpolateCommand : public Command {
 public:
  const char* name() const override { return "interpolate"; }
  const char* summary() const override { return "Interpolate through a family of Poisson lines"; }
  std::string footer() const override {
    return "Outputs:\n"
           "  points.csv       x,y,id: realized points shown around the interpolant\n"
           "  interpolant.csv  x,y,point_id: knots (continuous) or breakpoints (monotone);\n"
           "                   point_id empty at the boundary knots\n"
           "  levels.csv       level,lines,max_change,bound,max_abs (continuous only)\n"
           "  trace.csv        i,x,sign,g,point_id (bv-trace, bv-min; row 0 is g_0 = 0)\n"
           "Line i (1-based) is Poisson with intensity given by --lambda-expr at n = i.";
  }
  void define(Params& p) override {
    p.add("method", method, "continuous | monotone | bv-trace | bv-min")
        ->check(CLI::IsMember({"continuous", "monotone", "bv-trace", "bv-min"}));
    p.add("lines", lines, "Number of lines")->check(CLI::Range(1, 1000000));
    p.add("lambda-expr", lambda_expr, "Intensity of line n (n = 1, 2, ...)");
    p.add("xs", xs, "Abscissa placement: uniform | grid")->check(CLI::IsMember({"uniform", "grid"}));
    p.add("a0", a0, "Left end of the domain");
    p.add("a1", a1, "Right end of the domain");
    p.add("b0", b0, "Boundary value at a0 (continuous)");
    p.add("b1", b1, "Boundary value at a1 (continuous)");
    p.add("start", start, "Starting level (monotone)");
    p.add("min-method", min_method, "reachable | brute (bv-min)")->check(CLI::IsMember({"reachable", "brute"}));
  }

  void run(Run& r) override {
    if (!(a0 < a1)) throw InvalidArgument("--a0 must be below --a1");
    SequenceExpr lam(lambda_expr);
    auto x = detail_cli::abscissae(xs, lines, a0, a1, r.root());
    std::vector<LineModel> models;
    for (std::size_t i = 0; i < lines; ++i) {
      double l = lam(i + 1);
      if (!(std::isfinite(l) && l > 0.0))
        throw InvalidArgument("--lambda-expr gives a non-positive intensity at n = " + std::to_string(i + 1));
      models.push_back({Poisson{l}, x[i]});
    }
    auto family = make_family(models, r.root());
    std::vector<std::pair<double, double>> curve;
    detail_cli::Range yr;

    if (method == "continuous") {
      auto res = continuous_interpolate(family, a0, a1, b0, b1);
      Csv knots({{"x", "abscissa"}, {"y", "interpolant value"}, {"point_id", "realized point id, empty at a0/a1"}});
      for (const auto& k : res.f.knots()) {
        knots.row(k.x, k.y, k.point_id ? std::to_string(*k.point_id) : std::string());
        curve.emplace_back(k.x, k.y);
        yr.add(k.y);
      }
      Csv lv({{"level", "construction level"},
              {"lines", "lines fixed at this level"},
              {"max_change", "sup |f_level - f_(level-1)| on the knots"},
              {"bound", "2^-(level-1), inf at level 0"},
              {"max_abs", "sup |f_level|"}});
      for (const auto& l : res.levels) lv.row(l.level, l.lines, l.max_change, l.bound, l.max_abs);
      r.write_csv("interpolant.csv", knots);
      r.write_csv("levels.csv", lv);
      r.results["K"] = res.K;
      r.results["sup_norm"] = res.f.sup_norm();
      r.results["levels"] = res.levels.size();
      r.results["final_sweep"] = res.final_sweep;
    } else if (method == "monotone") {
      auto step = monotone_interpolate(family, start);
      Csv bp({{"x", "abscissa of the jump"}, {"y", "value from x on"}, {"point_id", "realized point id"}});
      double prev = step.left_value();
      curve.emplace_back(a0, prev);
      for (const auto& k : step.breakpoints()) {
        bp.row(k.x, k.y, k.point_id ? std::to_string(*k.point_id) : std::string());
        curve.emplace_back(k.x, prev);
        curve.emplace_back(k.x, k.y);
        prev = k.y;
        yr.add(k.y);
      }
      curve.emplace_back(a1, prev);
      yr.add(step.left_value());
      r.write_csv("interpolant.csv", bp);
      r.results["nondecreasing"] = step.nondecreasing();
      r.results["sup_norm"] = step.sup_norm();
    } else {
      TraceResult trace;
      if (method == "bv-trace") {
        auto res = continuous_interpolate(family, a0, a1, b0, b1);
        std::vector<Anchor> f;
        for (const auto& k : res.f.knots()) {
          if (k.point_id) f.push_back({k.y, *k.point_id});
        }
        if (f.size() != family.size()) throw std::runtime_error("interpolant does not pin every line");
        trace = greedy_trace(family, f);
        std::vector<double> fv{0.0};
        for (const auto& a : f) fv.push_back(a.value);
        r.results["tv_f"] = total_variation(fv);
        r.results["dominated"] = trace_dominated(trace, f);
      } else {
        trace = min_total_variation(family, min_method == "brute" ? MinMethod::brute_force
                                                                  : MinMethod::reachable_states);
      }
      Csv tc({{"i", "step (0 is the start g_0 = 0)"},
              {"x", "abscissa, empty for i = 0"},
              {"sign", "direction taken, empty for i = 0"},
              {"g", "traced value"},
              {"point_id", "realized point id, empty for i = 0"}});
      tc.row(0, "", "", 0.0, "");
      curve.emplace_back(a0, 0.0);
      yr.add(0.0);
      for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& v = trace.values[i + 1];
        tc.row(i + 1, family[i].x, std::string(1, to_char(trace.signs[i])), v.value, std::to_string(v.point_id));
        curve.emplace_back(family[i].x, v.value);
        yr.add(v.value);
      }
      r.write_csv("trace.csv", tc);
      r.results["total_variation"] = trace.total_variation;
      r.results["signs"] = detail_cli::sign_string(trace.signs);
      if (trace.weighted_variation) r.results["weighted_variation"] = *trace.weighted_variation;
    }

    // Realized points near the curve, for context.
    auto yb = yr.padded();
    Csv pts({{"x", "line abscissa"}, {"y", "realized point"}, {"id", "point id"}});
    std::vector<std::array<double, 2>> dots;
    for (auto& l : family) {
      for (const auto& c : components_in(l.set, yb.lo, yb.hi)) {
        pts.row(l.x, c.lo, c.id);
        dots.push_back({l.x, c.lo});
      }
    }
    r.write_csv("points.csv", pts);
    if (r.common->svg) {
      SvgPlot plot(a0, a1, yb.lo, yb.hi);
      for (const auto& d : dots) plot.point(d[0], d[1], "#999999", 1.5);
      plot.polyline(curve, "#c0392b");
      r.write_svg("interpolant.svg", plot, method);
    }
  }

  std::string method = "continuous";
  std::size_t lines = 20;
  std::string lambda_expr = "n";
  std::string xs = "uniform";
  double a0 = 0.0, a1 = 1.0, b0 = 0.0, b1 = 0.0, start = 0.0;
  std::string min_method = "reachable";
};

// ---------------------------------------------------------------------------

class LipschitzCommand : public Command {
 public:
  const char* name() const override { return "lipschitz"; }
  const char* summary() const override { return "K-Lipschitz interpolation across one Poisson strip"; }
  std::string footer() const override {
    return "Outputs:\n"
           "  reachable.csv  x,reachable: reachable points on line x (1-based)\n"
           "  path.csv       x,y,point_id: a feasible path (only when one exists)\n"
           "Lines sit at x = 1..width; the path starts in [0, height].";
  }
  void define(Params& p) override {
    p.add("lambda", lambda, "Intensity of every line");
    p.add("K", K, "Lipschitz constant");
    p.add("width", width, "Number of lines")->check(CLI::Range(1, 10000000));
    p.add("height", height, "Corridor height for the starting point");
  }
  void run(Run& r) override {
    if (!(lambda > 0.0 && K > 0.0 && height > 0.0)) throw InvalidArgument("lambda, K and height must be positive");
    auto strip = poisson_strip(lambda, K, width, height, r.root().derive(tag::trial, 0));
    auto res = lipschitz_feasible(strip, K, {0.0, height});
    Csv rc({{"x", "line"}, {"reachable", "reachable points on the line"}});
    for (std::size_t i = 0; i < res.reachable_counts.size(); ++i) rc.row(i + 1, res.reachable_counts[i]);
    r.write_csv("reachable.csv", rc);
    r.results["feasible"] = res.feasible;
    if (res.feasible) {
      Csv pc({{"x", "line"}, {"y", "path value"}, {"point_id", "realized point id"}});
      for (std::size_t i = 0; i < res.path.size(); ++i) pc.row(i + 1, res.path[i].value, res.path[i].point_id);
      r.write_csv("path.csv", pc);
    } else {
      r.results["dead_line"] = res.dead_line + 1;
    }
    if (r.common->svg) {
      detail_cli::Range yr;
      yr.add(-K);
      yr.add(height + K);
      for (const auto& a : res.path) yr.add(a.value);
      auto yb = yr.padded();
      SvgPlot plot(0.0, static_cast<double>(width) + 1.0, yb.lo, yb.hi);
      for (std::size_t i = 0; i < strip.size(); ++i) {
        for (const auto& c : components_in(strip[i], yb.lo, yb.hi)) plot.point(static_cast<double>(i + 1), c.lo, "#999999", 1.5);
      }
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 0; i < res.path.size(); ++i) pts.emplace_back(static_cast<double>(i + 1), res.path[i].value);
      if (!pts.empty()) plot.polyline(pts, "#c0392b");
      r.write_svg("strip.svg", plot, "lipschitz strip");
    }
  }

  double lambda = 1.0, K = 1.0, height = 50.0;
  std::size_t width = 50;
};

// ---------------------------------------------------------------------------

class SweepCommand : public Command {
 public:
  const char* name() const override { return "sweep"; }
  const char* summary() const override { return "Crossing probability over a grid of intensities and widths"; }
  std::string footer() const override {
    return "Outputs: sweep.csv lambda,width,trials,p_hat,ci_lo,ci_hi (95% normal interval).\n"
           "All intensities of one width reuse the same trial streams.";
  }
  void define(Params& p) override {
    p.add("lambdas", lambdas, "Intensities")->delimiter(',');
    p.add("widths", widths, "Strip widths")->delimiter(',');
    p.add("K", K, "Lipschitz constant");
    p.add("height", height, "Corridor height");
    p.add("trials", trials, "Strips per estimate")->check(CLI::Range(1, 100000000));
  }
  void run(Run& r) override {
    if (lambdas.empty() || widths.empty()) throw InvalidArgument("--lambdas and --widths must be non-empty");
    Csv out({{"lambda", "intensity"},
             {"width", "lines per strip"},
             {"trials", "strips"},
             {"p_hat", "fraction admitting a K-Lipschitz interpolant"},
             {"ci_lo", "95% interval, lower"},
             {"ci_hi", "95% interval, upper"}});
    std::map<std::size_t, std::vector<std::pair<double, double>>> curves;
    for (std::size_t w : widths) {
      for (double l : lambdas) {
        CrossingConfig cfg{l, K, w, height, trials, r.root().derive(static_cast<std::uint64_t>(w)), r.common->threads};
        auto e = crossing_probability(cfg);
        out.row(l, w, trials, e.p_hat, e.ci_lo, e.ci_hi);
        curves[w].emplace_back(l, e.p_hat);
      }
    }
    r.write_csv("sweep.csv", out);
    if (r.common->svg) {
      auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
      double pad = *hi > *lo ? 0.05 * (*hi - *lo) : 0.5;
      SvgPlot plot(*lo - pad, *hi + pad, 0.0, 1.0);
      const char* colors[] = {"#1f4e9c", "#c0392b", "#27ae60", "#8e44ad", "#d35400"};
      std::size_t c = 0;
      for (auto& [w, pts] : curves) {
        std::sort(pts.begin(), pts.end());
        plot.polyline(pts, colors[c++ % 5]);
      }
      r.write_svg("sweep.svg", plot, "crossing probability");
    }
  }

  std::vector<double> lambdas{0.5, 0.75, 1.0, 1.25, 1.5};
  std::vector<std::size_t> widths{50};
  double K = 1.0, height = 50.0;
  std::size_t trials = 200;
};

// ---------------------------------------------------------------------------

class LambdaCCommand : public Command {
 public:
  const char* name() const override { return "lambda-c"; }
  const char* summary() const override { return "Bisection for the critical intensity of Lipschitz crossing"; }
  std::string footer() const override {
    return "Outputs:\n"
           "  lambda_c.csv  K,width,lo,hi,midpoint,converged,inconclusive\n"
           "  history.csv   K,width,level,lambda,successes,trials,p_hat,ci_lo,ci_hi\n"
           "  lambda_c.json brackets and, with --scaling-K, the midpoint ratio\n"
           "The corridor height is --corridor times K.";
  }
  void define(Params& p) override {
    p.add("K", K, "Lipschitz constant");
    p.add("widths", widths, "Strip widths")->delimiter(',');
    p.add("corridor", corridor, "Corridor height in units of K");
    p.add("trials", trials, "Strips per bisection level")->check(CLI::Range(1, 100000000));
    p.add("tol", tol, "Stop when the bracket is this narrow");
    p.add("lambda-lo", lambda_lo, "Initial lower end");
    p.add("lambda-hi", lambda_hi, "Initial upper end");
    p.add("scaling-K", scaling_K, "Second Lipschitz constant to compare against (0 = off)");
  }
  void run(Run& r) override {
    if (widths.empty()) throw InvalidArgument("--widths must be non-empty");
    auto config_for = [&](double k) {
      LambdaCConfig cfg;
      cfg.K = k;
      cfg.widths = widths;
      cfg.corridor = corridor;
      cfg.trials = trials;
      cfg.tol = tol;
      cfg.lambda_lo = lambda_lo;
      cfg.lambda_hi = lambda_hi;
      cfg.stream = r.root();
      cfg.threads = r.common->threads;
      return cfg;
    };
    auto brackets = estimate_lambda_c(config_for(K));
    std::vector<LambdaCBracket> second;
    if (scaling_K > 0.0) second = estimate_lambda_c(config_for(scaling_K));

    Csv bc({{"K", "Lipschitz constant"},
            {"width", "strip width"},
            {"lo", "bracket lower end"},
            {"hi", "bracket upper end"},
            {"midpoint", "bracket midpoint"},
            {"converged", "1 if hi - lo <= tol"},
            {"inconclusive", "1 if stopped because the midpoint interval contains 1/2"}});
    Csv hc({{"K", "Lipschitz constant"},
            {"width", "strip width"},
            {"level", "bisection step"},
            {"lambda", "probed intensity"},
            {"successes", "crossing strips"},
            {"trials", "strips"},
            {"p_hat", "crossing fraction"},
            {"ci_lo", "95% interval, lower"},
            {"ci_hi", "95% interval, upper"}});
    json js = json::array();
    auto emit = [&](const LambdaCBracket& b) {
      bc.row(b.K, b.width, b.lo, b.hi, b.midpoint(), b.converged, b.inconclusive);
      for (std::size_t i = 0; i < b.history.size(); ++i) {
        const auto& h = b.history[i];
        hc.row(b.K, b.width, i, h.lambda, h.estimate.successes, h.estimate.trials, h.estimate.p_hat,
               h.estimate.ci_lo, h.estimate.ci_hi);
      }
      js.push_back({{"K", b.K},
                    {"width", b.width},
                    {"lo", b.lo},
                    {"hi", b.hi},
                    {"midpoint", b.midpoint()},
                    {"converged", b.converged},
                    {"inconclusive", b.inconclusive}});
    };
    for (const auto& b : brackets) emit(b);
    for (const auto& b : second) emit(b);
    r.write_csv("lambda_c.csv", bc);
    r.write_csv("history.csv", hc);
    json doc;
    doc["brackets"] = js;
    if (!second.empty()) {
      json sc = json::array();
      for (std::size_t i = 0; i < brackets.size(); ++i) {
        double ratio = second[i].midpoint() / brackets[i].midpoint();
        sc.push_back({{"width", brackets[i].width}, {"midpoint_ratio", ratio}, {"K_ratio", K / scaling_K}});
      }
      doc["scaling"] = sc;
    }
    r.outputs.write("lambda_c.json", doc.dump(2) + "\n");
    r.results = doc;
  }

  double K = 1.0, corridor = 200.0, tol = 0.02, lambda_lo = 0.05, lambda_hi = 4.0, scaling_K = 0.0;
  std::vector<std::size_t> widths{200};
  std::size_t trials = 400;
};

// ---------------------------------------------------------------------------

class CriteriaCommand : public Command {
 public:
  const char* name() const override { return "criteria"; }
  const char* summary() const override { return "Series diagnostics and divergent-subset extraction"; }
  std::string footer() const override {
    return "Kinds:\n"
           "  wm          partial sums of exp(-epsilon * lambda_n), lambda_n from --expr\n"
           "  reciprocal  partial sums of 1 / lambda_n\n"
           "  shepp       partial sums of exp(l_1 + ... + l_n) / n^2, l_n from --expr\n"
           "  subset      blocks of a subset with divergent prefix-minimum sum for mu from --mu-expr\n"
           "Outputs: series.csv cutoff,partial_sum; or blocks.csv block,m,n,size,min_mu,certificate\n"
           "and members.csv member,block for subset.";
  }
  void define(Params& p) override {
    p.add("kind", kind, "wm | reciprocal | shepp | subset")
        ->check(CLI::IsMember({"wm", "reciprocal", "shepp", "subset"}));
    p.add("expr", expr, "lambda_n or l_n as an expression in n >= 1");
    p.add("epsilon", epsilon, "wm: exponent scale");
    p.add("cutoffs", cutoffs, "Partial-sum cutoffs")->delimiter(',');
    p.add("mu-expr", mu_expr, "subset: mu_n as an expression in n >= 0");
    p.add("perm", perm, "subset: identity | block-reversal")->check(CLI::IsMember({"identity", "block-reversal"}));
    p.add("target", target, "subset: stop once the sum reaches this");
    p.add("probe-budget", probe_budget, "subset: epsilon probe budget");
  }
  void run(Run& r) override {
    if (kind == "subset") {
      SequenceExpr mu(mu_expr);
      Permutation phi = perm == "identity" ? identity_permutation() : dyadic_block_reversal();
      SubsetConfig cfg;
      cfg.probe_budget = probe_budget;
      auto res = extract_divergent_subset([&](std::uint64_t n) { return mu(n); }, phi, target, cfg);
      Csv bc({{"block", "block index (0 is the seed {0})"},
              {"m", "m_k"},
              {"n", "n_k"},
              {"size", "members"},
              {"min_mu", "min of mu over the block image"},
              {"certificate", "size * min_mu"}});
      Csv mc({{"member", "index in the subset"}, {"block", "block index"}});
      for (std::size_t k = 0; k < res.blocks.size(); ++k) {
        const auto& b = res.blocks[k];
        bc.row(k, b.m, b.n, b.members.size(), b.min_mu, b.certificate);
        for (auto m : b.members) mc.row(m, k);
      }
      r.write_csv("blocks.csv", bc);
      r.write_csv("members.csv", mc);
      auto violation = check_block_ordering(res.blocks, phi);
      r.results["epsilon"] = res.epsilon;
      r.results["blocks"] = res.blocks.size() - 1;
      r.results["sum"] = res.sum;
      r.results["reached"] = res.reached;
      r.results["ordering_ok"] = !violation.has_value();
      return;
    }
    SequenceExpr e(expr);
    SeriesKind k = kind == "wm" ? SeriesKind::wm : kind == "reciprocal" ? SeriesKind::reciprocal : SeriesKind::shepp;
    auto d = series_partial_sums(k, [&](std::uint64_t n) { return e(n); }, cutoffs, epsilon);
    Csv sc({{"cutoff", "N"}, {"partial_sum", "sum of the first N terms"}});
    for (std::size_t i = 0; i < d.cutoffs.size(); ++i) sc.row(d.cutoffs[i], d.partial_sums[i]);
    r.write_csv("series.csv", sc);
    r.results = detail_cli::trend_json(d);
    r.results["final_partial_sum"] = d.partial_sums.back();
  }

  std::string kind = "reciprocal", expr = "n^2", mu_expr = "1/(n+1)", perm = "identity";
  double epsilon = 1.0, target = 5.0;
  std::vector<std::uint64_t> cutoffs{1000, 10000, 100000};
  std::uint64_t probe_budget = std::uint64_t{1} << 20;
};

// ---------------------------------------------------------------------------

class CircleCoverCommand : public Command {
 public:
  const char* name() const override { return "circle-cover"; }
  const char* summary() const override { return "Coverage of the circle by random arcs"; }
  std::string footer() const override {
    return "Outputs:\n"
           "  circle.csv  trial,uncovered_measure,uncovered_arcs\n"
           "  arcs.csv    start,length: uncovered arcs of trial 0\n"
           "Arc n has length from --lengths (n >= 1) and a uniform position.";
  }
  void define(Params& p) override {
    p.add("lengths", lengths, "Arc length l_n in (0,1]");
    p.add("n", n, "Arcs per family")->check(CLI::Range(1, 100000000));
    p.add("trials", trials, "Independent families")->check(CLI::Range(1, 100000000));
  }
  void run(Run& r) override {
    SequenceExpr len(lengths);
    std::vector<double> ls(n);
    for (std::size_t i = 0; i < n; ++i) {
      ls[i] = len(i + 1);
      if (!(ls[i] > 0.0 && ls[i] <= 1.0))
        throw InvalidArgument("--lengths is outside (0,1] at n = " + std::to_string(i + 1));
    }
    std::vector<CircleCover> covers(trials);
    auto root = r.root();
    parallel_for(trials, r.common->threads, [&](std::size_t t) {
      auto rng = root.derive(tag::trial, t).engine();
      std::vector<Arc> arcs(n);
      for (std::size_t i = 0; i < n; ++i) arcs[i] = {ls[i], wrap01(uniform01(rng))};
      covers[t] = circle_uncovered(std::span<const Arc>(arcs));
    });
    Csv cc({{"trial", "family"}, {"uncovered_measure", "Lebesgue measure left uncovered"}, {"uncovered_arcs", "maximal uncovered arcs (points count)"}});
    std::uint64_t nonempty = 0;
    double mean = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      cc.row(t, covers[t].uncovered_measure, covers[t].uncovered.size());
      nonempty += covers[t].covered() ? 0 : 1;
      mean += covers[t].uncovered_measure;
    }
    Csv ac({{"start", "arc start in [0,1)"}, {"length", "arc length (0 for a point)"}});
    for (const auto& g : covers[0].uncovered) ac.row(g.start, g.length);
    r.write_csv("circle.csv", cc);
    r.write_csv("arcs.csv", ac);
    auto e = McEstimate::from_counts(nonempty, trials);
    r.results["fraction_uncovered"] = e.p_hat;
    r.results["ci"] = {e.ci_lo, e.ci_hi};
    r.results["mean_uncovered_measure"] = mean / static_cast<double>(trials);
  }

  std::string lengths = "0.9/n";
  std::size_t n = 1000, trials = 1000;
};

// ---------------------------------------------------------------------------

class RotateScanCommand : public Command {
 public:
  const char* name() const override { return "rotate-scan"; }
  const char* summary() const override { return "Scan coverage of rotating arcs over a time grid"; }
  std::string footer() const override {
    return "Outputs:\n"
           "  scan.csv     t,uncovered_measure,uncovered_arcs\n"
           "  windows.csv  t_first,t_last,samples: runs of grid times with an uncovered point";
  }
  void define(Params& p) override {
    p.add("lengths", lengths, "Arc length l_n in (0,1]");
    p.add("speeds", speeds, "Angular speed of arc n");
    p.add("n", n, "Number of arcs")->check(CLI::Range(1, 10000000));
    p.add("t-max", t_max, "Scan [0, t-max]");
    p.add("steps", steps, "Grid intervals")->check(CLI::Range(1, 100000000));
  }
  void run(Run& r) override {
    SequenceExpr len(lengths), sp(speeds);
    ArcFamily fam;
    auto rng = r.root().derive(tag::param).engine();
    for (std::size_t i = 0; i < n; ++i) {
      fam.arcs.push_back({len(i + 1), wrap01(uniform01(rng))});
      fam.speeds.push_back(sp(i + 1));
    }
    std::vector<double> times(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) times[k] = t_max * static_cast<double>(k) / static_cast<double>(steps);
    auto scan = rotating_cover_scan(fam, n, times);
    Csv sc({{"t", "time"}, {"uncovered_measure", "measure left uncovered"}, {"uncovered_arcs", "maximal uncovered arcs"}});
    for (const auto& s : scan.samples) sc.row(s.t, s.uncovered_measure, s.uncovered_arcs);
    Csv wc({{"t_first", "first grid time of the run"}, {"t_last", "last grid time of the run"}, {"samples", "grid times in the run"}});
    for (const auto& w : scan.windows) wc.row(w.t_first, w.t_last, w.samples);
    r.write_csv("scan.csv", sc);
    r.write_csv("windows.csv", wc);
    r.results["fraction_nonempty"] = scan.fraction_nonempty;
    r.results["windows"] = scan.windows.size();
    if (r.common->svg) {
      double top = 0.0;
      std::vector<std::pair<double, double>> pts;
      for (const auto& s : scan.samples) {
        pts.emplace_back(s.t, s.uncovered_measure);
        top = std::max(top, s.uncovered_measure);
      }
      SvgPlot plot(0.0, t_max > 0.0 ? t_max : 1.0, 0.0, top > 0.0 ? top * 1.05 : 1.0);
      plot.polyline(pts, "#1f4e9c");
      r.write_svg("scan.svg", plot, "uncovered measure over time");
    }
  }

  std::string lengths = "1/(2*n^2)", speeds = "n";
  std::size_t n = 50, steps = 1000;
  double t_max = 1.0;
};

// ---------------------------------------------------------------------------

class BrownianCommand : public Command {
 public:
  const char* name() const override { return "brownian"; }
  const char* summary() const override { return "Levy midpoint construction on renewal lines"; }
  std::string footer() const override {
    return "Outputs: path.csv x,B,point_id,level at x = k 2^-depth on [0,1].\n"
           "level is -1 for x = 1 and 0 for x = 0 (B = 0, point_id 0 is a placeholder).";
  }
  void define(Params& p) override { p.add("depth", depth, "Dyadic depth")->check(CLI::Range(0, kMaxDyadicDepth)); }
  void run(Run& r) override {
    auto path = levy_interpolate(r.root(), depth);
    Csv pc({{"x", "dyadic abscissa"}, {"B", "path value"}, {"point_id", "realized point id"}, {"level", "line level"}});
    detail_cli::Range yr;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < path.values.size(); ++k) {
      const auto& v = path.values[k];
      pc.row(path.x(k), v.value, v.point_id, v.level);
      pts.emplace_back(path.x(k), v.value);
      yr.add(v.value);
    }
    r.write_csv("path.csv", pc);
    r.results["B1"] = path.values.back().value;
    r.results["ties"] = path.ties;
    if (r.common->svg) {
      auto yb = yr.padded();
      SvgPlot plot(0.0, 1.0, yb.lo, yb.hi);
      plot.polyline(pts, "#1f4e9c", 1.0);
      r.write_svg("path.svg", plot, "dyadic path");
    }
  }

  int depth = 10;
};

// ---------------------------------------------------------------------------

class SelftestCommand : public Command {
 public:
  const char* name() const override { return "selftest"; }
  const char* summary() const override { return "Quick internal consistency checks"; }
  std::string footer() const override { return "Outputs: selftest.csv suite,checks,failures. Exit status 2 on any failure."; }
  void define(Params&) override {}
  void run(Run& r) override {
    auto suites = run_selftest(r.common->seed);
    Csv sc({{"suite", "area checked"}, {"checks", "checks run"}, {"failures", "checks failed"}});
    std::size_t failures = 0;
    for (const auto& s : suites) {
      sc.row(s.name, s.checks, s.failures);
      failures += s.failures;
      std::cout << (s.failures == 0 ? "ok   " : "FAIL ") << s.name << " (" << s.checks << " checks)";
      for (const auto& m : s.messages) std::cout << "\n     " << m;
      std::cout << "\n";
    }
    r.write_csv("selftest.csv", sc);
    r.results["failures"] = failures;
    if (failures > 0) throw std::runtime_error(std::to_string(failures) + " self-test check(s) failed");
  }
};

inline std::vector<std::unique_ptr<Command>> all_commands() {
  std::vector<std::unique_ptr<Command>> v;
  v.push_back(std::make_unique<GenCommand>());
  v.push_back(std::make_unique<InterpolateCommand>());
  v.push_back(std::make_unique<LipschitzCommand>());
  v.push_back(std::make_unique<SweepCommand>());
  v.push_back(std::make_unique<LambdaCCommand>());
  v.push_back(std::make_unique<CriteriaCommand>());
  v.push_back(std::make_unique<CircleCoverCommand>());
  v.push_back(std::make_unique<RotateScanCommand>());
  v.push_back(std::make_unique<BrownianCommand>());
  v.push_back(std::make_unique<SelftestCommand>());
  return v;
}

}  // namespace interperc::cli
