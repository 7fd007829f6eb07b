#pragma once

// Stationary random closed subsets of a vertical line, realized lazily
// inside a window, with exact nearest-point and void-radius queries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace interperc {

// ---------------------------------------------------------------------------
// Models

/// Homogeneous Poisson point process.
struct Poisson {
  double intensity = 1.0;
};

/// Closed interval [lo, hi] of the periodic base set; lo == hi is a point.
struct BaseInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// scale * (base + Z + shift). The shift is drawn uniformly from [0,1) once
/// per line unless fixed here.
struct Periodic {
  double scale = 1.0;
  std::vector<BaseInterval> base{BaseInterval{}};
  std::optional<double> shift;
};

/// Two-sided stationary renewal process with interarrival CDF
/// F(t) = 1 - exp(-2^(level-2) t^2).
struct RenewalWeibull {
  int level = 1;
};

/// Complement of the union of open intervals (p, p + arc_length) over the
/// points p of a unit-rate Poisson process.
struct BooleanComplement {
  double arc_length = 0.5;
};

using ModelKind = std::variant<Poisson, Periodic, RenewalWeibull, BooleanComplement>;

struct LineModel {
  ModelKind kind = Poisson{};
  double x = 0.0;
};

/// Poisson intensity of the line, if it has one.
inline std::optional<double> intensity_of(const LineModel& m) {
  if (auto p = std::get_if<Poisson>(&m.kind)) return p->intensity;
  return std::nullopt;
}

/// Rate parameter 2^(level-2) of the Weibull interarrival law.
inline double weibull_rate(int level) { return std::ldexp(1.0, level - 2); }

/// Models whose realizations consist of isolated points.
inline bool is_point_model(const LineModel& m) {
  if (std::holds_alternative<Poisson>(m.kind) ||
      std::holds_alternative<RenewalWeibull>(m.kind))
    return true;
  if (auto p = std::get_if<Periodic>(&m.kind)) {
    return std::all_of(p->base.begin(), p->base.end(),
                       [](const BaseInterval& b) { return b.lo == b.hi; });
  }
  return false;
}

inline void validate(const LineModel& m) {
  using detail::require;
  require(std::isfinite(m.x), "line abscissa must be finite");
  std::visit(
      [](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Poisson>) {
          require(std::isfinite(k.intensity) && k.intensity > 0.0,
                  "Poisson intensity must be finite and positive");
        } else if constexpr (std::is_same_v<T, Periodic>) {
          require(std::isfinite(k.scale) && k.scale != 0.0,
                  "periodic scale must be finite and nonzero");
          require(!k.base.empty(), "periodic base set must be nonempty");
          for (const auto& b : k.base) {
            require(std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo <= b.hi,
                    "periodic base intervals must be finite with lo <= hi");
          }
          if (k.shift) require(std::isfinite(*k.shift), "periodic shift must be finite");
        } else if constexpr (std::is_same_v<T, RenewalWeibull>) {
          require(k.level >= -60 && k.level <= 60, "renewal level out of range");
        } else {
          require(std::isfinite(k.arc_length) && k.arc_length > 0.0 && k.arc_length < 1.0,
                  "Boolean arc length must lie in (0,1)");
        }
      },
      m.kind);
}

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Compact, parseable model tag, e.g. `poisson(2)` or `periodic(1,[0,0],0.3)`.
inline std::string describe(const LineModel& m) {
  using detail::fmt17;
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Poisson>) {
          return "poisson(" + fmt17(k.intensity) + ")";
        } else if constexpr (std::is_same_v<T, Periodic>) {
          std::string s = "periodic(" + fmt17(k.scale);
          for (const auto& b : k.base) s += ",[" + fmt17(b.lo) + "," + fmt17(b.hi) + "]";
          s += "," + (k.shift ? fmt17(*k.shift) : std::string("random")) + ")";
          return s;
        } else if constexpr (std::is_same_v<T, RenewalWeibull>) {
          return "weibull(" + std::to_string(k.level) + ")";
        } else {
          return "boolean(" + fmt17(k.arc_length) + ")";
        }
      },
      m.kind);
}

// ---------------------------------------------------------------------------
// Realizations

struct Window {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] bool contains(double z) const { return lo <= z && z <= hi; }
  [[nodiscard]] bool contains(const Window& w) const { return lo <= w.lo && w.hi <= hi; }
};

/// Connected component [lo, hi] of a realized set; points have lo == hi.
/// `id` is stable under window extension.
struct Component {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t id = 0;

  [[nodiscard]] bool is_point() const { return lo == hi; }
};

enum class Direction { up, down, both };

/// A witness of D+, D- or D at a query point.
struct NearestPoint {
  double distance = 0.0;
  double value = 0.0;
  std::int64_t point_id = 0;
  bool tie = false;  // both directions were equidistant; broke upward
};

/// A realized value tagged with the identity of the component it lies in.
struct Anchor {
  double value = 0.0;
  std::int64_t point_id = 0;
};

struct RealizeOptions {
  /// Origin of the outward generation for Poisson, renewal and Boolean
  /// models. Stationarity makes the law independent of it.
  double anchor = 0.0;
  /// Maximum growth factor of a window during one automatic search.
  double growth_cap = 1024.0;
};

class RealizedSet;
RealizedSet realize(const LineModel& model, RngStream stream, Window window,
                    RealizeOptions options = {});
RealizedSet extend(const RealizedSet& set, Window new_window);
RealizedSet thin(const RealizedSet& set, double keep_probability, RngStream coins);

/// One line's random closed set materialized inside a window. Immutable;
/// `extend` returns a new value whose content on the old window is
/// identical.
class RealizedSet {
 public:
  RealizedSet() = default;

  [[nodiscard]] const LineModel& model() const { return model_; }
  [[nodiscard]] RngStream stream() const { return stream_; }
  [[nodiscard]] Window window() const { return window_; }
  [[nodiscard]] double anchor() const { return anchor_; }
  [[nodiscard]] double growth_cap() const { return growth_cap_; }
  [[nodiscard]] std::span<const Component> components() const { return components_; }
  [[nodiscard]] std::size_t size() const { return components_.size(); }
  [[nodiscard]] bool empty() const { return components_.empty(); }
  [[nodiscard]] bool point_kind() const { return point_kind_; }
  /// Periodic offset actually used (drawn or fixed); 0 for other models.
  [[nodiscard]] double shift() const { return shift_; }

  /// Nearest point within the current window, or nullopt when the answer
  /// could lie outside it. `z` must lie in the window.
  [[nodiscard]] std::optional<NearestPoint> find_nearest(double z, Direction dir) const {
    if (!window_.contains(z)) return std::nullopt;
    std::optional<NearestPoint> up, down;
    if (dir != Direction::down) {
      auto it = std::lower_bound(components_.begin(), components_.end(), z,
                                 [](const Component& c, double v) { return c.hi < v; });
      if (it != components_.end()) {
        double v = std::max(it->lo, z);
        up = NearestPoint{v - z, v, it->id, false};
      }
    }
    if (dir != Direction::up) {
      auto it = std::upper_bound(components_.begin(), components_.end(), z,
                                 [](double v, const Component& c) { return v < c.lo; });
      if (it != components_.begin()) {
        --it;
        double v = std::min(it->hi, z);
        down = NearestPoint{z - v, v, it->id, false};
      }
    }
    if (dir == Direction::up) return up;
    if (dir == Direction::down) return down;
    // Two-sided: a candidate is conclusive only if nothing outside the
    // window could be closer.
    if (up && down) {
      if (up->distance <= down->distance) {
        up->tie = up->distance == down->distance && up->value != down->value;
        return up;
      }
      return down;
    }
    if (up && up->distance <= z - window_.lo) return up;
    if (down && down->distance < window_.hi - z) return down;
    return std::nullopt;
  }

  /// Identity check: `value` lies in the component with id `point_id`.
  [[nodiscard]] bool contains(double value, std::int64_t point_id) const {
    auto it = std::upper_bound(components_.begin(), components_.end(), value,
                               [](double v, const Component& c) { return v < c.lo; });
    if (it == components_.begin()) return false;
    --it;
    return it->id == point_id && it->lo <= value && value <= it->hi;
  }
  [[nodiscard]] bool contains(const Anchor& a) const { return contains(a.value, a.point_id); }

 private:
  friend RealizedSet realize(const LineModel&, RngStream, Window, RealizeOptions);
  friend RealizedSet extend(const RealizedSet&, Window);
  friend RealizedSet thin(const RealizedSet&, double, RngStream);

  struct Thinning {
    double keep = 1.0;
    RngStream coins;
  };

  [[nodiscard]] bool outward() const { return !std::holds_alternative<Periodic>(model_.kind); }

  [[nodiscard]] double draw_gap(Pcg32& rng) const {
    if (auto p = std::get_if<Poisson>(&model_.kind)) return exponential(rng, p->intensity);
    if (auto r = std::get_if<RenewalWeibull>(&model_.kind))
      return std::sqrt(exponential(rng, 1.0) / weibull_rate(r->level));
    return exponential(rng, 1.0);  // Boolean: unit-rate centres
  }

  // First point above and below the anchor.
  void start_outward() {
    Pcg32 origin = stream_.derive(tag::origin).engine();
    double above, below;
    if (auto r = std::get_if<RenewalWeibull>(&model_.kind)) {
      // Length-biased straddling interval: density proportional to
      // t * f(t) ~ t^2 exp(-a t^2), i.e. a scaled chi(3) variate.
      double a = weibull_rate(r->level);
      double z1 = standard_normal(origin), z2 = standard_normal(origin),
             z3 = standard_normal(origin);
      double len = std::sqrt(z1 * z1 + z2 * z2 + z3 * z3) / std::sqrt(2.0 * a);
      double u = uniform01(origin);
      below = anchor_ - u * len;
      above = anchor_ + (1.0 - u) * len;
    } else {
      // Memorylessness: independent exponentials on both sides.
      above = anchor_ + draw_gap(origin);
      below = anchor_ - draw_gap(origin);
    }
    raw_ = {Component{below, below, -1}, Component{above, above, 0}};
    right_rng_ = stream_.derive(tag::right).engine();
    left_rng_ = stream_.derive(tag::left).engine();
  }

  // Grow raw_ until it has a point strictly beyond each window edge.
  void generate_outward() {
    while (raw_.back().lo <= window_.hi) {
      double p = raw_.back().lo + draw_gap(right_rng_);
      raw_.push_back({p, p, raw_.back().id + 1});
    }
    if (raw_.front().lo >= window_.lo) {
      std::vector<Component> prefix;
      double p = raw_.front().lo;
      std::int64_t id = raw_.front().id;
      do {
        p -= draw_gap(left_rng_);
        prefix.push_back({p, p, --id});
      } while (p >= window_.lo);
      std::reverse(prefix.begin(), prefix.end());
      prefix.insert(prefix.end(), raw_.begin(), raw_.end());
      raw_ = std::move(prefix);
    }
  }

  [[nodiscard]] bool kept(std::int64_t id) const {
    for (const auto& t : thinning_) {
      Pcg32 coin(t.coins.seed, splitmix64(t.coins.stream_id ^ splitmix64(static_cast<std::uint64_t>(id))));
      if (!(uniform01(coin) < t.keep)) return false;
    }
    return true;
  }

  void rebuild_components() {
    components_.clear();
    if (auto b = std::get_if<BooleanComplement>(&model_.kind)) {
      for (std::size_t i = 0; i + 1 < raw_.size(); ++i) {
        double lo = raw_[i].lo + b->arc_length;
        double hi = raw_[i + 1].lo;
        if (lo > hi) continue;
        lo = std::max(lo, window_.lo);
        hi = std::min(hi, window_.hi);
        if (lo <= hi) components_.push_back({lo, hi, raw_[i].id});
      }
    } else if (auto per = std::get_if<Periodic>(&model_.kind)) {
      build_periodic(*per);
    } else {
      for (const auto& c : raw_) {
        if (window_.contains(c.lo) && kept(c.id)) components_.push_back(c);
      }
    }
  }

  void build_periodic(const Periodic& per) {
    double s = per.scale;
    double t0 = std::min(window_.lo / s, window_.hi / s) - shift_;
    double t1 = std::max(window_.lo / s, window_.hi / s) - shift_;
    double bmin = per.base.front().lo, bmax = per.base.front().hi;
    for (const auto& b : per.base) {
      bmin = std::min(bmin, b.lo);
      bmax = std::max(bmax, b.hi);
    }
    auto kmin = static_cast<std::int64_t>(std::floor(t0 - bmax)) - 1;
    auto kmax = static_cast<std::int64_t>(std::ceil(t1 - bmin)) + 1;
    auto nbase = static_cast<std::int64_t>(per.base.size());
    std::vector<Component> all;
    for (std::int64_t k = kmin; k <= kmax; ++k) {
      for (std::int64_t j = 0; j < nbase; ++j) {
        const auto& b = per.base[static_cast<std::size_t>(j)];
        double kk = static_cast<double>(k);
        double a = s * (b.lo + kk + shift_);
        double c = s * (b.hi + kk + shift_);
        if (a > c) std::swap(a, c);
        a = std::max(a, window_.lo);
        c = std::min(c, window_.hi);
        if (a > c) continue;
        std::int64_t id = k * nbase + j;
        if (a == c && !kept(id)) continue;
        all.push_back({a, c, id});
      }
    }
    std::sort(all.begin(), all.end(), [](const Component& p, const Component& q) {
      return p.lo < q.lo || (p.lo == q.lo && p.id < q.id);
    });
    for (const auto& c : all) {
      if (!components_.empty() && c.lo <= components_.back().hi) {
        components_.back().hi = std::max(components_.back().hi, c.hi);
      } else {
        components_.push_back(c);
      }
    }
  }

  LineModel model_;
  RngStream stream_;
  Window window_;
  double anchor_ = 0.0;
  double growth_cap_ = 1024.0;
  double shift_ = 0.0;
  bool point_kind_ = true;
  std::vector<Component> raw_;
  Pcg32 right_rng_;
  Pcg32 left_rng_;
  std::vector<Thinning> thinning_;
  std::vector<Component> components_;
};

inline void validate_window(Window w) {
  detail::require(std::isfinite(w.lo) && std::isfinite(w.hi) && w.lo <= w.hi,
                  "window must be finite with lo <= hi");
}

/// Realize `model` from `stream` inside `window`. Deterministic in
/// (model, stream, anchor); the window only decides how much is materialized.
inline RealizedSet realize(const LineModel& model, RngStream stream, Window window,
                           RealizeOptions options) {
  validate(model);
  validate_window(window);
  detail::require(std::isfinite(options.anchor), "anchor must be finite");
  detail::require(options.growth_cap >= 1.0, "growth cap must be >= 1");
  RealizedSet s;
  s.model_ = model;
  s.stream_ = stream;
  s.window_ = window;
  s.anchor_ = options.anchor;
  s.growth_cap_ = options.growth_cap;
  s.point_kind_ = is_point_model(model);
  if (auto per = std::get_if<Periodic>(&model.kind)) {
    if (per->shift) {
      s.shift_ = *per->shift;
    } else {
      Pcg32 rng = stream.derive(tag::shift).engine();
      s.shift_ = uniform01(rng);
    }
  } else {
    s.start_outward();
    s.generate_outward();
  }
  s.rebuild_components();
  return s;
}

/// Same set on a larger window; content on the old window is unchanged.
inline RealizedSet extend(const RealizedSet& set, Window new_window) {
  validate_window(new_window);
  if (!new_window.contains(set.window_))
    throw InvalidArgument("extend: new window must contain the current window");
  RealizedSet s = set;
  s.window_ = new_window;
  if (s.outward()) s.generate_outward();
  s.rebuild_components();
  return s;
}

/// Independent thinning of a point set: each point survives with
/// probability `keep_probability`, decided by a coin keyed on its id, so the
/// thinned set stays consistent under extension and is a subset of `set`.
inline RealizedSet thin(const RealizedSet& set, double keep_probability, RngStream coins) {
  detail::require(set.point_kind(), "thin: only point sets can be thinned");
  detail::require(keep_probability >= 0.0 && keep_probability <= 1.0,
                  "thin: keep probability must lie in [0,1]");
  RealizedSet s = set;
  s.thinning_.push_back({keep_probability, coins});
  if (auto p = std::get_if<Poisson>(&s.model_.kind)) p->intensity *= keep_probability;
  s.rebuild_components();
  return s;
}

/// D+, D- or D at z, growing the window geometrically as needed. Replaces
/// `set` with the extended realization.
inline NearestPoint nearest(RealizedSet& set, double z, Direction dir) {
  detail::require(std::isfinite(z), "nearest: query must be finite");
  Window w = set.window();
  if (!w.contains(z)) {
    set = extend(set, {std::min(w.lo, z), std::max(w.hi, z)});
    w = set.window();
  }
  const double base = std::max(w.width(), 1.0);
  const double limit = set.growth_cap() * base;
  for (;;) {
    if (auto r = set.find_nearest(z, dir)) return *r;
    double step = std::max(w.width(), 1.0);
    Window next = w;
    if (dir != Direction::down) next.hi += step;
    if (dir != Direction::up) next.lo -= step;
    if (next.width() > limit) {
      throw ExtensionBudgetExceeded("nearest: no point of " + describe(set.model()) +
                                    " found within the window growth budget");
    }
    set = extend(set, next);
    w = set.window();
  }
}

/// Ensure the window covers [lo, hi] and return the components there.
inline std::span<const Component> components_in(RealizedSet& set, double lo, double hi) {
  Window w = set.window();
  if (!w.contains(Window{lo, hi})) set = extend(set, {std::min(w.lo, lo), std::max(w.hi, hi)});
  auto all = set.components();
  auto first = std::lower_bound(all.begin(), all.end(), lo,
                                [](const Component& c, double v) { return c.hi < v; });
  auto last = std::upper_bound(first, all.end(), hi,
                               [](double v, const Component& c) { return v < c.lo; });
  return {first, last};
}

struct VoidRadius {
  double radius = 0.0;
  double center = 0.0;
};

/// max over y in [lo, hi] of D(y), with an attaining y. Exact from the
/// sorted gaps: the best centre of each gap is its midpoint clamped to the
/// interval.
inline VoidRadius max_void_radius(RealizedSet& set, double lo, double hi) {
  detail::require(lo <= hi, "max_void_radius: empty interval");
  nearest(set, lo, Direction::down);
  nearest(set, hi, Direction::up);
  VoidRadius best{0.0, std::clamp(0.0, lo, hi)};
  auto c = set.components();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    double a = c[i].hi, b = c[i + 1].lo;
    if (!(a < b) || a >= hi || b <= lo) continue;
    double center = std::clamp(a + (b - a) / 2.0, lo, hi);
    double r = std::min(center - a, b - center);
    if (r > best.radius) best = {r, center};
  }
  return best;
}

inline VoidRadius max_void_radius(RealizedSet& set, double k) {
  return max_void_radius(set, -k, k);
}

// ---------------------------------------------------------------------------
// CSV

/// Header `# model=...;seed=...;stream=...;window=lo,hi`, then one row per
/// component: `value,id` for points, `lo,hi,id` for intervals. Numbers use
/// 17 significant digits.
inline void write_csv(std::ostream& os, const RealizedSet& set) {
  using detail::fmt17;
  os << "# model=" << describe(set.model()) << ";seed=" << set.stream().seed
     << ";stream=" << set.stream().stream_id << ";window=" << fmt17(set.window().lo) << ","
     << fmt17(set.window().hi) << "\n";
  for (const auto& c : set.components()) {
    if (set.point_kind()) {
      os << fmt17(c.lo) << "," << c.id << "\n";
    } else {
      os << fmt17(c.lo) << "," << fmt17(c.hi) << "," << c.id << "\n";
    }
  }
}

struct RealizationCsv {
  std::string model;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  Window window;
  std::vector<Component> components;
};

inline RealizationCsv read_csv(std::istream& is) {
  RealizationCsv out;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0)
    throw InvalidArgument("realization csv: missing header");
  std::stringstream header(line.substr(2));
  std::string field;
  while (std::getline(header, field, ';')) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw InvalidArgument("realization csv: bad header field");
    std::string key = field.substr(0, eq), val = field.substr(eq + 1);
    if (key == "model") {
      out.model = val;
    } else if (key == "seed") {
      out.seed = std::stoull(val);
    } else if (key == "stream") {
      out.stream = std::stoull(val);
    } else if (key == "window") {
      auto comma = val.find(',');
      out.window = {std::stod(val.substr(0, comma)), std::stod(val.substr(comma + 1))};
    }
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    while (std::getline(row, field, ',')) cells.push_back(field);
    if (cells.size() == 2) {
      double v = std::stod(cells[0]);
      out.components.push_back({v, v, std::stoll(cells[1])});
    } else if (cells.size() == 3) {
      out.components.push_back({std::stod(cells[0]), std::stod(cells[1]), std::stoll(cells[2])});
    } else {
      throw InvalidArgument("realization csv: bad row '" + line + "'");
    }
  }
  return out;
}

}  // namespace interperc
