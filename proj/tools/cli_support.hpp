#pragma once

// Shared plumbing for the command-line tool: option registry with config
// echo, output files that are removed again on failure, the run manifest,
// and parsers for model specs and number lists.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "interperc/interperc.hpp"

namespace interperc::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

inline std::string num(double v) { return detail::fmt17(v); }

/// Exit status for bad input (usage errors, invalid parameters).
inline constexpr int kInputError = 1;
/// Exit status for failures while running (budgets, failed invariants, I/O).
inline constexpr int kRuntimeError = 2;

/// Options shared by every subcommand.
struct Common {
  std::uint64_t seed = 1;
  std::string out = "out";
  std::string config;
  bool svg = false;
  bool timing = false;
  unsigned threads = 1;
};

/// Registers options on a subcommand and remembers how to echo their values.
class Params {
 public:
  explicit Params(CLI::App* app) : app_(app) {}

  template <typename T>
  CLI::Option* add(const std::string& name, T& var, const std::string& desc) {
    getters_.emplace_back(name, [&var] { return json(var); });
    return app_->add_option("--" + name, var, desc)->capture_default_str();
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& desc) {
    getters_.emplace_back(name, [&var] { return json(var); });
    return app_->add_flag("--" + name, var, desc);
  }

  [[nodiscard]] json echo() const {
    json j = json::object();
    for (const auto& [name, get] : getters_) j[name] = get();
    return j;
  }

  [[nodiscard]] CLI::App* app() const { return app_; }

 private:
  CLI::App* app_;
  std::vector<std::pair<std::string, std::function<json()>>> getters_;
};

inline void add_common(Params& p, Common& c) {
  p.add("seed", c.seed, "Root seed; every stream is derived from (seed, 0)");
  p.add("out", c.out, "Output directory (created if missing)");
  p.add("threads", c.threads, "Worker threads for Monte Carlo loops (results do not depend on it)");
  p.flag("svg", c.svg, "Also write an SVG figure");
  p.flag("timing", c.timing, "Record wall time in the manifest (makes it run-dependent)");
  p.app()->add_option("--config", c.config, "Flat key=value file; command-line flags take precedence");
}

/// Files written by a run; `discard` deletes them after a failure.
class Outputs {
 public:
  explicit Outputs(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir_);
    auto path = dir_ / name;
    written_.push_back(name);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << content;
    if (!os) throw std::runtime_error("failed writing " + path.string());
  }

  void discard() {
    std::error_code ec;
    for (const auto& n : written_) std::filesystem::remove(dir_ / n, ec);
    written_.clear();
  }

  [[nodiscard]] const std::vector<std::string>& names() const { return written_; }
  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> written_;
};

/// A CSV file under construction with its documented columns.
class Csv {
 public:
  Csv(std::vector<std::pair<std::string, std::string>> columns) : columns_(std::move(columns)) {
    for (std::size_t i = 0; i < columns_.size(); ++i) body_ << (i ? "," : "") << columns_[i].first;
    body_ << "\n";
  }

  template <typename... Cells>
  void row(const Cells&... cells) {
    std::size_t i = 0;
    ((body_ << (i++ ? "," : "") << cell(cells)), ...);
    body_ << "\n";
  }

  [[nodiscard]] std::string str() const { return body_.str(); }
  [[nodiscard]] json schema() const {
    json j = json::array();
    for (const auto& [name, doc] : columns_) j.push_back({{"name", name}, {"description", doc}});
    return j;
  }

 private:
  static std::string cell(double v) { return num(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(bool b) { return b ? "1" : "0"; }
  template <typename T>
    requires std::is_integral_v<T>
  static std::string cell(T v) {
    return std::to_string(v);
  }
  static std::string cell(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : ""; }

  std::vector<std::pair<std::string, std::string>> columns_;
  std::ostringstream body_;
};

/// State of one command execution.
struct Run {
  std::string command;
  const Common* common = nullptr;
  const Params* params = nullptr;
  Outputs outputs{"out"};
  json results = json::object();
  json schema = json::object();

  [[nodiscard]] RngStream root() const { return RngStream{common->seed, 0}; }

  void write_csv(const std::string& name, const Csv& csv) {
    outputs.write(name, csv.str());
    schema[name] = csv.schema();
  }

  void write_svg(const std::string& name, const SvgPlot& plot, const std::string& title) {
    std::ostringstream os;
    plot.write(os, title);
    outputs.write(name, os.str());
  }
};

inline json manifest(const Run& run, std::optional<double> wall_seconds) {
  json m;
  m["command"] = run.command;
  m["seed"] = run.common->seed;
  m["config"] = run.params->echo();
  m["versions"] = {{"interperc", kVersion},
                   {"cli11", CLI11_VERSION},
                   {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  m["outputs"] = run.outputs.names();
  m["schema"] = run.schema;
  m["results"] = run.results;
  if (wall_seconds) m["wall_time_s"] = *wall_seconds;
  return m;
}

// ---------------------------------------------------------------------------
// Parsing helpers

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument(what + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw InvalidArgument(what + ": '" + s + "' is not a number");
  return v;
}

/// `poisson:LAMBDA`, `periodic:SCALE[:SHIFT]`, `weibull:LEVEL`, `boolean:LENGTH`.
inline LineModel parse_model(const std::string& spec, double x) {
  auto parts = split(spec, ':');
  if (parts.empty()) throw InvalidArgument("empty model spec");
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) {
    if (i >= parts.size()) throw InvalidArgument("model spec '" + spec + "' is missing a parameter");
    return parse_double(parts[i], "model spec");
  };
  LineModel m;
  m.x = x;
  if (kind == "poisson" && parts.size() == 2) {
    m.kind = Poisson{arg(1)};
  } else if (kind == "periodic" && (parts.size() == 2 || parts.size() == 3)) {
    Periodic p{arg(1), {BaseInterval{}}, std::nullopt};
    if (parts.size() == 3) p.shift = arg(2);
    m.kind = p;
  } else if (kind == "weibull" && parts.size() == 2) {
    double level = arg(1);
    if (level != std::floor(level)) throw InvalidArgument("weibull level must be an integer");
    m.kind = RenewalWeibull{static_cast<int>(level)};
  } else if (kind == "boolean" && parts.size() == 2) {
    m.kind = BooleanComplement{arg(1)};
  } else {
    throw InvalidArgument("unknown model spec '" + spec +
                          "' (expected poisson:L, periodic:S[:U], weibull:N or boolean:L)");
  }
  validate(m);
  return m;
}

/// Reads `key = value` lines ('#' starts a comment) and turns keys not
/// already given on the command line into `--key value` arguments.
inline std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot read config file '" + path + "'");
  auto given = [&](const std::string& key) {
    for (const auto& a : args) {
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    }
    return false;
  };
  std::vector<std::string> extra;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") throw InvalidArgument(path + ":" + std::to_string(lineno) + ": bad key");
    if (given(key)) continue;
    if (value == "true" || value == "false") {
      if (value == "true") extra.push_back("--" + key);
    } else {
      extra.push_back("--" + key + "=" + value);
    }
  }
  std::vector<std::string> out(args.begin(), args.end());
  // Insert after the subcommand name so the options bind to it.
  std::size_t at = std::min<std::size_t>(2, out.size());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
  return out;
}

}  // namespace interperc::cli
