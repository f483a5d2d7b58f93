#include "hsf_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <locale>
#include <sstream>


namespace hsf::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string cell; std::getline(ss, cell, sep);) out.push_back(trim(cell));
  return out;
}

bool to_double(const std::string& text, double& out) {
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  double v = 0.0;
  if (text.empty() || !(is >> v) || !(is >> std::ws).eof()) return false;
  out = v;
  return true;
}

bool to_size(const std::string& text, std::uint64_t& out) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) return false;
  try {
    out = std::stoull(text);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + shortest(v[k]);
  return out;
}

struct Key {
  const char* name;
  std::function<std::string(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

Key real(const char* name, double RunConfig::*field) {
  return {name,
          [name, field](RunConfig& c, const std::string& v) -> std::string {
            double d = 0.0;
            if (!to_double(v, d) || !std::isfinite(d)) return std::string(name) + ": '" + v + "' is not a number";
            c.*field = d;
            return {};
          },
          [field](const RunConfig& c) { return shortest(c.*field); }};
}

Key count(const char* name, std::size_t RunConfig::*field) {
  return {name,
          [name, field](RunConfig& c, const std::string& v) -> std::string {
            std::uint64_t n = 0;
            if (!to_size(v, n)) return std::string(name) + ": '" + v + "' is not a nonnegative integer";
            c.*field = static_cast<std::size_t>(n);
            return {};
          },
          [field](const RunConfig& c) { return std::to_string(c.*field); }};
}

Key text(const char* name, std::string RunConfig::*field, std::vector<std::string> allowed = {}) {
  return {name,
          [name, field, allowed](RunConfig& c, const std::string& v) -> std::string {
            if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
              std::string list;
              for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
              return std::string(name) + ": '" + v + "' is not one of " + list;
            }
            c.*field = v;
            return {};
          },
          [field](const RunConfig& c) { return c.*field; }};
}

Key reals(const char* name, std::vector<double> RunConfig::*field) {
  return {name,
          [name, field](RunConfig& c, const std::string& v) -> std::string {
            std::vector<double> out;
            for (const auto& cell : split(v, ',')) {
              double d = 0.0;
              if (!to_double(cell, d) || !std::isfinite(d)) {
                return std::string(name) + ": '" + cell + "' is not a number";
              }
              out.push_back(d);
            }
            if (out.empty()) return std::string(name) + ": empty list";
            c.*field = std::move(out);
            return {};
          },
          [field](const RunConfig& c) { return join(c.*field); }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table{
      {"command",
       [](RunConfig& c, const std::string& v) -> std::string {
         for (Command k : {Command::Fidelity, Command::Sweep, Command::Zeno, Command::Fragments, Command::Bound,
                           Command::MonteCarlo}) {
           if (v == command_name(k)) {
             c.command = k;
             return {};
           }
         }
         if (v == "none") {
           c.command = Command::None;
           return {};
         }
         return "command: '" + v + "' is not one of fidelity, sweep, zeno, fragments, bound, montecarlo";
       },
       [](const RunConfig& c) { return std::string(command_name(c.command)); }},
      text("output", &RunConfig::output),
      {"seed",
       [](RunConfig& c, const std::string& v) -> std::string {
         std::uint64_t n = 0;
         if (!to_size(v, n)) return "seed: '" + v + "' is not a nonnegative integer";
         c.seed = n;
         return {};
       },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      count("lattice.width", &RunConfig::width),
      count("lattice.height", &RunConfig::height),
      {"lattice.boundary",
       [](RunConfig& c, const std::string& v) -> std::string {
         if (v == "frame") {
           c.boundary = Boundary::FixedDownFrame;
         } else if (v == "open") {
           c.boundary = Boundary::Open;
         } else {
           return "lattice.boundary: '" + v + "' is not one of frame, open";
         }
         return {};
       },
       [](const RunConfig& c) { return std::string(c.boundary == Boundary::Open ? "open" : "frame"); }},
      {"partition",
       [](RunConfig& c, const std::string& v) -> std::string {
         if (v != "canonical" && (v.rfind("explicit:", 0) != 0 || v.size() == 9)) {
           return "partition: '" + v + "' is not canonical or explicit:<file>";
         }
         c.partition = v;
         return {};
       },
       [](const RunConfig& c) { return c.partition; }},
      real("couplings.jbar", &RunConfig::jbar),
      real("couplings.sigma", &RunConfig::sigma),
      text("couplings.file", &RunConfig::couplings_file),
      {"evolve.method",
       [](RunConfig& c, const std::string& v) -> std::string {
         if (v == "auto") {
           c.method = EvolutionMethod::Auto;
         } else if (v == "eig") {
           c.method = EvolutionMethod::EigenDecomposition;
         } else if (v == "krylov") {
           c.method = EvolutionMethod::Krylov;
         } else {
           return "evolve.method: '" + v + "' is not one of auto, eig, krylov";
         }
         return {};
       },
       [](const RunConfig& c) {
         switch (c.method) {
           case EvolutionMethod::EigenDecomposition: return std::string("eig");
           case EvolutionMethod::Krylov: return std::string("krylov");
           default: return std::string("auto");
         }
       }},
      count("evolve.krylov_dim", &RunConfig::krylov_dimension),
      real("evolve.krylov_tol", &RunConfig::krylov_tolerance),
      real("sensing.omega", &RunConfig::omega),
      real("sensing.t_int", &RunConfig::t_int),
      real("sensing.t_all", &RunConfig::t_all),
      real("fidelity.omega", &RunConfig::fidelity_omega),
      real("fidelity.t_max", &RunConfig::fidelity_t_max),
      count("fidelity.points", &RunConfig::fidelity_points),
      reals("fidelity.jbars", &RunConfig::fidelity_jbars),
      count("fidelity.seeds", &RunConfig::fidelity_seeds),
      text("sweep.scheme", &RunConfig::sweep_scheme, {"all", "ghz_free", "ghz_interacting", "hsf"}),
      {"sweep.ideal",
       [](RunConfig& c, const std::string& v) -> std::string {
         if (v == "true" || v == "1") {
           c.sweep_ideal = true;
         } else if (v == "false" || v == "0") {
           c.sweep_ideal = false;
         } else {
           return "sweep.ideal: '" + v + "' is not true or false";
         }
         return {};
       },
       [](const RunConfig& c) { return std::string(c.sweep_ideal ? "true" : "false"); }},
      {"sweep.sizes",
       [](RunConfig& c, const std::string& v) -> std::string {
         std::vector<LatticeSize> out;
         for (const auto& cell : split(v, ',')) {
           const auto parts = split(cell, 'x');
           std::uint64_t w = 0, h = 0;
           if (parts.size() != 2 || !to_size(parts[0], w) || !to_size(parts[1], h)) {
             return "sweep.sizes: '" + cell + "' is not WxH";
           }
           out.push_back({static_cast<std::size_t>(w), static_cast<std::size_t>(h)});
         }
         if (out.empty()) return "sweep.sizes: empty list";
         c.sweep_sizes = std::move(out);
         return {};
       },
       [](const RunConfig& c) {
         std::string out;
         for (const auto& s : c.sweep_sizes) {
           out += (out.empty() ? "" : ",") + std::to_string(s.width) + "x" + std::to_string(s.height);
         }
         return out;
       }},
      reals("sweep.jbars", &RunConfig::sweep_jbars),
      real("zeno.tau", &RunConfig::zeno_tau),
      real("zeno.omega0", &RunConfig::zeno_omega0),
      reals("zeno.betas", &RunConfig::zeno_betas),
      reals("zeno.gammas", &RunConfig::zeno_gammas),
      count("zeno.min_exponent", &RunConfig::zeno_min_exponent),
      count("zeno.max_exponent", &RunConfig::zeno_max_exponent),
      text("fragments.model", &RunConfig::fragments_model, {"homogeneous", "inhomogeneous"}),
      real("fragments.delta_th", &RunConfig::fragments_delta_th),
      real("bound.t_max", &RunConfig::bound_t_max),
      count("bound.points", &RunConfig::bound_points),
      text("bound.gap", &RunConfig::bound_gap, {"jg", "delta_pr"}),
      count("montecarlo.trials", &RunConfig::mc_trials),
      count("montecarlo.repetitions", &RunConfig::mc_repetitions),
      {"montecarlo.epsilon",
       [](RunConfig& c, const std::string& v) -> std::string {
         double d = 0.0;
         if (v != "simulated" && (!to_double(v, d) || !std::isfinite(d))) {
           return "montecarlo.epsilon: '" + v + "' is not simulated or a number";
         }
         c.mc_epsilon = v;
         return {};
       },
       [](const RunConfig& c) { return c.mc_epsilon; }},
  };
  return table;
}

std::string join_lines(const std::vector<std::string>& problems) {
  std::string out;
  for (const auto& p : problems) out += (out.empty() ? "" : "\n") + p;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : DomainError(join_lines(problems)), problems_(std::move(problems)) {}

const char* command_name(Command c) noexcept {
  switch (c) {
    case Command::Fidelity: return "fidelity";
    case Command::Sweep: return "sweep";
    case Command::Zeno: return "zeno";
    case Command::Fragments: return "fragments";
    case Command::Bound: return "bound";
    case Command::MonteCarlo: return "montecarlo";
    case Command::None: break;
  }
  return "none";
}

std::vector<std::pair<std::string, std::string>> config_keys() {
  const RunConfig defaults;
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : keys()) out.emplace_back(k.name, k.get(defaults));
  return out;
}

std::string set_key(RunConfig& config, const std::string& key, const std::string& value) {
  for (const auto& k : keys()) {
    if (key == k.name) return k.set(config, value);
  }
  return "unknown key '" + key + "'";
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::vector<std::string> problems;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  std::vector<std::string> seen;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(raw.substr(0, raw.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = "line " + std::to_string(line) + ": ";
    if (eq == std::string::npos) {
      problems.push_back(where + "expected 'key = value'");
      continue;
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      problems.push_back(where + "key '" + key + "' set twice");
      continue;
    }
    seen.push_back(key);
    if (auto err = set_key(base, key, value); !err.empty()) problems.push_back(where + err);
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return base;
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> p;
  if (c.command == Command::None) p.push_back("command: not set (use --command or 'command = ...')");
  if (c.width == 0 || c.height == 0) p.push_back("lattice: width and height must be positive");
  if (c.width * c.height > 20) p.push_back("lattice: at most 20 sites are supported");
  if (!(c.jbar > 0.0)) p.push_back("couplings.jbar: must be positive");
  if (!(c.sigma >= 0.0)) p.push_back("couplings.sigma: must be nonnegative");
  if (c.krylov_dimension < 2) p.push_back("evolve.krylov_dim: must be at least 2");
  if (!(c.krylov_tolerance > 0.0)) p.push_back("evolve.krylov_tol: must be positive");
  if (!(c.t_int > 0.0)) p.push_back("sensing.t_int: must be positive");
  if (!(c.t_all >= c.t_int)) p.push_back("sensing.t_all: must be at least sensing.t_int");
  if (!(c.fidelity_t_max > 0.0)) p.push_back("fidelity.t_max: must be positive");
  if (c.fidelity_points < 2) p.push_back("fidelity.points: must be at least 2");
  if (c.fidelity_seeds == 0) p.push_back("fidelity.seeds: must be positive");
  for (double j : c.fidelity_jbars) {
    if (!(j > 0.0)) p.push_back("fidelity.jbars: values must be positive");
  }
  for (double j : c.sweep_jbars) {
    if (!(j > 0.0)) p.push_back("sweep.jbars: values must be positive");
  }
  for (const auto& s : c.sweep_sizes) {
    if (s.width == 0 || s.height == 0 || s.width * s.height > 20) {
      p.push_back("sweep.sizes: " + std::to_string(s.width) + "x" + std::to_string(s.height) + " out of range");
    }
  }
  if (c.sweep_ideal && c.sweep_scheme != "hsf") p.push_back("sweep.ideal: only meaningful with sweep.scheme = hsf");
  if (!(c.zeno_tau > 0.0)) p.push_back("zeno.tau: must be positive");
  for (double b : c.zeno_betas) {
    if (!(b >= 0.0)) p.push_back("zeno.betas: values must be nonnegative");
  }
  for (double g : c.zeno_gammas) {
    if (!(g >= 0.0)) p.push_back("zeno.gammas: values must be nonnegative");
  }
  if (c.zeno_min_exponent < 1 || c.zeno_max_exponent > 40 || c.zeno_min_exponent > c.zeno_max_exponent) {
    p.push_back("zeno: need 1 <= min_exponent <= max_exponent <= 40");
  }
  if (!(c.fragments_delta_th >= 0.0)) p.push_back("fragments.delta_th: must be nonnegative (0 selects 0.1 J_g)");
  if (!(c.bound_t_max > 0.0)) p.push_back("bound.t_max: must be positive");
  if (c.bound_points == 0) p.push_back("bound.points: must be positive");
  if (c.mc_trials == 0) p.push_back("montecarlo.trials: must be positive");
  if (c.mc_repetitions == 0) p.push_back("montecarlo.repetitions: must be positive");
  return p;
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const auto& k : keys()) out += std::string(k.name) + " = " + k.get(config) + "\n";
  return out;
}

}  // namespace hsf::cli
