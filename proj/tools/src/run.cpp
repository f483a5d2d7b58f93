#include "hsf_cli/run.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "hsf/bound.hpp"
#include "hsf/constraints.hpp"
#include "hsf/fragments.hpp"
#include "hsf/hamiltonian.hpp"
#include "hsf/io.hpp"

namespace hsf::cli {

namespace {

using nlohmann::json;

Lattice make_lattice(const RunConfig& c, std::size_t width, std::size_t height) {
  return Lattice(width, height, c.boundary);
}

SitePartition make_partition(const RunConfig& c, const Lattice& lattice) {
  SitePartition p = [&] {
    if (c.partition == "canonical") return canonical_partition(lattice);
    const std::string file = c.partition.substr(9);
    std::ifstream in(file);
    if (!in) throw ConfigError({"partition: cannot open '" + file + "'"});
    return parse_layout(in, lattice.size());
  }();
  const auto report = validate_partition(lattice, p);
  if (!report.ok()) {
    std::vector<std::string> problems;
    for (const auto& v : report.violations) problems.push_back("partition: site " + std::to_string(v.site) + ": " + v.detail);
    throw ConfigError(std::move(problems));
  }
  return p;
}

CouplingMap make_couplings(const RunConfig& c, const Lattice& lattice, double jbar, std::uint64_t seed) {
  if (!c.couplings_file.empty()) {
    std::ifstream in(c.couplings_file);
    if (!in) throw ConfigError({"couplings.file: cannot open '" + c.couplings_file + "'"});
    return parse_couplings_csv(in, lattice, jbar);
  }
  return sample_gaussian(lattice, jbar, c.sigma * jbar, seed);
}

KrylovOptions krylov(const RunConfig& c) { return {c.krylov_dimension, c.krylov_tolerance}; }

std::vector<double> linspace(double hi, std::size_t points) {
  std::vector<double> t(points);
  for (std::size_t k = 0; k < points; ++k) {
    t[k] = points == 1 ? hi : hi * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  return t;
}

RunOutput fidelity(const RunConfig& c) {
  const Lattice l = make_lattice(c, c.width, c.height);
  const auto times = linspace(c.fidelity_t_max, c.fidelity_points);
  const auto psi = ghz_x(l.size());
  const EvolutionEngine ideal(build_h_omega(l, c.fidelity_omega), c.method, krylov(c));
  CsvTable t({"jbar", "seed", "t", "fidelity"});
  double lowest = 1.0;
  for (double jbar : c.fidelity_jbars) {
    for (std::size_t s = 0; s < c.fidelity_seeds; ++s) {
      const std::uint64_t seed = c.seed + s;
      const EvolutionEngine actual(build_h_tfim(l, make_couplings(c, l, jbar, seed), c.fidelity_omega), c.method,
                                   krylov(c));
      const auto f = dynamical_fidelity_trajectory(psi, ideal, actual, times);
      for (std::size_t k = 0; k < times.size(); ++k) {
        t.row({format_double(jbar), std::to_string(seed), format_double(times[k]), format_double(f[k])});
        lowest = std::min(lowest, f[k]);
      }
    }
  }
  json s = {{"command", "fidelity"},
            {"lattice", l.describe()},
            {"omega", c.fidelity_omega},
            {"rows", c.fidelity_jbars.size() * c.fidelity_seeds * times.size()},
            {"min_fidelity", lowest}};
  return {t.text(), s};
}

RunOutput sweep(const RunConfig& c) {
  std::vector<Scheme> schemes;
  if (c.sweep_scheme == "all") {
    schemes = {Scheme::GhzFree, Scheme::GhzInteracting, Scheme::Hsf};
  } else {
    schemes = {parse_scheme(c.sweep_scheme)};
  }
  SensitivityOptions opt;
  opt.ideal = c.sweep_ideal;
  opt.method = c.method;
  CsvTable t({"scheme", "N", "jbar", "omega", "t_int", "delta_omega"});
  json points = json::array();
  const RamseyConfig ramsey{c.omega, c.t_int, c.t_all};
  ramsey.validate();
  for (const auto& size : c.sweep_sizes) {
    const Lattice l = make_lattice(c, size.width, size.height);
    const auto p = make_partition(c, l);
    for (double jbar : c.sweep_jbars) {
      const auto couplings = make_couplings(c, l, jbar, c.seed);
      for (Scheme scheme : schemes) {
        const auto r = numeric_sensitivity(scheme, ramsey, l, p, couplings, opt);
        t.row({scheme_name(scheme), std::to_string(l.size()), format_double(jbar), format_double(c.omega),
               format_double(c.t_int), format_double(r.delta_omega)});
        const double hl = 1.0 / (static_cast<double>(r.n_sensing) * std::sqrt(c.t_int * c.t_all));
        points.push_back({{"scheme", scheme_name(scheme)},
                          {"lattice", l.describe()},
                          {"jbar", jbar},
                          {"n_sensing", r.n_sensing},
                          {"heisenberg_limit", hl},
                          {"ratio_to_limit", r.delta_omega / hl},
                          {"derivative_change", r.derivative_change}});
      }
    }
  }
  json s = {{"command", "sweep"}, {"ideal", c.sweep_ideal}, {"points", points}};
  return {t.text(), s};
}

RunOutput zeno(const RunConfig& c) {
  CsvTable t({"N", "tau", "beta", "gamma", "delta_omega"});
  std::size_t breakdowns = 0;
  double best = std::numeric_limits<double>::infinity();
  json best_point;
  for (std::size_t e = c.zeno_min_exponent; e <= c.zeno_max_exponent; ++e) {
    const std::size_t n = std::size_t{1} << e;
    for (double beta : c.zeno_betas) {
      for (double gamma : c.zeno_gammas) {
        ZenoParams z{c.zeno_tau, beta, gamma, c.zeno_omega0, c.jbar};
        double v = std::numeric_limits<double>::quiet_NaN();
        try {
          v = zeno_uncertainty(z, n, c.t_all);
        } catch (const DomainError&) {
          ++breakdowns;
        }
        t.row({std::to_string(n), format_double(c.zeno_tau), format_double(beta), format_double(gamma),
               format_double(v)});
        if (e == c.zeno_max_exponent && v < best) {
          best = v;
          best_point = {{"beta", beta}, {"gamma", gamma}, {"delta_omega", v}};
        }
      }
    }
  }
  json s = {{"command", "zeno"}, {"jbar", c.jbar}, {"series_breakdowns", breakdowns}};
  if (!best_point.is_null()) s["minimum_at_largest_n"] = best_point;
  return {t.text(), s};
}

RunOutput fragments(const RunConfig& c) {
  const Lattice l = make_lattice(c, c.width, c.height);
  FragmentReport r;
  json s = {{"command", "fragments"}, {"lattice", l.describe()}, {"model", c.fragments_model}};
  if (c.fragments_model == "homogeneous") {
    const HomogeneousFlipRule rule(l);
    r = components_from_rule(l, [&](BasisState b, Site i) { return rule.allows(b, i); });
  } else {
    const auto p = make_partition(c, l);
    const auto couplings = make_couplings(c, l, c.jbar, c.seed);
    const double th = c.fragments_delta_th > 0.0 ? c.fragments_delta_th : 0.1 * j_gap(l, p, couplings);
    const InhomogeneousFlipRule rule(l, p, couplings, th);
    r = components_from_rule(l, [&](BasisState b, Site i) { return rule.allows(b, i); });
    s["delta_th"] = th;
  }
  CsvTable t({"dw_sector", "fragment_id", "size", "is_frozen"});
  for (const auto& f : r.fragments) {
    t.row({std::to_string(f.dw), std::to_string(f.label), std::to_string(f.size), f.frozen ? "1" : "0"});
  }
  json sectors = json::array();
  for (const auto& sc : r.sectors) {
    sectors.push_back({{"dw", sc.dw}, {"fragments", sc.fragment_count}, {"frozen_states", sc.frozen_state_count}});
  }
  s["dimension"] = r.dimension;
  s["total_fragments"] = r.total_fragments();
  s["max_fragment_size"] = r.max_fragment_size();
  s["frozen_states"] = r.frozen_states();
  s["sectors"] = sectors;
  return {t.text(), s};
}

RunOutput bound(const RunConfig& c) {
  const Lattice l = make_lattice(c, c.width, c.height);
  const auto p = make_partition(c, l);
  const auto couplings = make_couplings(c, l, c.jbar, c.seed);
  BoundOptions opt;
  opt.use_delta_pr = c.bound_gap == "delta_pr";
  opt.method = c.method;
  opt.krylov = krylov(c);
  const auto grid = linspace(c.bound_t_max, c.bound_points);
  const auto r = verify_bound(l, p, couplings, c.omega, grid, opt);
  CsvTable t({"t", "epsilon", "rhs", "margin"});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    t.row({format_double(grid[k]), format_double(r.epsilon_values[k]), format_double(r.rhs_values[k]),
           format_double(r.rhs_values[k] - std::abs(r.epsilon_values[k]))});
  }
  json s = {{"command", "bound"},
            {"lattice", l.describe()},
            {"omega", c.omega},
            {"j_g", r.j_g},
            {"delta_pr", r.delta_pr},
            {"gap_used", r.gap_used},
            {"satisfied", r.satisfied},
            {"vacuous", r.vacuous},
            {"max_ratio", r.max_ratio},
            {"probe_field_preserves_subspace", r.probe_field_preserves_subspace},
            {"probe_sector_degenerate", r.probe_sector_degenerate}};
  return {t.text(), s};
}

RunOutput montecarlo(const RunConfig& c) {
  const Lattice l = make_lattice(c, c.width, c.height);
  const auto p = make_partition(c, l);
  const std::size_t np = p.probe_sites().size();
  double eps = 0.0;
  if (c.mc_epsilon == "simulated") {
    const auto couplings = make_couplings(c, l, c.jbar, c.seed);
    const auto psi = embed(ghz_x(np), p);
    const auto proj = Projector::probe_rank_one(ghz_x(np, GhzPhase::Primed), p);
    const EvolutionEngine total(build_h_total(l, p, couplings, c.omega), c.method, krylov(c));
    const EvolutionEngine eff(build_h_probe_omega(l, p, c.omega), c.method, krylov(c));
    eps = epsilon_deviation(psi, total, eff, proj, c.t_int);
  } else {
    eps = std::stod(c.mc_epsilon);
  }
  const EstimatorModel model{c.omega, c.t_int, static_cast<double>(np), eps};
  const auto r = monte_carlo_estimator(model, c.mc_repetitions, c.mc_trials, c.seed);
  CsvTable t({"trial", "omega_est"});
  for (std::size_t k = 0; k < r.estimates.size(); ++k) t.row({std::to_string(k), format_double(r.estimates[k])});
  json s = {{"command", "montecarlo"},  {"omega", c.omega},           {"epsilon", eps},
            {"n_probe", np},            {"repetitions", c.mc_repetitions}, {"trials", c.mc_trials},
            {"mean", r.mean},           {"empirical_mse", r.empirical_mse}, {"analytic_mse", r.analytic_mse}};
  return {t.text(), s};
}

}  // namespace

RunOutput execute(const RunConfig& config) {
  if (auto problems = validate(config); !problems.empty()) throw ConfigError(std::move(problems));
  RunOutput out;
  switch (config.command) {
    case Command::Fidelity: out = fidelity(config); break;
    case Command::Sweep: out = sweep(config); break;
    case Command::Zeno: out = zeno(config); break;
    case Command::Fragments: out = fragments(config); break;
    case Command::Bound: out = bound(config); break;
    case Command::MonteCarlo: out = montecarlo(config); break;
    case Command::None: throw ConfigError({"command: not set"});
  }
  out.summary["seed"] = config.seed;
  return out;
}

std::filesystem::path output_path(const RunConfig& config) {
  if (!config.output.empty()) return config.output;
  return std::string("hsf_") + command_name(config.command) + ".csv";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunOutput result;
  try {
    result = execute(config);
  } catch (const ConfigError& e) {
    for (const auto& p : e.problems()) err << "hsf: config error: " << p << '\n';
    return kConfigError;
  } catch (const InvariantError& e) {
    err << "hsf: numeric failure: " << e.what() << '\n';
    return kNumericError;
  } catch (const DomainError& e) {
    err << "hsf: invalid input: " << e.what() << '\n';
    return kConfigError;
  }
  const auto csv = output_path(config);
  auto summary = csv;
  summary.replace_extension(".json");
  try {
    write_file_atomic(csv, result.csv);
    write_file_atomic(summary, result.summary.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "hsf: cannot write output: " << e.what() << '\n';
    return kConfigError;
  }
  out << result.summary.dump(2) << '\n';
  return kOk;
}

}  // namespace hsf::cli
