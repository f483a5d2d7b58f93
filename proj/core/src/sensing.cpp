#include "hsf/sensing.hpp"

#include <cmath>
#include <string>

#include "hsf/hamiltonian.hpp"
#include "hsf/parallel.hpp"
#include "hsf/rng.hpp"

namespace hsf {

void RamseyConfig::validate() const {
  if (!std::isfinite(omega)) throw DomainError("omega must be finite");
  if (!(t_int > 0.0) || !std::isfinite(t_int)) throw DomainError("t_int must be positive");
  if (!(t_all >= t_int) || !std::isfinite(t_all)) throw DomainError("t_all must be at least t_int");
}

std::size_t RamseyConfig::repetitions() const {
  validate();
  return static_cast<std::size_t>(std::floor(t_all / t_int));
}

bool RamseyConfig::weak_phase(std::size_t n, double limit) const noexcept {
  return std::abs(omega) * static_cast<double>(n) * t_int <= limit;
}

void ZenoParams::validate() const {
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  if (!(jbar > 0.0)) throw DomainError("jbar must be positive");
  if (!(beta >= 0.0)) throw DomainError("beta must be nonnegative");
  if (!(gamma >= 0.0)) throw DomainError("gamma must be nonnegative");
}

double ZenoParams::t_int(std::size_t n) const {
  const double nd = static_cast<double>(n);
  return tau * std::pow(nd, -0.5 - beta) * std::pow(jbar, -1.0 - gamma);
}

double ramsey_uncertainty(double p_s, double dp_domega, std::size_t m) {
  if (dp_domega == 0.0) throw DomainError("dP/domega is zero; the uncertainty diverges");
  if (!(p_s > 0.0 && p_s < 1.0)) throw DomainError("P_s must lie strictly inside (0, 1)");
  if (m == 0) throw DomainError("repetition count must be positive");
  return std::sqrt(p_s * (1.0 - p_s)) / (std::abs(dp_domega) * std::sqrt(static_cast<double>(m)));
}

const char* scheme_name(Scheme s) noexcept {
  switch (s) {
    case Scheme::GhzFree: return "ghz_free";
    case Scheme::GhzInteracting: return "ghz_interacting";
    case Scheme::Hsf: return "hsf";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  for (Scheme s : {Scheme::GhzFree, Scheme::GhzInteracting, Scheme::Hsf}) {
    if (name == scheme_name(s)) return s;
  }
  throw DomainError("unknown scheme '" + name + "' (expected ghz_free, ghz_interacting or hsf)");
}

double finite_difference_step(double omega) noexcept { return std::max(1e-6, 1e-3 * std::abs(omega)); }

double scheme_probability(Scheme scheme, double omega, double t_int, const Lattice& lattice,
                          const SitePartition& partition, const CouplingMap& couplings,
                          const SensitivityOptions& options) {
  const std::size_t n = lattice.size();
  if (scheme == Scheme::Hsf) {
    const std::size_t np = partition.probe_sites().size();
    if (np == 0) throw DomainError("HSF scheme needs at least one probe");
    const StateVector psi = embed(ghz_x(np, GhzPhase::Plain), partition);
    const Projector proj = Projector::probe_rank_one(ghz_x(np, GhzPhase::Primed), partition);
    SpinOperator h = options.ideal ? build_h_probe_omega(lattice, partition, omega)
                                   : build_h_total(lattice, partition, couplings, omega);
    const EvolutionEngine engine(std::move(h), options.method, options.krylov);
    return proj.expectation(engine.evolve(psi, t_int));
  }
  const StateVector psi = ghz_x(n, GhzPhase::Plain);
  const Projector proj = Projector::rank_one(ghz_x(n, GhzPhase::Primed));
  SpinOperator h =
      scheme == Scheme::GhzFree ? build_h_omega(lattice, omega) : build_h_tfim(lattice, couplings, omega);
  const EvolutionEngine engine(std::move(h), options.method, options.krylov);
  return proj.expectation(engine.evolve(psi, t_int));
}

SensitivityResult numeric_sensitivity(Scheme scheme, const RamseyConfig& config, const Lattice& lattice,
                                      const SitePartition& partition, const CouplingMap& couplings,
                                      const SensitivityOptions& options) {
  SensitivityResult r;
  r.repetitions = config.repetitions();
  r.n_sensing = scheme == Scheme::Hsf ? partition.probe_sites().size() : lattice.size();
  r.step = finite_difference_step(config.omega);

  const double w = config.omega;
  const double h = r.step;
  std::vector<double> points{w, w + h, w - h, w + 0.5 * h, w - 0.5 * h};
  std::vector<double> p(points.size());
  parallel_for(points.size(), [&](std::size_t k) {
    p[k] = scheme_probability(scheme, points[k], config.t_int, lattice, partition, couplings, options);
  });
  const double d1 = (p[1] - p[2]) / (2.0 * h);
  const double d2 = (p[3] - p[4]) / h;
  r.p_s = p[0];
  r.dp_domega = (4.0 * d2 - d1) / 3.0;
  r.derivative_change = r.dp_domega == 0.0 ? 0.0 : std::abs(d2 - d1) / std::abs(r.dp_domega);
  r.delta_omega = ramsey_uncertainty(r.p_s, r.dp_domega, r.repetitions);
  return r;
}

double p_s_second_order(double omega, double t_int, std::size_t n, const CouplingMap& couplings) {
  return 0.5 + 0.5 * omega * static_cast<double>(n) * t_int -
         0.5 * t_int * t_int * couplings.sum_squared_couplings();
}

double zeno_uncertainty(const ZenoParams& p, std::size_t n, double t_all) {
  p.validate();
  if (n == 0) throw DomainError("spin count must be positive");
  if (!(t_all > 0.0)) throw DomainError("t_all must be positive");
  const double nd = static_cast<double>(n);
  const double a1 = 0.25 / p.tau * std::pow(p.jbar, 1.0 + p.gamma) * std::pow(nd, -1.5 + p.beta);
  const double a2 = 0.25 * p.omega0 * p.omega0 * p.tau * std::pow(p.jbar, -1.0 - p.gamma) *
                    std::pow(nd, -2.5 - p.beta);
  const double a3 = p.omega0 * p.tau * p.tau * std::pow(p.jbar, -2.0 * p.gamma) * std::pow(nd, -2.0 - 2.0 * p.beta);
  const double a4 = std::pow(p.tau, 3) * std::pow(p.jbar, 1.0 - 3.0 * p.gamma) * std::pow(nd, -1.5 - 3.0 * p.beta);
  const double radicand = a1 - a2 + a3 - a4;
  if (radicand < 0.0) {
    throw DomainError("series breakdown: negative radicand " + std::to_string(radicand) + " at N = " +
                      std::to_string(n) + ", tau = " + std::to_string(p.tau));
  }
  return 2.0 / std::sqrt(t_all) * std::sqrt(radicand);
}

double zeno_asymptote(const ZenoParams& p, std::size_t n, double t_all) {
  p.validate();
  return std::sqrt(p.jbar / (p.tau * t_all)) * std::pow(static_cast<double>(n), -0.75);
}

double EstimatorModel::p_effective() const noexcept { return 0.5 * (1.0 + n_probe * omega * t_int); }

double EstimatorModel::p_actual() const {
  const double p = p_effective() + epsilon;
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("model probability " + std::to_string(p) + " outside [0, 1]");
  return p;
}

double estimator_mse(const EstimatorModel& model, std::size_t m) {
  if (m == 0) throw DomainError("repetition count must be positive");
  const double p = model.p_actual();
  const double scale = model.n_probe * model.t_int;
  return 4.0 / (scale * scale) * (p * (1.0 - p) / static_cast<double>(m) + model.epsilon * model.epsilon);
}

double omega_estimate(double s_m, const EstimatorModel& model) noexcept {
  return (2.0 * s_m - 1.0) / (model.n_probe * model.t_int);
}

MonteCarloResult monte_carlo_estimator(const EstimatorModel& model, std::size_t m, std::size_t trials,
                                       std::uint64_t seed) {
  if (m == 0) throw DomainError("repetition count must be positive");
  if (trials == 0) throw DomainError("trial count must be positive");
  const double p = model.p_actual();
  MonteCarloResult r;
  r.estimates.resize(trials);
  parallel_for(trials, [&](std::size_t k) {
    Rng rng = Rng::stream(seed, k);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < m; ++i) hits += rng.bernoulli(p) ? 1 : 0;
    r.estimates[k] = omega_estimate(static_cast<double>(hits) / static_cast<double>(m), model);
  });
  double sum = 0.0;
  double sq = 0.0;
  for (double e : r.estimates) {
    sum += e;
    sq += (e - model.omega) * (e - model.omega);
  }
  r.mean = sum / static_cast<double>(trials);
  r.empirical_mse = sq / static_cast<double>(trials);
  r.analytic_mse = estimator_mse(model, m);
  return r;
}

}  // namespace hsf
