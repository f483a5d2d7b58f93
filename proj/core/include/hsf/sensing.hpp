#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hsf/couplings.hpp"
#include "hsf/evolve.hpp"
#include "hsf/lattice.hpp"

namespace hsf {

/// Ramsey protocol timing. Each repetition interrogates for t_int, so the
/// repetition count is M = floor(t_all / t_int).
struct RamseyConfig {
  double omega = 0.0;
  double t_int = 1.0;
  double t_all = 100.0;

  /// Throws DomainError unless t_int > 0, t_all >= t_int and omega is finite.
  void validate() const;
  std::size_t repetitions() const;
  /// omega * n * t_int <= limit (weak-phase regime flag).
  bool weak_phase(std::size_t n, double limit = 0.1) const noexcept;
};

/// Short-interrogation parameters: t_int = tau N^{-1/2-beta} jbar^{-1-gamma}
/// and omega = omega0 / N.
struct ZenoParams {
  double tau = 0.1;
  double beta = 0.0;
  double gamma = 0.0;
  double omega0 = 1.0;
  double jbar = 1.0;

  /// Throws DomainError unless tau > 0, jbar > 0, beta >= 0, gamma >= 0.
  void validate() const;
  double t_int(std::size_t n) const;
};

/// sqrt(p (1 - p)) / (|dp| sqrt(m)). Throws DomainError when dp == 0 or p is
/// not strictly inside (0, 1).
double ramsey_uncertainty(double p_s, double dp_domega, std::size_t m);

enum class Scheme { GhzFree, GhzInteracting, Hsf };

const char* scheme_name(Scheme s) noexcept;
/// Parses "ghz_free", "ghz_interacting" or "hsf". Throws DomainError otherwise.
Scheme parse_scheme(const std::string& name);

struct SensitivityOptions {
  /// HSF only: evolve under the probe field alone instead of the full Hamiltonian.
  bool ideal = false;
  EvolutionMethod method = EvolutionMethod::Auto;
  KrylovOptions krylov{40, 1e-13};
};

struct SensitivityResult {
  double p_s = 0.0;
  double dp_domega = 0.0;
  double delta_omega = 0.0;
  std::size_t repetitions = 0;
  std::size_t n_sensing = 0;  // spins carrying the GHZ state
  double step = 0.0;          // finite-difference step
  /// |D(step/2) - D(step)| / |dp_domega|, a convergence diagnostic.
  double derivative_change = 0.0;
};

/// Finite-difference step max(1e-6, 1e-3 |omega|).
double finite_difference_step(double omega) noexcept;

/// Simulated Ramsey measurement probability P_s(omega) for one scheme.
///   GhzFree:        |GHZ_x> on all sites, H = H_omega, P = |GHZ'_x><GHZ'_x|
///   GhzInteracting: |GHZ_x> on all sites, H = H_omega + H_int
///   Hsf:            |GHZ_x>^P (x) |F^A>, H = H_total (or the probe field when
///                   ideal), P = |GHZ'_x><GHZ'_x|^P (x) I^A
double scheme_probability(Scheme scheme, double omega, double t_int, const Lattice& lattice,
                          const SitePartition& partition, const CouplingMap& couplings,
                          const SensitivityOptions& options = {});

/// delta omega from P_s and a central-difference derivative refined by one
/// Richardson step.
SensitivityResult numeric_sensitivity(Scheme scheme, const RamseyConfig& config, const Lattice& lattice,
                                      const SitePartition& partition, const CouplingMap& couplings,
                                      const SensitivityOptions& options = {});

/// Truncated short-time series 1/2 + omega N t / 2 - t^2 sum J^2 / 2 with the
/// exact bond sum (frame bonds included).
double p_s_second_order(double omega, double t_int, std::size_t n, const CouplingMap& couplings);

/// Closed-form uncertainty of the truncated series with sum J^2 = 2 jbar^2 N:
/// (2/sqrt(t_all)) sqrt(a1 - a2 + a3 - a4) with
///   a1 = tau^{-1} jbar^{1+gamma} N^{-3/2+beta} / 4
///   a2 = omega0^2 tau jbar^{-1-gamma} N^{-5/2-beta} / 4
///   a3 = omega0 tau^2 jbar^{-2 gamma} N^{-2-2 beta}
///   a4 = tau^3 jbar^{1-3 gamma} N^{-3/2-3 beta}
/// Throws DomainError when the radicand is negative.
double zeno_uncertainty(const ZenoParams& p, std::size_t n, double t_all);

/// Large-N limit at beta = gamma = 0: sqrt(jbar / (tau t_all)) N^{-3/4}.
double zeno_asymptote(const ZenoParams& p, std::size_t n, double t_all);

/// Linearized readout model for the estimator: the effective probability is
/// (1 + n_probe omega t_int)/2 and the measured one is offset by epsilon.
struct EstimatorModel {
  double omega = 0.0;
  double t_int = 1.0;
  double n_probe = 1.0;  // alpha N
  double epsilon = 0.0;

  double p_effective() const noexcept;
  /// Throws DomainError when outside [0, 1].
  double p_actual() const;
};

/// (4 / (n_probe t_int)^2) (P (1 - P) / M + epsilon^2) with P = p_actual.
double estimator_mse(const EstimatorModel& model, std::size_t m);

/// omega_est = (2 S_M - 1) / (n_probe t_int) from the success fraction S_M.
double omega_estimate(double s_m, const EstimatorModel& model) noexcept;

struct MonteCarloResult {
  std::vector<double> estimates;
  double mean = 0.0;
  double empirical_mse = 0.0;  // mean of (estimate - omega)^2
  double analytic_mse = 0.0;
};

/// Each trial draws M Bernoulli(p_actual) outcomes from Rng::stream(seed, trial).
MonteCarloResult monte_carlo_estimator(const EstimatorModel& model, std::size_t m, std::size_t trials,
                                       std::uint64_t seed);

}  // namespace hsf
