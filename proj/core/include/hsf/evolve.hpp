#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "hsf/spin_operator.hpp"
#include "hsf/states.hpp"

namespace hsf {

enum class EvolutionMethod { Auto, EigenDecomposition, Krylov };

struct KrylovOptions {
  std::size_t max_dimension = 40;
  /// Target for the accumulated error estimate over one evolve() call.
  double tolerance = 1e-10;
};

/// Auto picks EigenDecomposition when the largest connected block of H has at
/// most this many states.
inline constexpr std::size_t kDenseBlockLimit = 1024;

/// Propagator e^{-iHt} for a fixed Hermitian operator (hbar = 1).
///
/// EigenDecomposition splits H into the connected components of its
/// off-diagonal graph and diagonalizes each block once; evolve() then costs
/// one pair of dense products per block. Krylov runs a Lanczos recursion
/// with full reorthogonalization and adaptive substeps.
class EvolutionEngine {
 public:
  /// Throws DomainError when h is not Hermitian.
  explicit EvolutionEngine(SpinOperator h, EvolutionMethod method = EvolutionMethod::Auto,
                           KrylovOptions krylov = {});
  ~EvolutionEngine();
  EvolutionEngine(EvolutionEngine&&) noexcept;
  EvolutionEngine& operator=(EvolutionEngine&&) noexcept;

  EvolutionMethod method() const noexcept { return method_; }
  const SpinOperator& hamiltonian() const noexcept { return h_; }
  std::size_t largest_block() const noexcept { return largest_block_; }

  StateVector evolve(const StateVector& psi, double t) const;

  /// States at each time. Ascending times are propagated incrementally.
  std::vector<StateVector> trajectory(const StateVector& psi, std::span<const double> times) const;

  /// <psi|H|psi>.
  double energy(const StateVector& psi) const;

 private:
  struct Spectral;

  StateVector evolve_spectral(const StateVector& psi, double t) const;
  StateVector evolve_krylov(const StateVector& psi, double t) const;

  SpinOperator h_;
  EvolutionMethod method_;
  KrylovOptions krylov_;
  std::size_t largest_block_ = 0;
  std::unique_ptr<Spectral> spectral_;
};

/// |<U_ideal(t) psi0 | U_actual(t) psi0>|^2.
double dynamical_fidelity(const StateVector& psi0, const EvolutionEngine& ideal,
                          const EvolutionEngine& actual, double t);
std::vector<double> dynamical_fidelity_trajectory(const StateVector& psi0, const EvolutionEngine& ideal,
                                                  const EvolutionEngine& actual, std::span<const double> times);

/// <P>_actual - <P>_eff with the actual dynamics from h_total and the
/// effective dynamics from the probe field alone.
double epsilon_deviation(const StateVector& psi, const EvolutionEngine& total,
                         const EvolutionEngine& probe_omega, const Projector& projector, double t);
std::vector<double> epsilon_trajectory(const StateVector& psi, const EvolutionEngine& total,
                                       const EvolutionEngine& probe_omega, const Projector& projector,
                                       std::span<const double> times);

}  // namespace hsf
