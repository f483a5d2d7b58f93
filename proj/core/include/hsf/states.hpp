#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hsf/lattice.hpp"
#include "hsf/types.hpp"

namespace hsf {

/// Complex amplitudes over the 2^n computational basis (bit i = site i, 1 = up).
class StateVector {
 public:
  StateVector() = default;
  /// Throws DomainError unless amplitudes.size() == 2^n_sites.
  StateVector(std::size_t n_sites, std::vector<cplx> amplitudes);

  static StateVector basis(std::size_t n_sites, BasisState s);

  std::size_t n_sites() const noexcept { return n_sites_; }
  std::size_t dimension() const noexcept { return amps_.size(); }

  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  cplx operator[](BasisState s) const { return amps_[s]; }
  cplx& operator[](BasisState s) { return amps_[s]; }

  double norm() const noexcept;
  bool is_normalized(double tolerance = 1e-12) const noexcept;
  /// <this|other>.
  cplx inner(const StateVector& other) const;
  /// Rescales to unit norm and applies the global phase convention.
  StateVector canonical() const;

  Eigen::VectorXcd to_eigen() const;

 private:
  std::size_t n_sites_ = 0;
  std::vector<cplx> amps_;
};

/// Multiplies by a global phase so that the first nonzero amplitude (basis
/// order) is real and nonnegative.
void apply_phase_convention(StateVector& psi);

enum class GhzPhase { Plain, Primed };

/// (|+>^n + c |->^n)/sqrt(2) with c = 1 (Plain) or c = i (Primed), where
/// |-> = (|up> - |down>)/sqrt(2). Phase convention applied.
StateVector ghz_x(std::size_t n, GhzPhase phase = GhzPhase::Plain);

/// (|down...down> + |up...up>)/sqrt(2).
StateVector ghz_z(std::size_t n);

/// Packs the bits of `s` at `sites` into a dense index (bit k <- sites[k]).
BasisState gather_bits(BasisState s, std::span<const Site> sites) noexcept;
/// Inverse of gather_bits.
BasisState scatter_bits(BasisState packed, std::span<const Site> sites) noexcept;

/// Frozen ancilla configuration as a basis state on the ancilla factor
/// (ancillas in ascending site order).
StateVector frozen_state(const SitePartition& partition);

/// Frozen configuration as a full-lattice basis state (probes down).
BasisState frozen_basis_state(const SitePartition& partition);

/// |probe> (x) |F^A>. The probe factor's bit k addresses probe_sites()[k].
StateVector embed(const StateVector& probe_state, const SitePartition& partition);

/// <sigma^z_site>.
double expectation_sigma_z(const StateVector& psi, Site site);

/// Applies a 2x2 matrix to one site, ordered (up, down):
/// m = {m_uu, m_ud, m_du, m_dd}.
void apply_single_site(StateVector& psi, Site site, const std::array<cplx, 4>& m);

void apply_sigma_x(StateVector& psi, Site site);

/// Parity readout rotation on `sites`: Hadamard then exp(-i theta sigma^z / 2)
/// on every listed site, theta = (n - 1) pi / (2 n) with n = sites.size().
/// After it, the parity projector (1 + prod sigma^y)/2 measures the same
/// probability as |GHZ'_x><GHZ'_x| on states in span{|+>^n, |->^n}.
void apply_readout_rotation(StateVector& psi, std::span<const Site> sites);
double readout_rotation_angle(std::size_t n);

/// Projective measurement operator in one of four factored forms.
class Projector {
 public:
  enum class Kind { RankOne, FrozenSubspace, ProbeRankOne, Parity };

  /// |phi><phi| on the full space; phi is normalized first.
  static Projector rank_one(const StateVector& phi);
  /// I^P (x) |F><F|: keeps basis states whose ancilla bits match the frozen pattern.
  static Projector frozen_subspace(const SitePartition& partition);
  /// |phi><phi|_P (x) I^A, phi on the probe factor.
  static Projector probe_rank_one(const StateVector& phi, const SitePartition& partition);
  /// (1 + prod_{i in sites} sigma^y_i)/2 on an n_sites register.
  static Projector parity(std::size_t n_sites, std::span<const Site> sites);

  Kind kind() const noexcept { return kind_; }
  std::size_t n_sites() const noexcept { return n_sites_; }

  StateVector apply(const StateVector& psi) const;
  /// <psi|P|psi>, real.
  double expectation(const StateVector& psi) const;
  Eigen::MatrixXcd to_dense() const;

 private:
  Projector() = default;
  void check(const StateVector& psi) const;

  Kind kind_ = Kind::RankOne;
  std::size_t n_sites_ = 0;
  StateVector phi_;
  std::vector<Site> sites_;  // probe sites or parity sites
  BasisState mask_ = 0;      // bits of sites_
  BasisState frozen_ = 0;    // frozen ancilla bits (FrozenSubspace)
};

/// Projector on all n sites of a register.
Projector parity_projector(std::size_t n);

/// <psi|P|psi>, checked to lie in [0, 1] within 1e-12 and clamped.
double measurement_probability(const StateVector& psi, const Projector& projector);

}  // namespace hsf
