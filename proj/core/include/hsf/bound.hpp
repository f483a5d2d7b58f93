#pragma once

#include <span>
#include <vector>

#include "hsf/couplings.hpp"
#include "hsf/evolve.hpp"
#include "hsf/lattice.hpp"

namespace hsf {

/// min over ancillas i of (K_i jbar - sum_j |2 dJ_ij|), K_i the slot count
/// (4 with the frame). +infinity without ancillas. Throws InvariantError when
/// the minimum is not positive.
double j_gap(const Lattice& lattice, const SitePartition& partition, const CouplingMap& couplings);

/// Smallest |energy change| of flipping one ancilla, over every ancilla and
/// every probe configuration with the other ancillas frozen. Energies are the
/// diagonal of h_int + h_shift. +infinity without ancillas.
double delta_pr_numeric(const Lattice& lattice, const SitePartition& partition, const CouplingMap& couplings);

/// 2 N omega / j_g + 2 (e^{N omega / j_g} - 1) N omega t. Throws DomainError
/// when j_g <= 0.
double error_bound_rhs(std::size_t n, double omega, double j_g, double t);

/// 4 V / gap + 2 (e^{2 V / gap} - 1) V t with V = N omega / 2.
double error_bound_rhs_operator_form(std::size_t n, double omega, double gap, double t);

struct BoundOptions {
  /// Use delta_pr_numeric instead of j_gap in the right-hand side.
  bool use_delta_pr = false;
  EvolutionMethod method = EvolutionMethod::Auto;
  KrylovOptions krylov{};
};

struct BoundReport {
  double j_g = 0.0;
  double delta_pr = 0.0;
  double gap_used = 0.0;
  std::vector<double> t_grid;
  std::vector<double> epsilon_values;
  std::vector<double> rhs_values;
  bool satisfied = false;
  /// rhs >= 1 at every grid point, so the check says nothing.
  bool vacuous = false;
  /// max |epsilon| / rhs over points with rhs > 0.
  double max_ratio = 0.0;
  /// The probe field maps the frozen subspace into itself.
  bool probe_field_preserves_subspace = false;
  /// h_int + h_shift is constant on the frozen subspace.
  bool probe_sector_degenerate = false;
};

/// epsilon(t) for |GHZ_x>^P (x) |F^A> with P_s = |GHZ'_x><GHZ'_x|^P (x) I^A,
/// compared with the bound at every grid time.
BoundReport verify_bound(const Lattice& lattice, const SitePartition& partition, const CouplingMap& couplings,
                         double omega, std::span<const double> t_grid, const BoundOptions& options = {});

}  // namespace hsf
