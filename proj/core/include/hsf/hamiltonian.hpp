#pragma once

#include <vector>

#include "hsf/constraints.hpp"
#include "hsf/couplings.hpp"
#include "hsf/lattice.hpp"
#include "hsf/spin_operator.hpp"

namespace hsf {

/// (omega/2) sum_i sigma^x_i over all sites.
SpinOperator build_h_omega(const Lattice& lattice, double omega);

/// (omega/2) sum_{i in probe} sigma^x_i.
SpinOperator build_h_probe_omega(const Lattice& lattice, const SitePartition& partition, double omega);

/// -sum_bonds J_ij z_i z_j, with frame spins fixed at z = -1.
SpinOperator build_h_int(const Lattice& lattice, const CouplingMap& couplings);

/// Diagonal Ising energy of one basis state; the operator form is build_h_int.
double ising_energy(const Lattice& lattice, const CouplingMap& couplings, BasisState s);

/// Longitudinal field a probe feels from its frozen collar:
/// sum over the four slots of -dJ for up neighbors and +dJ for down neighbors.
/// Throws DomainError if `site` is not a probe.
double effective_field(const Lattice& lattice, Site site, const SitePartition& partition,
                       const CouplingMap& couplings);

/// Effective field per site (zero on ancillas).
std::vector<double> effective_fields(const Lattice& lattice, const SitePartition& partition,
                                     const CouplingMap& couplings);

/// Shift operator sum_{i in probe} -h_i sigma^z_i with h_i equal to the
/// effective field, so that a probe flip inside its collar costs no energy.
SpinOperator build_h_shift(const Lattice& lattice, const SitePartition& partition,
                           const CouplingMap& couplings);

/// Diagonal of h_int + h_shift for one basis state.
double frozen_frame_energy(const Lattice& lattice, const CouplingMap& couplings,
                           std::span<const double> fields, BasisState s);

/// h_omega + h_int + h_shift.
SpinOperator build_h_total(const Lattice& lattice, const SitePartition& partition,
                           const CouplingMap& couplings, double omega);

/// h_omega + h_int (no shift field).
SpinOperator build_h_tfim(const Lattice& lattice, const CouplingMap& couplings, double omega);

/// Count of anti-aligned bonds, frame bonds included.
std::size_t dw_number(const Lattice& lattice, BasisState s);

/// dw_number for every basis state, as a diagonal.
std::vector<double> dw_diagonal(const Lattice& lattice);

/// Weak-field effective model with uniform jbar: Ising diagonal plus
/// (omega/2) sigma^x_i wherever Q_i = 1.
SpinOperator build_h_eff_homogeneous(const Lattice& lattice, double jbar, double omega);

/// Inhomogeneous effective model: diagonal of h_int + h_shift, and (omega/2)
/// sigma^x_i only where InhomogeneousFlipRule allows the flip.
SpinOperator build_h_eff_inhomogeneous(const Lattice& lattice, const SitePartition& partition,
                                       const CouplingMap& couplings, double omega, double delta_th);

}  // namespace hsf
