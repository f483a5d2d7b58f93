#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hsf/lattice.hpp"

namespace hsf {

/// Ising bond strengths J_ij = jbar + delta_ij for every bond of a lattice,
/// frame bonds included. Deltas are stored per bond in Lattice::bonds() order,
/// so symmetry delta_ij = delta_ji holds by construction.
class CouplingMap {
 public:
  /// Throws DomainError unless jbar > 0, the delta count matches the bond
  /// count, and max 2|delta| / jbar < 1.
  CouplingMap(const Lattice& lattice, double jbar, std::vector<double> deltas);

  static CouplingMap homogeneous(const Lattice& lattice, double jbar);

  double jbar() const noexcept { return jbar_; }
  std::span<const double> deltas() const noexcept { return deltas_; }
  std::size_t bond_count() const noexcept { return deltas_.size(); }

  double delta(std::size_t bond) const { return deltas_.at(bond); }
  double coupling(std::size_t bond) const { return jbar_ + delta(bond); }

  /// Delta on the bond leaving `site` in direction d; 0 when there is no bond.
  double delta(Site site, Direction d) const { return slot_delta_.at(site)[index_of(d)]; }

  /// Sum over bonds of J^2, frame bonds included.
  double sum_squared_couplings() const noexcept;

 private:
  double jbar_;
  std::vector<double> deltas_;
  std::vector<std::array<double, 4>> slot_delta_;
};

/// max over bonds of 2|delta| / jbar.
double k_ratio(const CouplingMap& couplings) noexcept;

/// Gaussian inhomogeneity: each delta drawn i.i.d. N(0, sigma^2) from Rng(seed)
/// in bond order, redrawing any |delta| >= jbar/2. Throws InvariantError when a
/// bond needs more than kMaxRedraws redraws.
CouplingMap sample_gaussian(const Lattice& lattice, double jbar, double sigma, std::uint64_t seed);

inline constexpr int kMaxRedraws = 1000;

/// One explicit bond entry: site i, neighbor j (a site index or kFrameSite
/// with `frame_direction` naming which frame bond of i), and delta.
struct CouplingEntry {
  Site i;
  Site j;
  Direction frame_direction = Direction::Left;
  double delta;
};

/// Map from explicit entries; bonds not listed get delta = 0. Throws
/// DomainError for non-bonds or duplicates.
CouplingMap couplings_from_entries(const Lattice& lattice, double jbar,
                                   std::span<const CouplingEntry> entries);

}  // namespace hsf
