#pragma once

#include <array>
#include <vector>

#include "hsf/couplings.hpp"
#include "hsf/lattice.hpp"

namespace hsf {

/// Q_i: site i has exactly four neighbor slots holding two up and two down
/// spins (frame spins down). Integer count, no floating point.
bool two_up_two_down(const Lattice& lattice, BasisState s, Site site);

/// The six allowed (L, D, R, U) neighbor patterns of a two-up/two-down site.
/// Entry d of a pattern is +1 for an up neighbor and -1 for a down one.
inline constexpr std::array<std::array<int, 4>, 6> kFlipPatterns{{
    {+1, +1, -1, -1},
    {+1, -1, +1, -1},
    {+1, -1, -1, +1},
    {-1, +1, +1, -1},
    {-1, +1, -1, +1},
    {-1, -1, +1, +1},
}};

/// Kinetic constraint of the homogeneous weak-field effective model: a spin
/// may flip iff Q_i = 1.
class HomogeneousFlipRule {
 public:
  explicit HomogeneousFlipRule(const Lattice& lattice) : lattice_(&lattice) {}
  bool allows(BasisState s, Site site) const { return two_up_two_down(*lattice_, s, site); }
  const Lattice& lattice() const noexcept { return *lattice_; }

 private:
  const Lattice* lattice_;
};

/// Kinetic constraint with inhomogeneous couplings: Q_i = 1 and the energy
/// mismatch of the flip stays within delta_th. For the neighbor pattern p of
/// kFlipPatterns the mismatch is |sum_d p[d] dJ_{i,d}|; on probe sites the
/// shift field is added so that a probe inside its frozen collar has zero
/// mismatch.
class InhomogeneousFlipRule {
 public:
  /// Throws DomainError when delta_th <= 0.
  InhomogeneousFlipRule(const Lattice& lattice, const SitePartition& partition,
                        const CouplingMap& couplings, double delta_th);

  bool allows(BasisState s, Site site) const;
  /// Signed mismatch for flipping `site` in s; only meaningful when Q_i = 1.
  double mismatch(BasisState s, Site site) const;

  const Lattice& lattice() const noexcept { return *lattice_; }
  double delta_th() const noexcept { return delta_th_; }

 private:
  const Lattice* lattice_;
  const CouplingMap* couplings_;
  std::vector<double> shift_;  // effective field per site (0 for ancillas)
  double delta_th_;
};

}  // namespace hsf
