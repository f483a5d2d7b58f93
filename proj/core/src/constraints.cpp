#include "hsf/constraints.hpp"

#include <algorithm>
#include <cmath>

#include "hsf/hamiltonian.hpp"

namespace hsf {

bool two_up_two_down(const Lattice& lattice, BasisState s, Site site) {
  const SlotCounts c = count_neighbor_spins(lattice, s, site);
  return c.up == 2 && c.down == 2;
}

InhomogeneousFlipRule::InhomogeneousFlipRule(const Lattice& lattice, const SitePartition& partition,
                                             const CouplingMap& couplings, double delta_th)
    : lattice_(&lattice),
      couplings_(&couplings),
      shift_(effective_fields(lattice, partition, couplings)),
      delta_th_(delta_th) {
  if (!(delta_th > 0.0)) throw DomainError("delta_th must be positive");
}

double InhomogeneousFlipRule::mismatch(BasisState s, Site site) const {
  std::array<int, 4> pattern{};
  for (Direction d : kDirections) {
    const auto slot = lattice_->neighbor(site, d);
    pattern[index_of(d)] = (slot && !slot->is_frame() && bit_is_up(s, slot->site)) ? +1 : -1;
  }
  const auto it = std::find(kFlipPatterns.begin(), kFlipPatterns.end(), pattern);
  if (it == kFlipPatterns.end()) return 0.0;
  double m = 0.0;
  for (Direction d : kDirections) m += (*it)[index_of(d)] * couplings_->delta(site, d);
  return m + shift_[site];
}

bool InhomogeneousFlipRule::allows(BasisState s, Site site) const {
  if (!two_up_two_down(*lattice_, s, site)) return false;
  return std::abs(mismatch(s, site)) <= delta_th_;
}

}  // namespace hsf
