#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hsf/lattice.hpp"
#include "hsf/spin_operator.hpp"
#include "hsf/states.hpp"

namespace hsf {

/// An edge of the dynamics joins two different domain-wall sectors.
class ConsistencyError : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

struct Fragment {
  BasisState label;  // smallest basis state in the fragment
  std::size_t dw;
  std::size_t size;
  bool frozen;  // a single state with no off-diagonal coupling
};

struct SectorCensus {
  std::size_t dw = 0;
  std::size_t fragment_count = 0;
  std::vector<std::size_t> fragment_sizes;  // ascending
  std::size_t frozen_state_count = 0;
};

/// Connected components of the basis-state graph of a constrained operator.
struct FragmentReport {
  std::size_t dimension = 0;
  std::vector<SectorCensus> sectors;  // ascending dw, nonempty sectors only
  std::vector<Fragment> fragments;    // ordered by (dw, label)
  std::vector<BasisState> labels;     // fragment label of every basis state

  std::size_t total_fragments() const noexcept { return fragments.size(); }
  std::size_t max_fragment_size() const noexcept;
  std::size_t frozen_states() const noexcept;
  const SectorCensus* sector(std::size_t dw) const noexcept;
};

/// Flip predicate: may site i flip in basis state s.
using FlipPredicate = std::function<bool(BasisState, Site)>;

/// Census from the nonzero off-diagonal entries of h_eff. Throws
/// ConsistencyError for an edge between different dw sectors.
FragmentReport adjacency_components(const SpinOperator& h_eff, const Lattice& lattice);

/// Census with edges s -- s ^ bit(i) generated from the predicate, without
/// building the operator.
FragmentReport components_from_rule(const Lattice& lattice, const FlipPredicate& allows);

/// True iff every fragment of `fine` lies inside one fragment of `coarse` and
/// the off-diagonal support of h_fine is inside that of h_coarse.
bool refinement_check(const FragmentReport& coarse, const FragmentReport& fine, const SpinOperator& h_coarse,
                      const SpinOperator& h_fine);

/// Partition refinement on labels alone.
bool labels_refine(const FragmentReport& coarse, const FragmentReport& fine);

/// Sorted union of the fragments containing the support of psi (BFS over
/// the off-diagonal graph of h_eff).
std::vector<BasisState> fragment_of(const StateVector& psi, const SpinOperator& h_eff);

/// Norm of psi outside the listed basis states.
double leakage(const StateVector& psi, const std::vector<BasisState>& fragment);

}  // namespace hsf
