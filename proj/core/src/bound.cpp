#include "hsf/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hsf/hamiltonian.hpp"
#include "hsf/states.hpp"

namespace hsf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Floor for comparing simulated probabilities with the bound.
constexpr double kRoundoff = 1e-12;

// |E(s with j flipped) - E(s)| for the Ising diagonal; shift fields live on
// probes and do not change.
double flip_cost(const Lattice& lattice, const CouplingMap& couplings, BasisState s, Site j) {
  double field = 0.0;
  for (const auto& slot : lattice.slots(j)) {
    const int zk = slot.is_frame() ? -1 : z_value(s, slot.site);
    field += (couplings.jbar() + couplings.delta(j, slot.direction)) * zk;
  }
  return std::abs(2.0 * z_value(s, j) * field);
}

}  // namespace

double j_gap(const Lattice& lattice, const SitePartition& partition, const CouplingMap& couplings) {
  if (partition.size() != lattice.size()) throw DomainError("partition does not match lattice");
  double best = kInf;
  for (Site i : partition.ancilla_sites()) {
    double g = static_cast<double>(lattice.slots(i).size()) * couplings.jbar();
    for (const auto& slot : lattice.slots(i)) g -= std::abs(2.0 * couplings.delta(i, slot.direction));
    best = std::min(best, g);
  }
  if (!(best > 0.0)) throw InvariantError("J_g = " + std::to_string(best) + " is not positive");
  return best;
}

double delta_pr_numeric(const Lattice& lattice, const SitePartition& partition, const CouplingMap& couplings) {
  if (partition.size() != lattice.size()) throw DomainError("partition does not match lattice");
  const auto& probes = partition.probe_sites();
  if (probes.size() >= 63) throw DomainError("too many probes to enumerate");
  const BasisState frozen = frozen_basis_state(partition);
  double best = kInf;
  for (BasisState p = 0; p < (BasisState{1} << probes.size()); ++p) {
    const BasisState s = frozen | scatter_bits(p, probes);
    for (Site j : partition.ancilla_sites()) best = std::min(best, flip_cost(lattice, couplings, s, j));
  }
  return best;
}

double error_bound_rhs(std::size_t n, double omega, double j_g, double t) {
  if (!(j_g > 0.0)) throw DomainError("gap must be positive");
  const double nw = static_cast<double>(n) * omega;
  return 2.0 * nw / j_g + 2.0 * std::expm1(nw / j_g) * nw * t;
}

double error_bound_rhs_operator_form(std::size_t n, double omega, double gap, double t) {
  if (!(gap > 0.0)) throw DomainError("gap must be positive");
  const double v = 0.5 * static_cast<double>(n) * omega;
  return 4.0 * v / gap + 2.0 * std::expm1(2.0 * v / gap) * v * t;
}

BoundReport verify_bound(const Lattice& lattice, const SitePartition& partition, const CouplingMap& couplings,
                         double omega, std::span<const double> t_grid, const BoundOptions& options) {
  const auto& probes = partition.probe_sites();
  if (probes.empty()) throw DomainError("bound check needs at least one probe");
  BoundReport r;
  r.j_g = j_gap(lattice, partition, couplings);
  r.delta_pr = delta_pr_numeric(lattice, partition, couplings);
  r.gap_used = options.use_delta_pr ? r.delta_pr : r.j_g;
  r.t_grid.assign(t_grid.begin(), t_grid.end());

  const SpinOperator probe_field = build_h_probe_omega(lattice, partition, omega);
  const BasisState frozen = frozen_basis_state(partition);
  const BasisState probe_mask = partition.probe_mask();
  auto in_subspace = [&](BasisState s) { return (s & ~probe_mask) == frozen; };

  r.probe_field_preserves_subspace = true;
  for (const auto& e : probe_field.triplets()) {
    if (e.value != cplx{0.0, 0.0} && in_subspace(e.col) != in_subspace(e.row)) {
      r.probe_field_preserves_subspace = false;
      break;
    }
  }
  const auto fields = effective_fields(lattice, partition, couplings);
  const double e0 = frozen_frame_energy(lattice, couplings, fields, frozen);
  r.probe_sector_degenerate = true;
  for (BasisState p = 0; p < (BasisState{1} << probes.size()); ++p) {
    const double e = frozen_frame_energy(lattice, couplings, fields, frozen | scatter_bits(p, probes));
    if (std::abs(e - e0) > 1e-12 * std::max(1.0, std::abs(e0))) {
      r.probe_sector_degenerate = false;
      break;
    }
  }

  const StateVector psi = embed(ghz_x(probes.size(), GhzPhase::Plain), partition);
  const Projector proj = Projector::probe_rank_one(ghz_x(probes.size(), GhzPhase::Primed), partition);
  const EvolutionEngine total(build_h_total(lattice, partition, couplings, omega), options.method, options.krylov);
  const EvolutionEngine effective(probe_field, options.method, options.krylov);
  r.epsilon_values = epsilon_trajectory(psi, total, effective, proj, t_grid);

  r.satisfied = true;
  r.vacuous = true;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double rhs = error_bound_rhs(lattice.size(), omega, r.gap_used, t_grid[k]);
    r.rhs_values.push_back(rhs);
    const double eps = std::abs(r.epsilon_values[k]);
    if (eps > rhs + kRoundoff) r.satisfied = false;
    if (rhs < 1.0) r.vacuous = false;
    if (rhs > 0.0) r.max_ratio = std::max(r.max_ratio, eps / rhs);
  }
  return r;
}

}  // namespace hsf
