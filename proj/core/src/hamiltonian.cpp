#include "hsf/hamiltonian.hpp"

#include <cmath>
#include <string>

namespace hsf {

namespace {

template <typename Allow>
SpinOperator transverse_field(std::size_t dimension, std::size_t sites, double omega, Allow allow,
                              const std::vector<double>* diagonal) {
  OperatorBuilder b(dimension);
  const double half = 0.5 * omega;
  for (BasisState s = 0; s < dimension; ++s) {
    if (diagonal) b.add_diagonal(s, (*diagonal)[s]);
    if (half == 0.0) continue;
    for (Site i = 0; i < sites; ++i) {
      if (allow(s, i)) b.add(s, s ^ site_bit(i), half);
    }
  }
  return std::move(b).build();
}

std::vector<double> diagonal_of(std::size_t dimension, auto energy) {
  std::vector<double> d(dimension);
  for (BasisState s = 0; s < dimension; ++s) d[s] = energy(s);
  return d;
}

}  // namespace

SpinOperator build_h_omega(const Lattice& lattice, double omega) {
  return transverse_field(lattice.hilbert_dimension(), lattice.size(), omega,
                          [](BasisState, Site) { return true; }, nullptr);
}

SpinOperator build_h_probe_omega(const Lattice& lattice, const SitePartition& partition, double omega) {
  if (partition.size() != lattice.size()) throw DomainError("partition does not match lattice");
  return transverse_field(lattice.hilbert_dimension(), lattice.size(), omega,
                          [&](BasisState, Site i) { return partition.is_probe(i); }, nullptr);
}

double ising_energy(const Lattice& lattice, const CouplingMap& couplings, BasisState s) {
  double e = 0.0;
  const auto& bonds = lattice.bonds();
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    const int za = z_value(s, bonds[b].a);
    const int zb = bonds[b].is_frame() ? -1 : z_value(s, bonds[b].b);
    e -= couplings.coupling(b) * za * zb;
  }
  return e;
}

SpinOperator build_h_int(const Lattice& lattice, const CouplingMap& couplings) {
  if (couplings.bond_count() != lattice.bonds().size()) throw DomainError("couplings do not match lattice");
  const auto diag = diagonal_of(lattice.hilbert_dimension(),
                                [&](BasisState s) { return ising_energy(lattice, couplings, s); });
  return SpinOperator::diagonal(diag);
}

double effective_field(const Lattice& lattice, Site site, const SitePartition& partition,
                       const CouplingMap& couplings) {
  if (site >= partition.size() || !partition.is_probe(site)) {
    throw DomainError("site " + std::to_string(site) + " is not a probe");
  }
  double h = 0.0;
  for (const auto& slot : lattice.neighbors(site)) {
    const bool up = !slot.is_frame() && !partition.is_probe(slot.site) &&
                    partition.frozen_spin(slot.site) == Spin::Up;
    const double dj = couplings.delta(site, slot.direction);
    h += up ? -dj : dj;
  }
  return h;
}

std::vector<double> effective_fields(const Lattice& lattice, const SitePartition& partition,
                                     const CouplingMap& couplings) {
  std::vector<double> h(lattice.size(), 0.0);
  for (Site p : partition.probe_sites()) h[p] = effective_field(lattice, p, partition, couplings);
  return h;
}

double frozen_frame_energy(const Lattice& lattice, const CouplingMap& couplings,
                           std::span<const double> fields, BasisState s) {
  double e = ising_energy(lattice, couplings, s);
  for (Site i = 0; i < fields.size(); ++i) {
    if (fields[i] != 0.0) e -= fields[i] * z_value(s, i);
  }
  return e;
}

SpinOperator build_h_shift(const Lattice& lattice, const SitePartition& partition,
                           const CouplingMap& couplings) {
  const auto h = effective_fields(lattice, partition, couplings);
  const auto diag = diagonal_of(lattice.hilbert_dimension(), [&](BasisState s) {
    double e = 0.0;
    for (Site p : partition.probe_sites()) e -= h[p] * z_value(s, p);
    return e;
  });
  return SpinOperator::diagonal(diag);
}

SpinOperator build_h_total(const Lattice& lattice, const SitePartition& partition,
                           const CouplingMap& couplings, double omega) {
  if (partition.size() != lattice.size()) throw DomainError("partition does not match lattice");
  const auto h = effective_fields(lattice, partition, couplings);
  const auto diag = diagonal_of(lattice.hilbert_dimension(), [&](BasisState s) {
    return frozen_frame_energy(lattice, couplings, h, s);
  });
  return transverse_field(lattice.hilbert_dimension(), lattice.size(), omega,
                          [](BasisState, Site) { return true; }, &diag);
}

SpinOperator build_h_tfim(const Lattice& lattice, const CouplingMap& couplings, double omega) {
  const auto diag = diagonal_of(lattice.hilbert_dimension(),
                                [&](BasisState s) { return ising_energy(lattice, couplings, s); });
  return transverse_field(lattice.hilbert_dimension(), lattice.size(), omega,
                          [](BasisState, Site) { return true; }, &diag);
}

std::size_t dw_number(const Lattice& lattice, BasisState s) {
  std::size_t walls = 0;
  for (const auto& bond : lattice.bonds()) {
    const bool a_up = bit_is_up(s, bond.a);
    const bool b_up = bond.is_frame() ? false : bit_is_up(s, bond.b);
    if (a_up != b_up) ++walls;
  }
  return walls;
}

std::vector<double> dw_diagonal(const Lattice& lattice) {
  return diagonal_of(lattice.hilbert_dimension(),
                     [&](BasisState s) { return static_cast<double>(dw_number(lattice, s)); });
}

SpinOperator build_h_eff_homogeneous(const Lattice& lattice, double jbar, double omega) {
  const CouplingMap uniform = CouplingMap::homogeneous(lattice, jbar);
  const auto diag = diagonal_of(lattice.hilbert_dimension(),
                                [&](BasisState s) { return ising_energy(lattice, uniform, s); });
  const HomogeneousFlipRule rule(lattice);
  return transverse_field(lattice.hilbert_dimension(), lattice.size(), omega,
                          [&](BasisState s, Site i) { return rule.allows(s, i); }, &diag);
}

SpinOperator build_h_eff_inhomogeneous(const Lattice& lattice, const SitePartition& partition,
                                       const CouplingMap& couplings, double omega, double delta_th) {
  const InhomogeneousFlipRule rule(lattice, partition, couplings, delta_th);
  const auto h = effective_fields(lattice, partition, couplings);
  const auto diag = diagonal_of(lattice.hilbert_dimension(), [&](BasisState s) {
    return frozen_frame_energy(lattice, couplings, h, s);
  });
  return transverse_field(lattice.hilbert_dimension(), lattice.size(), omega,
                          [&](BasisState s, Site i) { return rule.allows(s, i); }, &diag);
}

}  // namespace hsf
