#include "hsf/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace hsf {

namespace {

std::size_t dimension_for(std::size_t n) {
  if (n > kMaxOperatorSites) {
    throw DomainError("state on " + std::to_string(n) + " sites exceeds the " +
                      std::to_string(kMaxOperatorSites) + "-site limit");
  }
  return std::size_t{1} << n;
}

BasisState mask_of(std::span<const Site> sites) {
  BasisState m = 0;
  for (Site s : sites) m |= site_bit(s);
  return m;
}

// i^k for integer k.
cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

StateVector::StateVector(std::size_t n_sites, std::vector<cplx> amplitudes)
    : n_sites_(n_sites), amps_(std::move(amplitudes)) {
  if (amps_.size() != dimension_for(n_sites)) {
    throw DomainError("amplitude count " + std::to_string(amps_.size()) + " is not 2^" +
                      std::to_string(n_sites));
  }
}

StateVector StateVector::basis(std::size_t n_sites, BasisState s) {
  std::vector<cplx> a(dimension_for(n_sites));
  if (s >= a.size()) throw DomainError("basis state out of range");
  a[s] = 1.0;
  return {n_sites, std::move(a)};
}

double StateVector::norm() const noexcept {
  double sum = 0.0;
  for (const cplx& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

bool StateVector::is_normalized(double tolerance) const noexcept {
  return std::abs(norm() - 1.0) <= tolerance;
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.dimension() != dimension()) throw DomainError("inner product of states with different dimension");
  cplx sum{0.0, 0.0};
  for (std::size_t k = 0; k < amps_.size(); ++k) sum += std::conj(amps_[k]) * other.amps_[k];
  return sum;
}

StateVector StateVector::canonical() const {
  StateVector out = *this;
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  for (cplx& a : out.amps_) a /= n;
  apply_phase_convention(out);
  return out;
}

Eigen::VectorXcd StateVector::to_eigen() const {
  return Eigen::Map<const Eigen::VectorXcd>(amps_.data(), static_cast<Eigen::Index>(amps_.size()));
}

void apply_phase_convention(StateVector& psi) {
  auto amps = psi.amplitudes();
  const auto it = std::find_if(amps.begin(), amps.end(), [](cplx a) { return a != cplx{0.0, 0.0}; });
  if (it == amps.end()) return;
  const double magnitude = std::abs(*it);
  const cplx phase = std::conj(*it) / magnitude;
  for (cplx& b : amps) b *= phase;
  *it = magnitude;
}

StateVector ghz_x(std::size_t n, GhzPhase phase) {
  if (n == 0) throw DomainError("GHZ state needs at least one site");
  const std::size_t dim = dimension_for(n);
  const cplx c = phase == GhzPhase::Plain ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
  const double scale = 1.0 / (std::sqrt(2.0) * std::pow(2.0, 0.5 * static_cast<double>(n)));
  std::vector<cplx> a(dim);
  for (BasisState s = 0; s < dim; ++s) {
    const auto downs = n - static_cast<std::size_t>(std::popcount(s));
    const double minus = (downs % 2 == 0) ? 1.0 : -1.0;
    a[s] = (1.0 + c * minus) * scale;
  }
  StateVector psi(n, std::move(a));
  apply_phase_convention(psi);
  return psi;
}

StateVector ghz_z(std::size_t n) {
  if (n == 0) throw DomainError("GHZ state needs at least one site");
  std::vector<cplx> a(dimension_for(n));
  a.front() = a.back() = 1.0 / std::sqrt(2.0);
  return {n, std::move(a)};
}

BasisState gather_bits(BasisState s, std::span<const Site> sites) noexcept {
  BasisState out = 0;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (bit_is_up(s, sites[k])) out |= site_bit(k);
  }
  return out;
}

BasisState scatter_bits(BasisState packed, std::span<const Site> sites) noexcept {
  BasisState out = 0;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (bit_is_up(packed, k)) out |= site_bit(sites[k]);
  }
  return out;
}

StateVector frozen_state(const SitePartition& partition) {
  const auto& anc = partition.ancilla_sites();
  return StateVector::basis(anc.size(), gather_bits(frozen_basis_state(partition), anc));
}

BasisState frozen_basis_state(const SitePartition& partition) { return partition.frozen_mask(); }

StateVector embed(const StateVector& probe_state, const SitePartition& partition) {
  const auto& probes = partition.probe_sites();
  if (probe_state.n_sites() != probes.size()) {
    throw DomainError("probe state has " + std::to_string(probe_state.n_sites()) + " sites, partition has " +
                      std::to_string(probes.size()) + " probes");
  }
  const BasisState frozen = frozen_basis_state(partition);
  std::vector<cplx> a(dimension_for(partition.size()));
  for (BasisState p = 0; p < probe_state.dimension(); ++p) a[frozen | scatter_bits(p, probes)] = probe_state[p];
  return {partition.size(), std::move(a)};
}

double expectation_sigma_z(const StateVector& psi, Site site) {
  if (site >= psi.n_sites()) throw DomainError("site out of range");
  double e = 0.0;
  for (BasisState s = 0; s < psi.dimension(); ++s) e += z_value(s, site) * std::norm(psi[s]);
  return e;
}

void apply_single_site(StateVector& psi, Site site, const std::array<cplx, 4>& m) {
  if (site >= psi.n_sites()) throw DomainError("site out of range");
  const BasisState bit = site_bit(site);
  for (BasisState s = 0; s < psi.dimension(); ++s) {
    if (s & bit) continue;
    const cplx down = psi[s];
    const cplx up = psi[s | bit];
    psi[s | bit] = m[0] * up + m[1] * down;
    psi[s] = m[2] * up + m[3] * down;
  }
}

void apply_sigma_x(StateVector& psi, Site site) { apply_single_site(psi, site, {0.0, 1.0, 1.0, 0.0}); }

double readout_rotation_angle(std::size_t n) {
  if (n == 0) throw DomainError("readout rotation needs at least one site");
  const double nd = static_cast<double>(n);
  return (nd - 1.0) * std::numbers::pi / (2.0 * nd);
}

void apply_readout_rotation(StateVector& psi, std::span<const Site> sites) {
  const double theta = readout_rotation_angle(sites.size());
  const double h = 1.0 / std::sqrt(2.0);
  const cplx up_phase = std::polar(1.0, -0.5 * theta);
  const cplx down_phase = std::polar(1.0, 0.5 * theta);
  const std::array<cplx, 4> gate{up_phase * h, up_phase * h, down_phase * h, -down_phase * h};
  for (Site s : sites) apply_single_site(psi, s, gate);
}

Projector Projector::rank_one(const StateVector& phi) {
  Projector p;
  p.kind_ = Kind::RankOne;
  p.n_sites_ = phi.n_sites();
  p.phi_ = phi.canonical();
  return p;
}

Projector Projector::frozen_subspace(const SitePartition& partition) {
  Projector p;
  p.kind_ = Kind::FrozenSubspace;
  p.n_sites_ = partition.size();
  p.sites_ = partition.probe_sites();
  p.mask_ = partition.probe_mask();
  p.frozen_ = partition.frozen_mask();
  return p;
}

Projector Projector::probe_rank_one(const StateVector& phi, const SitePartition& partition) {
  if (phi.n_sites() != partition.probe_sites().size()) {
    throw DomainError("probe projector state does not match the probe count");
  }
  Projector p;
  p.kind_ = Kind::ProbeRankOne;
  p.n_sites_ = partition.size();
  p.phi_ = phi.canonical();
  p.sites_ = partition.probe_sites();
  p.mask_ = partition.probe_mask();
  return p;
}

Projector Projector::parity(std::size_t n_sites, std::span<const Site> sites) {
  for (Site s : sites) {
    if (s >= n_sites) throw DomainError("parity site out of range");
  }
  Projector p;
  p.kind_ = Kind::Parity;
  p.n_sites_ = n_sites;
  p.sites_.assign(sites.begin(), sites.end());
  p.mask_ = mask_of(sites);
  return p;
}

Projector parity_projector(std::size_t n) {
  std::vector<Site> all(n);
  for (Site i = 0; i < n; ++i) all[i] = i;
  return Projector::parity(n, all);
}

void Projector::check(const StateVector& psi) const {
  if (psi.n_sites() != n_sites_) {
    throw DomainError("projector on " + std::to_string(n_sites_) + " sites applied to a " +
                      std::to_string(psi.n_sites()) + "-site state");
  }
}

StateVector Projector::apply(const StateVector& psi) const {
  check(psi);
  std::vector<cplx> out(psi.dimension());
  switch (kind_) {
    case Kind::RankOne: {
      const cplx overlap = phi_.inner(psi);
      for (BasisState s = 0; s < out.size(); ++s) out[s] = overlap * phi_[s];
      break;
    }
    case Kind::FrozenSubspace:
      for (BasisState s = 0; s < out.size(); ++s) {
        if ((s & ~mask_) == frozen_) out[s] = psi[s];
      }
      break;
    case Kind::ProbeRankOne: {
      std::vector<BasisState> offsets(phi_.dimension());
      for (BasisState p = 0; p < offsets.size(); ++p) offsets[p] = scatter_bits(p, sites_);
      for (BasisState a = 0; a < out.size(); ++a) {
        if (a & mask_) continue;
        cplx overlap{0.0, 0.0};
        for (BasisState p = 0; p < offsets.size(); ++p) overlap += std::conj(phi_[p]) * psi[a | offsets[p]];
        if (overlap == cplx{0.0, 0.0}) continue;
        for (BasisState p = 0; p < offsets.size(); ++p) out[a | offsets[p]] = overlap * phi_[p];
      }
      break;
    }
    case Kind::Parity: {
      const int n = static_cast<int>(sites_.size());
      for (BasisState s = 0; s < out.size(); ++s) {
        const int ups = std::popcount(s & mask_);
        const cplx y = i_power(ups - (n - ups)) * psi[s];
        out[s] += 0.5 * psi[s];
        out[s ^ mask_] += 0.5 * y;
      }
      break;
    }
  }
  return {psi.n_sites(), std::move(out)};
}

double Projector::expectation(const StateVector& psi) const {
  check(psi);
  switch (kind_) {
    case Kind::RankOne:
      return std::norm(phi_.inner(psi));
    case Kind::FrozenSubspace: {
      double sum = 0.0;
      for (BasisState s = 0; s < psi.dimension(); ++s) {
        if ((s & ~mask_) == frozen_) sum += std::norm(psi[s]);
      }
      return sum;
    }
    default:
      return psi.inner(apply(psi)).real();
  }
}

Eigen::MatrixXcd Projector::to_dense() const {
  const std::size_t dim = dimension_for(n_sites_);
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (BasisState c = 0; c < dim; ++c) {
    const StateVector col = apply(StateVector::basis(n_sites_, c));
    for (BasisState r = 0; r < dim; ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
  }
  return m;
}

double measurement_probability(const StateVector& psi, const Projector& projector) {
  constexpr double kTolerance = 1e-12;
  const double p = projector.expectation(psi);
  if (!(p >= -kTolerance && p <= 1.0 + kTolerance)) {
    throw InvariantError("measurement probability " + std::to_string(p) + " outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace hsf
