#include "hsf/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsf/rng.hpp"

namespace hsf {

CouplingMap::CouplingMap(const Lattice& lattice, double jbar, std::vector<double> deltas)
    : jbar_(jbar), deltas_(std::move(deltas)) {
  if (!(jbar > 0.0) || !std::isfinite(jbar)) {
    throw DomainError("jbar must be positive and finite (ferromagnetic convention)");
  }
  if (deltas_.size() != lattice.bonds().size()) {
    throw DomainError("coupling map has " + std::to_string(deltas_.size()) + " deltas for " +
                      std::to_string(lattice.bonds().size()) + " bonds");
  }
  if (!std::all_of(deltas_.begin(), deltas_.end(), [](double d) { return std::isfinite(d); })) {
    throw DomainError("coupling deltas must be finite");
  }
  if (k_ratio(*this) >= 1.0) {
    throw DomainError("coupling inhomogeneity violates max 2|dJ|/jbar < 1 (k = " +
                      std::to_string(k_ratio(*this)) + ")");
  }
  slot_delta_.assign(lattice.size(), {0.0, 0.0, 0.0, 0.0});
  for (Site s = 0; s < lattice.size(); ++s) {
    for (Direction d : kDirections) {
      if (auto b = lattice.bond_index(s, d)) slot_delta_[s][index_of(d)] = deltas_[*b];
    }
  }
}

CouplingMap CouplingMap::homogeneous(const Lattice& lattice, double jbar) {
  return {lattice, jbar, std::vector<double>(lattice.bonds().size(), 0.0)};
}

double CouplingMap::sum_squared_couplings() const noexcept {
  double sum = 0.0;
  for (double d : deltas_) sum += (jbar_ + d) * (jbar_ + d);
  return sum;
}

double k_ratio(const CouplingMap& couplings) noexcept {
  double k = 0.0;
  for (double d : couplings.deltas()) k = std::max(k, 2.0 * std::abs(d) / couplings.jbar());
  return k;
}

CouplingMap sample_gaussian(const Lattice& lattice, double jbar, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DomainError("sigma must be finite and nonnegative");
  }
  if (!(jbar > 0.0)) throw DomainError("jbar must be positive");
  Rng rng(seed);
  std::vector<double> deltas(lattice.bonds().size());
  for (std::size_t b = 0; b < deltas.size(); ++b) {
    int redraws = 0;
    double d = sigma * rng.normal();
    while (std::abs(d) >= 0.5 * jbar) {
      if (++redraws > kMaxRedraws) {
        throw InvariantError("sigma = " + std::to_string(sigma) + " is too large for jbar = " +
                             std::to_string(jbar) + ": bond " + std::to_string(b) +
                             " exceeded the redraw cap");
      }
      d = sigma * rng.normal();
    }
    deltas[b] = d;
  }
  return {lattice, jbar, std::move(deltas)};
}

CouplingMap couplings_from_entries(const Lattice& lattice, double jbar,
                                   std::span<const CouplingEntry> entries) {
  std::vector<double> deltas(lattice.bonds().size(), 0.0);
  std::vector<bool> seen(deltas.size(), false);
  for (const auto& e : entries) {
    std::optional<std::size_t> bond;
    if (e.i >= lattice.size()) throw DomainError("coupling entry site " + std::to_string(e.i) + " out of range");
    if (e.j == kFrameSite) {
      bond = lattice.bond_index(e.i, e.frame_direction);
      if (bond && !lattice.bonds()[*bond].is_frame()) bond.reset();
    } else {
      for (Direction d : kDirections) {
        const auto slot = lattice.neighbor(e.i, d);
        if (slot && !slot->is_frame() && slot->site == e.j) bond = lattice.bond_index(e.i, d);
      }
    }
    if (!bond) {
      throw DomainError("coupling entry (" + std::to_string(e.i) + ", " +
                        (e.j == kFrameSite ? std::string("frame:") + direction_letter(e.frame_direction)
                                           : std::to_string(e.j)) +
                        ") is not a bond of " + lattice.describe());
    }
    if (seen[*bond]) throw DomainError("duplicate coupling entry for bond " + std::to_string(*bond));
    seen[*bond] = true;
    deltas[*bond] = e.delta;
  }
  return {lattice, jbar, std::move(deltas)};
}

}  // namespace hsf
