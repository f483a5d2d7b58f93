#include "hsf/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <string_view>

namespace hsf {

namespace {

constexpr std::size_t kNoBond = std::numeric_limits<std::size_t>::max();

}  // namespace

char direction_letter(Direction d) noexcept {
  switch (d) {
    case Direction::Left: return 'L';
    case Direction::Down: return 'D';
    case Direction::Right: return 'R';
    case Direction::Up: return 'U';
  }
  return '?';
}

Lattice::Lattice(std::size_t width, std::size_t height, Boundary boundary)
    : width_(width), height_(height), boundary_(boundary) {
  if (width == 0 || height == 0) {
    throw DomainError("lattice dimensions must be positive");
  }
  slot_bond_.assign(size(), {kNoBond, kNoBond, kNoBond, kNoBond});
  slot_table_.resize(size());
  slot_count_.assign(size(), 0);
  for (Site s = 0; s < size(); ++s) {
    for (Direction d : kDirections) {
      const auto slot = neighbor(s, d);
      if (!slot) continue;
      slot_table_[s][slot_count_[s]++] = *slot;
      if (slot->is_frame()) {
        slot_bond_[s][index_of(d)] = bonds_.size();
        bonds_.push_back({s, kFrameSite, d});
      } else if (slot->site > s) {
        const std::size_t idx = bonds_.size();
        bonds_.push_back({s, slot->site, d});
        slot_bond_[s][index_of(d)] = idx;
        slot_bond_[slot->site][index_of(opposite(d))] = idx;
      }
    }
  }
}

std::size_t Lattice::hilbert_dimension() const {
  if (size() > kMaxOperatorSites) {
    throw DomainError("lattice has " + std::to_string(size()) + " sites; operators are limited to " +
                      std::to_string(kMaxOperatorSites));
  }
  return std::size_t{1} << size();
}

void Lattice::check_site(Site site) const {
  if (site >= size()) {
    throw DomainError("site " + std::to_string(site) + " out of range for " + describe());
  }
}

std::optional<NeighborSlot> Lattice::neighbor(Site site, Direction d) const {
  check_site(site);
  const auto x = static_cast<long long>(x_of(site));
  const auto y = static_cast<long long>(y_of(site));
  long long nx = x;
  long long ny = y;
  switch (d) {
    case Direction::Left: --nx; break;
    case Direction::Right: ++nx; break;
    case Direction::Down: --ny; break;
    case Direction::Up: ++ny; break;
  }
  const bool inside = nx >= 0 && ny >= 0 && nx < static_cast<long long>(width_) &&
                      ny < static_cast<long long>(height_);
  if (inside) {
    return NeighborSlot{d, site_at(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny))};
  }
  if (boundary_ == Boundary::FixedDownFrame) return NeighborSlot{d, kFrameSite};
  return std::nullopt;
}

std::vector<NeighborSlot> Lattice::neighbors(Site site) const {
  check_site(site);
  const auto view = slots(site);
  return {view.begin(), view.end()};
}

std::optional<std::size_t> Lattice::bond_index(Site site, Direction d) const {
  check_site(site);
  const std::size_t idx = slot_bond_[site][index_of(d)];
  if (idx == kNoBond) return std::nullopt;
  return idx;
}

std::string Lattice::describe() const {
  std::ostringstream os;
  os << width_ << "x" << height_ << (boundary_ == Boundary::FixedDownFrame ? " frame" : " open");
  return os.str();
}

SitePartition::SitePartition(std::vector<Role> roles, std::vector<Spin> frozen)
    : roles_(std::move(roles)), frozen_(std::move(frozen)) {
  if (roles_.size() != frozen_.size()) {
    throw DomainError("partition role and frozen-pattern lengths differ");
  }
  for (Site s = 0; s < roles_.size(); ++s) {
    if (roles_[s] == Role::Probe) {
      probes_.push_back(s);
      frozen_[s] = Spin::Down;
      if (s < 64) probe_mask_ |= site_bit(s);
    } else {
      ancillas_.push_back(s);
      if (s < 64 && frozen_[s] == Spin::Up) frozen_mask_ |= site_bit(s);
    }
  }
}

Spin SitePartition::frozen_spin(Site s) const {
  if (is_probe(s)) {
    throw DomainError("site " + std::to_string(s) + " is a probe and has no frozen state");
  }
  return frozen_[s];
}

void SitePartition::require_mask_range() const {
  if (roles_.size() > 64) {
    throw DomainError("basis-state masks need at most 64 sites, partition has " +
                      std::to_string(roles_.size()));
  }
}

double SitePartition::probe_fraction() const noexcept {
  return roles_.empty() ? 0.0 : static_cast<double>(probes_.size()) / roles_.size();
}

bool ValidationReport::flags(Site s) const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [s](const PartitionViolation& v) { return v.site == s; });
}

ValidationReport validate_partition(const Lattice& lattice, const SitePartition& partition) {
  ValidationReport report;
  if (partition.size() != lattice.size()) {
    report.violations.push_back({0, FreezingCondition::SizeMismatch,
                                 "partition has " + std::to_string(partition.size()) +
                                     " sites, lattice has " + std::to_string(lattice.size())});
    return report;
  }
  for (Site s = 0; s < lattice.size(); ++s) {
    const auto slots = lattice.neighbors(s);
    if (partition.is_probe(s)) {
      int up = 0;
      int down = 0;
      bool probe_neighbor = false;
      for (const auto& slot : slots) {
        if (slot.is_frame()) {
          ++down;
        } else if (partition.is_probe(slot.site)) {
          probe_neighbor = true;
        } else if (partition.frozen_spin(slot.site) == Spin::Up) {
          ++up;
        } else {
          ++down;
        }
      }
      if (probe_neighbor) {
        report.violations.push_back({s, FreezingCondition::ProbeNeighborNotFrozen,
                                     "probe " + std::to_string(s) + " is adjacent to another probe"});
      }
      if (up != 2 || down != 2) {
        report.violations.push_back(
            {s, FreezingCondition::ProbeCollarNotTwoUpTwoDown,
             "probe " + std::to_string(s) + " collar has " + std::to_string(up) + " up and " +
                 std::to_string(down) + " down frozen neighbors (need 2 and 2)"});
      }
    } else {
      int down = 0;
      for (const auto& slot : slots) {
        if (slot.is_frame()) {
          ++down;
        } else if (!partition.is_probe(slot.site) && partition.frozen_spin(slot.site) == Spin::Down) {
          ++down;
        }
      }
      if (down < 3) {
        report.violations.push_back({s, FreezingCondition::AncillaTooFewDownNeighbors,
                                     "ancilla " + std::to_string(s) + " has " +
                                         std::to_string(down) + " down neighbors (need >= 3)"});
      }
    }
  }
  return report;
}

namespace {

// Rows listed from y = 0 upward; 'P' probe, 'u' ancilla up, 'd' ancilla down.
struct ExplicitLayout {
  std::size_t width;
  std::size_t height;
  std::array<std::string_view, 4> rows;
};

constexpr std::array<ExplicitLayout, 4> kExplicitLayouts{{
    {3, 3, {"ddd", "uPu", "ddd", ""}},
    {3, 4, {"uPu", "ddd", "ddd", "uPu"}},
    {4, 3, {"uddu", "PddP", "uddu", ""}},
    {4, 4, {"duPu", "dddd", "dddd", "duPu"}},
}};

SitePartition partition_from_rows(const Lattice& lattice, const ExplicitLayout& layout) {
  std::vector<Role> roles(lattice.size(), Role::Ancilla);
  std::vector<Spin> frozen(lattice.size(), Spin::Down);
  for (std::size_t y = 0; y < layout.height; ++y) {
    for (std::size_t x = 0; x < layout.width; ++x) {
      const Site s = lattice.site_at(x, y);
      switch (layout.rows[y][x]) {
        case 'P': roles[s] = Role::Probe; break;
        case 'u': frozen[s] = Spin::Up; break;
        default: break;
      }
    }
  }
  return {std::move(roles), std::move(frozen)};
}

struct TilingFamily {
  std::size_t y_multiplier;
  std::array<Direction, 2> collar_up;
};

constexpr std::array<TilingFamily, 2> kTilingFamilies{{
    {4, {Direction::Left, Direction::Right}},
    {3, {Direction::Down, Direction::Up}},
}};

// Builds the partition for a probe set; returns nullopt-like empty roles when a
// collar site is unavailable, reporting the offending probe through `bad_probe`.
SitePartition layout_from_probes(const Lattice& lattice, const std::vector<Site>& probes,
                                 const TilingFamily& family, Site* bad_probe) {
  std::vector<Role> roles(lattice.size(), Role::Ancilla);
  std::vector<Spin> frozen(lattice.size(), Spin::Down);
  for (Site p : probes) roles[p] = Role::Probe;
  *bad_probe = kFrameSite;
  for (Site p : probes) {
    for (Direction d : family.collar_up) {
      const auto slot = lattice.neighbor(p, d);
      if (!slot || slot->is_frame() || roles[slot->site] == Role::Probe) {
        *bad_probe = p;
        return {std::move(roles), std::move(frozen)};
      }
      frozen[slot->site] = Spin::Up;
    }
  }
  return {std::move(roles), std::move(frozen)};
}

std::vector<Site> tile(const Lattice& lattice, const TilingFamily& family, std::size_t offset) {
  std::vector<Site> probes;
  for (Site s = 0; s < lattice.size(); ++s) {
    if ((lattice.x_of(s) + family.y_multiplier * lattice.y_of(s)) % 11 == offset) probes.push_back(s);
  }
  while (!probes.empty()) {
    Site bad = kFrameSite;
    SitePartition candidate = layout_from_probes(lattice, probes, family, &bad);
    if (bad == kFrameSite) {
      const ValidationReport report = validate_partition(lattice, candidate);
      if (report.ok()) return probes;
      const Site v = report.violations.front().site;
      if (candidate.is_probe(v)) {
        bad = v;
      } else {
        // Drop the first probe whose collar region touches the violating ancilla.
        for (Site p : probes) {
          bool touches = false;
          for (const auto& slot : lattice.neighbors(p)) {
            if (slot.is_frame()) continue;
            if (slot.site == v) touches = true;
            for (const auto& second : lattice.neighbors(slot.site)) {
              if (!second.is_frame() && second.site == v) touches = true;
            }
          }
          if (touches) {
            bad = p;
            break;
          }
        }
        if (bad == kFrameSite) return {};
      }
    }
    probes.erase(std::remove(probes.begin(), probes.end(), bad), probes.end());
  }
  return probes;
}

}  // namespace

SitePartition canonical_partition(const Lattice& lattice) {
  if (lattice.boundary() == Boundary::FixedDownFrame) {
    for (const auto& layout : kExplicitLayouts) {
      if (layout.width == lattice.width() && layout.height == lattice.height()) {
        return partition_from_rows(lattice, layout);
      }
    }
  }
  std::vector<Site> best;
  const TilingFamily* best_family = &kTilingFamilies[0];
  for (const auto& family : kTilingFamilies) {
    for (std::size_t offset = 0; offset < 11; ++offset) {
      auto probes = tile(lattice, family, offset);
      if (probes.size() > best.size()) {
        best = std::move(probes);
        best_family = &family;
      }
    }
  }
  if (best.empty()) {
    throw DomainError("lattice " + lattice.describe() +
                      " is too small: no probe can have a two-up/two-down frozen collar while every "
                      "ancilla keeps at least three down neighbors");
  }
  Site bad = kFrameSite;
  return layout_from_probes(lattice, best, *best_family, &bad);
}

SlotCounts count_neighbor_spins(const Lattice& lattice, BasisState s, Site site) {
  SlotCounts counts;
  for (const auto& slot : lattice.slots(site)) {
    if (slot.is_frame() || !bit_is_up(s, slot.site)) {
      ++counts.down;
    } else {
      ++counts.up;
    }
  }
  return counts;
}

}  // namespace hsf
