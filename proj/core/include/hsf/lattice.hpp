#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsf/types.hpp"

namespace hsf {

enum class Boundary { FixedDownFrame, Open };

/// Neighbor directions in the order used by every per-slot table: L, D, R, U.
/// Left/right change x by -1/+1, down/up change y by -1/+1.
enum class Direction : std::uint8_t { Left = 0, Down = 1, Right = 2, Up = 3 };

inline constexpr std::array<Direction, 4> kDirections{Direction::Left, Direction::Down,
                                                      Direction::Right, Direction::Up};

constexpr std::size_t index_of(Direction d) noexcept { return static_cast<std::size_t>(d); }
constexpr Direction opposite(Direction d) noexcept {
  return static_cast<Direction>((static_cast<std::uint8_t>(d) + 2) % 4);
}
char direction_letter(Direction d) noexcept;

/// Sentinel site index standing for a permanently-down frame spin.
inline constexpr Site kFrameSite = std::numeric_limits<Site>::max();

struct NeighborSlot {
  Direction direction;
  Site site;  // kFrameSite for a frame spin
  bool is_frame() const noexcept { return site == kFrameSite; }
  friend bool operator==(const NeighborSlot&, const NeighborSlot&) = default;
};

/// A nearest-neighbor bond. Dynamical bonds have a < b; frame bonds have
/// b == kFrameSite and record the direction from a toward the frame.
struct Bond {
  Site a;
  Site b;
  Direction direction;
  bool is_frame() const noexcept { return b == kFrameSite; }
};

/// Square lattice with row-major site indexing. Frame spins are virtual
/// neighbors, never degrees of freedom.
class Lattice {
 public:
  Lattice(std::size_t width, std::size_t height, Boundary boundary = Boundary::FixedDownFrame);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return width_ * height_; }
  Boundary boundary() const noexcept { return boundary_; }

  /// 2^N; throws if N exceeds kMaxOperatorSites.
  std::size_t hilbert_dimension() const;

  Site site_at(std::size_t x, std::size_t y) const noexcept { return y * width_ + x; }
  std::size_t x_of(Site s) const noexcept { return s % width_; }
  std::size_t y_of(Site s) const noexcept { return s / width_; }

  /// Neighbor slots in L, D, R, U order. Four per site with a frame; under
  /// Open boundaries the slots that would leave the lattice are omitted.
  std::vector<NeighborSlot> neighbors(Site site) const;

  /// Same slots as neighbors() without allocating; no range check.
  std::span<const NeighborSlot> slots(Site site) const noexcept {
    return {slot_table_[site].data(), slot_count_[site]};
  }

  /// Neighbor in a single direction, or nullopt past an open edge.
  std::optional<NeighborSlot> neighbor(Site site, Direction d) const;

  /// All bonds in a fixed order: for each site ascending, directions L, D, R, U,
  /// keeping dynamical bonds toward higher indices and every frame bond.
  const std::vector<Bond>& bonds() const noexcept { return bonds_; }

  /// Index into bonds() of the bond leaving `site` in direction d.
  std::optional<std::size_t> bond_index(Site site, Direction d) const;

  std::string describe() const;

  friend bool operator==(const Lattice& a, const Lattice& b) noexcept {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.boundary_ == b.boundary_;
  }

 private:
  void check_site(Site site) const;

  std::size_t width_;
  std::size_t height_;
  Boundary boundary_;
  std::vector<Bond> bonds_;
  // Per site and direction, index into bonds_ (npos when absent).
  std::vector<std::array<std::size_t, 4>> slot_bond_;
  std::vector<std::array<NeighborSlot, 4>> slot_table_;
  std::vector<std::uint8_t> slot_count_;
};

enum class Role : std::uint8_t { Probe, Ancilla };

/// Probe/ancilla split of the lattice together with the frozen z-pattern of
/// the ancillas. The frozen spin of a probe site is unused and stored Down.
class SitePartition {
 public:
  SitePartition(std::vector<Role> roles, std::vector<Spin> frozen);

  std::size_t size() const noexcept { return roles_.size(); }
  Role role(Site s) const { return roles_.at(s); }
  bool is_probe(Site s) const { return role(s) == Role::Probe; }
  Spin frozen_spin(Site s) const;

  const std::vector<Site>& probe_sites() const noexcept { return probes_; }
  const std::vector<Site>& ancilla_sites() const noexcept { return ancillas_; }

  /// alpha = |probes| / N.
  double probe_fraction() const noexcept;

  /// Bits of the ancillas frozen up. Requires at most 64 sites.
  BasisState frozen_mask() const {
    require_mask_range();
    return frozen_mask_;
  }
  /// Bits of all probe sites. Requires at most 64 sites.
  BasisState probe_mask() const {
    require_mask_range();
    return probe_mask_;
  }

  friend bool operator==(const SitePartition&, const SitePartition&) = default;

 private:
  void require_mask_range() const;

  std::vector<Role> roles_;
  std::vector<Spin> frozen_;
  std::vector<Site> probes_;
  std::vector<Site> ancillas_;
  BasisState frozen_mask_ = 0;
  BasisState probe_mask_ = 0;
};

enum class FreezingCondition {
  ProbeNeighborNotFrozen,   // a probe neighbor slot is another probe
  ProbeCollarNotTwoUpTwoDown,
  AncillaTooFewDownNeighbors,
  SizeMismatch,
};

struct PartitionViolation {
  Site site;
  FreezingCondition condition;
  std::string detail;
};

struct ValidationReport {
  std::vector<PartitionViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool flags(Site s) const noexcept;
};

ValidationReport validate_partition(const Lattice& lattice, const SitePartition& partition);

/// Deterministic layout passing validate_partition. Hand-checked layouts are
/// used for 3x3, 3x4, 4x3 and 4x4; larger lattices are tiled with probes on the
/// sublattice (x + 4y) mod 11 = c with left/right collar spins up, which has
/// probe density 1/11 in the bulk. Throws DomainError when no probe fits.
SitePartition canonical_partition(const Lattice& lattice);

/// Number of up spins and of down spins among a site's neighbor slots in
/// basis state s (frame spins count as down).
struct SlotCounts {
  int up = 0;
  int down = 0;
};
SlotCounts count_neighbor_spins(const Lattice& lattice, BasisState s, Site site);

}  // namespace hsf
