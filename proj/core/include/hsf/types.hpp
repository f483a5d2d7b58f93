#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hsf {

using cplx = std::complex<double>;

/// Index of a lattice site, row-major: site = y * width + x.
using Site = std::size_t;

/// A z-basis configuration of N spins. Bit i holds site i; 1 means spin up.
using BasisState = std::uint64_t;

enum class Spin : std::int8_t { Down = -1, Up = 1 };

constexpr int sign_of(Spin s) noexcept { return static_cast<int>(s); }
constexpr Spin flipped(Spin s) noexcept { return s == Spin::Up ? Spin::Down : Spin::Up; }

constexpr bool bit_is_up(BasisState s, Site i) noexcept { return ((s >> i) & 1U) != 0; }
constexpr int z_value(BasisState s, Site i) noexcept { return bit_is_up(s, i) ? 1 : -1; }
constexpr BasisState site_bit(Site i) noexcept { return BasisState{1} << i; }

/// Precondition or argument outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A physical or numerical invariant was found violated at run time.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest spin count for which operators over the full 2^N space are built.
inline constexpr std::size_t kMaxOperatorSites = 24;

}  // namespace hsf
