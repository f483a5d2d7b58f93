#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hsf/constraints.hpp"
#include "hsf/hamiltonian.hpp"
#include "oracle.hpp"

using namespace hsf;

namespace {

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

bool hamming_one_only(const SpinOperator& op) {
  for (const auto& e : op.triplets()) {
    if (e.row != e.col && e.value != cplx{0.0, 0.0} && std::popcount(e.row ^ e.col) != 1) return false;
  }
  return true;
}

SitePartition center_probe(const Lattice& l) { return canonical_partition(l); }

// Couplings with the center probe collar of a 3x3 lattice set to (L, D, R, U) deltas.
CouplingMap collar_couplings(const Lattice& l, std::array<double, 4> d) {
  std::vector<CouplingEntry> e{{4, 3, Direction::Left, d[0]},
                               {4, 1, Direction::Left, d[1]},
                               {4, 5, Direction::Left, d[2]},
                               {4, 7, Direction::Left, d[3]}};
  return couplings_from_entries(l, 1.0, e);
}

}  // namespace

TEST(HOmega, SingleSpin) {
  const auto h = build_h_omega(Lattice(1, 1), 0.4);
  EXPECT_EQ(h.entry(0, 1), cplx(0.2));
  EXPECT_EQ(h.entry(1, 0), cplx(0.2));
  EXPECT_EQ(h.entry(0, 0), cplx(0.0));
}

TEST(HOmega, ZeroFieldIsZero) {
  const auto h = build_h_omega(Lattice(2, 2), 0.0);
  EXPECT_EQ(h.norm_inf(), 0.0);
}

TEST(HOmega, RowsHoldNEntries) {
  const Lattice l(2, 3);
  const auto h = build_h_omega(l, 1.0);
  for (BasisState r = 0; r < h.dimension(); ++r) EXPECT_EQ(h.row_columns(r).size(), l.size() + 1);
}

TEST(HOmega, MatchesKroneckerOracle) {
  for (auto [w, hgt] : {std::pair{1, 2}, {2, 2}, {1, 3}}) {
    const Lattice l(w, hgt);
    const auto h = build_h_omega(l, 0.37).to_dense();
    EXPECT_LT(max_diff(h, oracle::h_omega(l.size(), 0.37, std::vector<bool>(l.size(), true))), 1e-15);
  }
}

TEST(HInt, TwoSpinOpenChain) {
  const Lattice l(2, 1, Boundary::Open);
  const auto h = build_h_int(l, CouplingMap::homogeneous(l, 1.0));
  EXPECT_EQ(h.diagonal_values(), (std::vector<double>{-1, 1, 1, -1}));
  EXPECT_EQ(h.nonzeros(), 4U);
}

TEST(HInt, AllDownIsGroundStateWithFrame) {
  const Lattice l(3, 3);
  const auto c = sample_gaussian(l, 1.0, 0.3, 5);
  const auto d = build_h_int(l, c).diagonal_values();
  double sum = 0;
  for (std::size_t b = 0; b < c.bond_count(); ++b) sum += c.coupling(b);
  EXPECT_NEAR(d[0], -sum, 1e-12);
  EXPECT_EQ(std::min_element(d.begin(), d.end()) - d.begin(), 0);
}

TEST(HInt, MatchesKroneckerOracle) {
  for (auto b : {Boundary::FixedDownFrame, Boundary::Open}) {
    const Lattice l(2, 2, b);
    const auto c = sample_gaussian(l, 1.3, 0.3, 17);
    EXPECT_LT(max_diff(build_h_int(l, c).to_dense(), oracle::h_int(l, c)), 1e-13);
  }
}

TEST(HInt, MatchesBruteForceBondSum) {
  const Lattice l(3, 3);
  const auto c = sample_gaussian(l, 1.0, 0.3, 23);
  const auto d = build_h_int(l, c).diagonal_values();
  for (BasisState s = 0; s < d.size(); ++s) {
    double e = 0;
    for (Site i = 0; i < l.size(); ++i) {
      for (Direction dir : kDirections) {
        const auto nb = l.neighbor(i, dir);
        const int zi = z_value(s, i);
        if (nb->is_frame()) {
          e -= (1.0 + c.delta(i, dir)) * zi * -1;
        } else if (nb->site > i) {
          e -= (1.0 + c.delta(i, dir)) * zi * z_value(s, nb->site);
        }
      }
    }
    ASSERT_NEAR(d[s], e, 1e-12);
  }
}

TEST(EffectiveField, ZeroWithoutInhomogeneity) {
  const Lattice l(3, 3);
  EXPECT_EQ(effective_field(l, 4, center_probe(l), CouplingMap::homogeneous(l, 1.0)), 0.0);
}

TEST(EffectiveField, SignedCollarSum) {
  // Collar up, down, up, down in the order (L, D, R, U) of the 3x3 layout.
  const Lattice l(3, 3);
  const auto c = collar_couplings(l, {0.1, 0.2, 0.3, 0.4});
  EXPECT_NEAR(effective_field(l, 4, center_probe(l), c), -0.1 + 0.2 - 0.3 + 0.4, 1e-15);
}

TEST(EffectiveField, NonProbeThrows) {
  const Lattice l(3, 3);
  EXPECT_THROW(effective_field(l, 0, center_probe(l), CouplingMap::homogeneous(l, 1.0)), DomainError);
}

TEST(EffectiveField, EqualsHalfIsingDifference) {
  const Lattice l(3, 3);
  const auto p = center_probe(l);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto c = sample_gaussian(l, 1.0, 0.3, seed);
    const BasisState f = p.frozen_mask();
    const double up = ising_energy(l, c, f | site_bit(4));
    const double down = ising_energy(l, c, f);
    EXPECT_NEAR(up - down, 2.0 * effective_field(l, 4, p, c), 1e-12);
  }
}

TEST(HShift, ZeroForHomogeneous) {
  const Lattice l(3, 3);
  EXPECT_EQ(build_h_shift(l, center_probe(l), CouplingMap::homogeneous(l, 1.0)).norm_inf(), 0.0);
}

TEST(HShift, SingleProbeSign) {
  const Lattice l(3, 3);
  const auto c = collar_couplings(l, {0.1, 0.2, 0.3, 0.4});
  const auto h = build_h_shift(l, center_probe(l), c);
  EXPECT_NEAR(h.diagonal_entry(site_bit(4)), -0.2, 1e-15);
  EXPECT_NEAR(h.diagonal_entry(0), 0.2, 1e-15);
  EXPECT_EQ(h.nonzeros(), h.dimension());
}

TEST(HShift, CancelsProbeFlipEnergy) {
  for (auto [w, hgt] : {std::pair{3, 3}, {3, 4}, {4, 4}}) {
    const Lattice l(w, hgt);
    const auto p = canonical_partition(l);
    const auto c = sample_gaussian(l, 1.0, 0.3, 31);
    const auto d = (build_h_int(l, c) + build_h_shift(l, p, c)).diagonal_values();
    const BasisState f = p.frozen_mask();
    for (Site probe : p.probe_sites()) EXPECT_NEAR(d[f | site_bit(probe)], d[f], 1e-12);
  }
}

TEST(HTotal, ReducesToIsingWithoutFieldAndDisorder) {
  const Lattice l(3, 3);
  const auto c = CouplingMap::homogeneous(l, 1.0);
  const auto h = build_h_total(l, center_probe(l), c, 0.0);
  EXPECT_EQ(h.diagonal_values(), build_h_int(l, c).diagonal_values());
  EXPECT_EQ(h.nonzeros(), h.dimension());
}

TEST(HTotal, OffDiagonalsAtHammingOne) {
  const Lattice l(3, 3);
  const auto h = build_h_total(l, center_probe(l), sample_gaussian(l, 1.0, 0.3, 2), 0.3);
  EXPECT_TRUE(hamming_one_only(h));
  EXPECT_EQ(h.nonzeros(), h.dimension() * (l.size() + 1));
}

TEST(HTotal, MatchesKroneckerOracle) {
  // 2x2 and 1x4 lattices with one explicit probe each.
  for (auto [w, hgt] : {std::pair{2, 2}, {4, 1}}) {
    const Lattice l(w, hgt);
    std::vector<Role> roles(l.size(), Role::Ancilla);
    std::vector<Spin> frozen(l.size(), Spin::Down);
    roles[1] = Role::Probe;
    frozen[0] = Spin::Up;
    const SitePartition p(roles, frozen);
    const auto c = sample_gaussian(l, 1.0, 0.3, 13);
    const auto fields = effective_fields(l, p, c);
    const Eigen::MatrixXcd dense = oracle::h_omega(l.size(), 0.21, std::vector<bool>(l.size(), true)) +
                       oracle::h_int(l, c) + oracle::longitudinal(fields);
    EXPECT_LT(max_diff(build_h_total(l, p, c, 0.21).to_dense(), dense), 1e-13);
  }
}

TEST(HProbeOmega, MaskedOracle) {
  const Lattice l(2, 2);
  std::vector<Role> roles(4, Role::Ancilla);
  roles[2] = Role::Probe;
  const SitePartition p(roles, std::vector<Spin>(4, Spin::Down));
  std::vector<bool> active{false, false, true, false};
  EXPECT_LT(max_diff(build_h_probe_omega(l, p, 0.5).to_dense(), oracle::h_omega(4, 0.5, active)), 1e-15);
  EXPECT_EQ(build_h_probe_omega(l, p, 0.0).norm_inf(), 0.0);
}

TEST(HProbeOmega, OneProbeTwoByTwoBlocks) {
  const Lattice l(3, 3);
  const auto h = build_h_probe_omega(l, center_probe(l), 0.6);
  for (BasisState r = 0; r < h.dimension(); ++r) {
    EXPECT_EQ(h.entry(r, r ^ site_bit(4)), cplx(0.3));
    EXPECT_EQ(h.row_columns(r).size(), 2U);
  }
}

TEST(HTfim, EqualsOmegaPlusInt) {
  const Lattice l(2, 2);
  const auto c = sample_gaussian(l, 1.0, 0.3, 3);
  const Eigen::MatrixXcd dense = oracle::h_omega(4, 0.4, std::vector<bool>(4, true)) + oracle::h_int(l, c);
  EXPECT_LT(max_diff(build_h_tfim(l, c, 0.4).to_dense(), dense), 1e-13);
}

TEST(DwNumber, Basics) {
  const Lattice l(3, 3);
  EXPECT_EQ(dw_number(l, 0), 0U);
  EXPECT_EQ(dw_number(l, site_bit(4)), 4U);
  EXPECT_EQ(dw_number(l, site_bit(0)), 4U);
  EXPECT_EQ(dw_number(l, (BasisState{1} << 9) - 1), 12U);
}

TEST(DwNumber, MatchesOperatorForm) {
  // n_DW = sum_bonds (1 - z_i z_j) / 2 from the dense oracle.
  const Lattice l(2, 2);
  const auto ising = oracle::h_int(l, CouplingMap::homogeneous(l, 1.0));
  const double nb = static_cast<double>(l.bonds().size());
  for (BasisState s = 0; s < 16; ++s) {
    const double from_oracle = (nb + ising(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)).real()) / 2;
    EXPECT_DOUBLE_EQ(static_cast<double>(dw_number(l, s)), from_oracle);
  }
}

TEST(Constraints, TwoUpTwoDownPatterns) {
  const Lattice l(3, 3);
  // Neighbors of the center: L=3, D=1, R=5, U=7.
  EXPECT_TRUE(two_up_two_down(l, site_bit(3) | site_bit(1), 4));
  EXPECT_FALSE(two_up_two_down(l, site_bit(3) | site_bit(1) | site_bit(5), 4));
  EXPECT_FALSE(two_up_two_down(l, 0, 4));
  const Lattice open(2, 1, Boundary::Open);
  for (BasisState s = 0; s < 4; ++s) EXPECT_FALSE(two_up_two_down(open, s, 0));
}

TEST(HEff, HomogeneousFlipIffQ) {
  const Lattice l(3, 3);
  const auto h = build_h_eff_homogeneous(l, 1.0, 0.2);
  const BasisState allowed = site_bit(3) | site_bit(1);
  EXPECT_EQ(h.entry(allowed, allowed | site_bit(4)), cplx(0.1));
  const BasisState forbidden = allowed | site_bit(5);
  EXPECT_EQ(h.entry(forbidden, forbidden | site_bit(4)), cplx(0.0));
  EXPECT_TRUE(h.is_hermitian());
  EXPECT_TRUE(hamming_one_only(h));
}

TEST(HEff, CommuteWithDomainWalls) {
  const Lattice l(3, 3);
  const auto dw = dw_diagonal(l);
  EXPECT_EQ(build_h_eff_homogeneous(l, 1.0, 0.3).commutator_with_diagonal_max(dw), 0.0);
  const auto c = sample_gaussian(l, 1.0, 0.3, 4);
  for (double th : {1e-6, 0.1, 0.4, 10.0}) {
    EXPECT_EQ(build_h_eff_inhomogeneous(l, center_probe(l), c, 0.3, th).commutator_with_diagonal_max(dw), 0.0);
  }
  // The full transverse-field model does not conserve domain walls.
  EXPECT_GT(build_h_tfim(l, c, 0.3).commutator_with_diagonal_max(dw), 0.0);
}

TEST(HEff, InhomogeneousReducesToHomogeneous) {
  const Lattice l(3, 3);
  const auto c = CouplingMap::homogeneous(l, 1.0);
  const auto hom = build_h_eff_homogeneous(l, 1.0, 0.2);
  for (double th : {1e-9, 0.1, 3.0}) {
    const auto inh = build_h_eff_inhomogeneous(l, center_probe(l), c, 0.2, th);
    EXPECT_EQ(inh.triplets().size(), hom.triplets().size());
    EXPECT_LT(max_diff(inh.to_dense(), hom.to_dense()), 1e-15);
  }
}

TEST(HEff, MismatchAboveThresholdRemovesFlip) {
  // Site 0 of a 3x3 has slots (L frame, D frame, R 1, U 3). With 1 and 3 up
  // the pattern is (-, -, +, +) and the mismatch is -dL - dD + dR + dU.
  const Lattice l(3, 3);
  const std::vector<Role> roles(9, Role::Ancilla);
  const SitePartition p(roles, std::vector<Spin>(9, Spin::Down));
  const std::vector<CouplingEntry> e{{0, 1, Direction::Left, 0.3}};
  const auto c = couplings_from_entries(l, 1.0, e);
  const InhomogeneousFlipRule rule(l, p, c, 0.1);
  const BasisState s = site_bit(1) | site_bit(3);
  EXPECT_NEAR(rule.mismatch(s, 0), 0.3, 1e-15);
  EXPECT_FALSE(rule.allows(s, 0));
  EXPECT_TRUE(InhomogeneousFlipRule(l, p, c, 0.31).allows(s, 0));
  const auto h = build_h_eff_inhomogeneous(l, p, c, 0.2, 0.1);
  EXPECT_EQ(h.entry(s, s | site_bit(0)), cplx(0.0));
}

TEST(HEff, InhomogeneousSupportInsideHomogeneous) {
  const Lattice l(3, 3);
  const auto hom = build_h_eff_homogeneous(l, 1.0, 0.2);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto c = sample_gaussian(l, 1.0, 0.3, seed);
    for (double th : {1e-6, 0.05, 0.2, 1.0}) {
      EXPECT_TRUE(build_h_eff_inhomogeneous(l, center_probe(l), c, 0.2, th).off_diagonal_support_within(hom));
    }
  }
}

TEST(HEff, ProbeFlipSurvivesInsideCollar) {
  const Lattice l(3, 3);
  const auto p = center_probe(l);
  const auto c = sample_gaussian(l, 1.0, 0.3, 9);
  const auto h = build_h_eff_inhomogeneous(l, p, c, 0.05, 1e-9);
  const BasisState f = p.frozen_mask();
  EXPECT_EQ(h.entry(f, f | site_bit(4)), cplx(0.025));
}

TEST(HEff, NonPositiveThresholdThrows) {
  const Lattice l(3, 3);
  const auto c = CouplingMap::homogeneous(l, 1.0);
  EXPECT_THROW(build_h_eff_inhomogeneous(l, center_probe(l), c, 0.1, 0.0), DomainError);
}

TEST(Builders, AllHermitian) {
  const Lattice l(3, 3);
  const auto p = center_probe(l);
  const auto c = sample_gaussian(l, 1.0, 0.3, 6);
  for (const auto& h : {build_h_omega(l, 0.3), build_h_int(l, c), build_h_shift(l, p, c),
                        build_h_total(l, p, c, 0.3), build_h_probe_omega(l, p, 0.3), build_h_tfim(l, c, 0.3),
                        build_h_eff_homogeneous(l, 1.0, 0.3), build_h_eff_inhomogeneous(l, p, c, 0.3, 0.1)}) {
    EXPECT_TRUE(h.is_hermitian(0.0));
    EXPECT_TRUE(h.is_real());
    EXPECT_TRUE(hamming_one_only(h));
  }
}

TEST(SpinOperator, BuilderMergesDuplicatesAndSorts) {
  OperatorBuilder b(4);
  b.add(1, 3, 0.5);
  b.add(1, 0, 0.25);
  b.add(1, 3, 0.5);
  const auto op = std::move(b).build();
  EXPECT_EQ(op.entry(1, 3), cplx(1.0));
  const auto cols = op.row_columns(1);
  EXPECT_TRUE(std::is_sorted(cols.begin(), cols.end()));
  EXPECT_EQ(op.nonzeros(), 6U);
  EXPECT_THROW(OperatorBuilder(2).add(2, 0, 1.0), DomainError);
}

TEST(SpinOperator, ApplyMatchesDense) {
  const Lattice l(2, 2);
  const auto h = build_h_tfim(l, sample_gaussian(l, 1.0, 0.3, 1), 0.7);
  Eigen::VectorXcd x = Eigen::VectorXcd::Random(16);
  std::vector<cplx> in(x.data(), x.data() + 16), out(16);
  h.apply(in, out);
  const Eigen::VectorXcd y = h.to_dense() * x;
  for (int k = 0; k < 16; ++k) EXPECT_LT(std::abs(out[k] - y(k)), 1e-14);
}
