#include <cmath>
#include <cstdlib>
#include <vector>

#include <gtest/gtest.h>

#include "hsf/evolve.hpp"
#include "hsf/hamiltonian.hpp"
#include "oracle.hpp"

using namespace hsf;

namespace {

double distance(const StateVector& a, const StateVector& b) {
  double d = 0;
  for (BasisState s = 0; s < a.dimension(); ++s) d += std::norm(a[s] - b[s]);
  return std::sqrt(d);
}

StateVector random_state(std::size_t n, unsigned seed) {
  std::srand(seed);
  const Eigen::VectorXcd v = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(1) << n).normalized();
  return {n, std::vector<cplx>(v.data(), v.data() + v.size())};
}

}  // namespace

TEST(Evolve, ZeroTimeIsIdentity) {
  const Lattice l(2, 2);
  const EvolutionEngine e(build_h_tfim(l, CouplingMap::homogeneous(l, 1.0), 0.5));
  const auto psi = random_state(4, 1);
  EXPECT_EQ(distance(e.evolve(psi, 0.0), psi), 0.0);
}

TEST(Evolve, RabiOscillation) {
  const Lattice l(1, 1, Boundary::Open);
  for (auto method : {EvolutionMethod::EigenDecomposition, EvolutionMethod::Krylov}) {
    const EvolutionEngine e(build_h_omega(l, 0.8), method);
    for (double t : {0.1, 1.0, 3.7, 12.0}) {
      EXPECT_NEAR(expectation_sigma_z(e.evolve(StateVector::basis(1, 1), t), 0), std::cos(0.8 * t), 1e-12);
    }
  }
}

TEST(Evolve, MatchesDenseExponential) {
  const Lattice l(2, 2);
  const auto c = sample_gaussian(l, 1.0, 0.3, 2);
  const auto h = build_h_tfim(l, c, 0.6);
  const auto dense = h.to_dense();
  const auto psi = random_state(4, 3);
  for (auto method : {EvolutionMethod::EigenDecomposition, EvolutionMethod::Krylov}) {
    const EvolutionEngine e(h, method);
    for (double t : {0.5, 2.0, -1.3}) {
      const Eigen::VectorXcd ref = oracle::expm_hermitian(dense, t) * psi.to_eigen();
      const auto got = e.evolve(psi, t).to_eigen();
      EXPECT_LT((ref - got).norm(), 1e-10);
    }
  }
}

TEST(Evolve, KrylovMatchesEigenAtTenSites) {
  const Lattice l(5, 2);
  const auto c = sample_gaussian(l, 1.0, 0.3, 7);
  const auto h = build_h_tfim(l, c, 0.4);
  const EvolutionEngine eig(h, EvolutionMethod::EigenDecomposition);
  const EvolutionEngine kry(h, EvolutionMethod::Krylov);
  const auto psi = ghz_x(10);
  for (double t : {0.3, 2.5, 10.0}) EXPECT_LT(distance(eig.evolve(psi, t), kry.evolve(psi, t)), 1e-9);
}

TEST(Evolve, AutoPicksByBlockSize) {
  const Lattice l(3, 3);
  const auto c = CouplingMap::homogeneous(l, 1.0);
  EXPECT_EQ(EvolutionEngine(build_h_tfim(l, c, 0.1)).method(), EvolutionMethod::EigenDecomposition);
  const Lattice big(3, 4);
  const auto cb = CouplingMap::homogeneous(big, 1.0);
  EXPECT_EQ(EvolutionEngine(build_h_tfim(big, cb, 0.1)).method(), EvolutionMethod::Krylov);
  const EvolutionEngine probe(build_h_probe_omega(big, canonical_partition(big), 0.1));
  EXPECT_EQ(probe.method(), EvolutionMethod::EigenDecomposition);
  EXPECT_EQ(probe.largest_block(), 4U);
}

TEST(Evolve, UnitarityAndComposition) {
  const Lattice l(3, 3);
  const auto h = build_h_tfim(l, sample_gaussian(l, 1.0, 0.3, 9), 0.7);
  for (auto method : {EvolutionMethod::EigenDecomposition, EvolutionMethod::Krylov}) {
    const EvolutionEngine e(h, method);
    const auto psi = random_state(9, 5);
    const auto a = e.evolve(e.evolve(psi, 1.3), 2.1);
    const auto b = e.evolve(psi, 3.4);
    EXPECT_NEAR(b.norm(), 1.0, 1e-10);
    EXPECT_LT(distance(a, b), 1e-9);
  }
}

TEST(Evolve, EnergyConserved) {
  const Lattice l(3, 3);
  const auto h = build_h_tfim(l, sample_gaussian(l, 1.0, 0.3, 10), 0.9);
  for (auto method : {EvolutionMethod::EigenDecomposition, EvolutionMethod::Krylov}) {
    const EvolutionEngine e(h, method);
    const auto psi = ghz_x(9);
    const double e0 = e.energy(psi);
    const std::vector<double> times{0.5, 1.0, 4.0, 9.0};
    for (const auto& s : e.trajectory(psi, times)) EXPECT_NEAR(e.energy(s), e0, 1e-9);
  }
}

TEST(Evolve, TrajectoryMatchesPointwise) {
  const Lattice l(3, 4);
  const auto h = build_h_tfim(l, sample_gaussian(l, 1.0, 0.3, 4), 0.4);
  const EvolutionEngine e(h);
  const auto psi = ghz_x(12);
  const std::vector<double> times{0.0, 0.25, 0.5, 1.5};
  const auto traj = e.trajectory(psi, times);
  for (std::size_t k = 0; k < times.size(); ++k) EXPECT_LT(distance(traj[k], e.evolve(psi, times[k])), 1e-9);
}

TEST(Evolve, RejectsNonHermitian) {
  OperatorBuilder b(2);
  b.add(0, 1, 1.0);
  EXPECT_THROW(EvolutionEngine(std::move(b).build()), DomainError);
}

TEST(Evolve, ComplexHermitianOperator) {
  OperatorBuilder b(2);
  b.add(0, 1, cplx(0, 1));
  b.add(1, 0, cplx(0, -1));
  const auto h = std::move(b).build();
  const EvolutionEngine eig(h, EvolutionMethod::EigenDecomposition);
  const EvolutionEngine kry(h, EvolutionMethod::Krylov);
  const auto psi = StateVector::basis(1, 0);
  EXPECT_LT(distance(eig.evolve(psi, 0.8), kry.evolve(psi, 0.8)), 1e-12);
}

TEST(Fidelity, IdenticalHamiltoniansGiveOne) {
  const Lattice l(3, 3);
  const EvolutionEngine e(build_h_tfim(l, CouplingMap::homogeneous(l, 1.0), 0.4));
  for (double t : {0.0, 1.0, 5.0}) EXPECT_NEAR(dynamical_fidelity(ghz_x(9), e, e, t), 1.0, 1e-12);
}

TEST(Fidelity, StartsAtOneAndIsSymmetric) {
  const Lattice l(3, 3);
  const EvolutionEngine ideal(build_h_omega(l, 0.4));
  const EvolutionEngine actual(build_h_tfim(l, sample_gaussian(l, 1.0, 0.3, 1), 0.4));
  EXPECT_NEAR(dynamical_fidelity(ghz_x(9), ideal, actual, 0.0), 1.0, 1e-12);
  for (double t : {0.2, 1.0}) {
    EXPECT_NEAR(dynamical_fidelity(ghz_x(9), ideal, actual, t), dynamical_fidelity(ghz_x(9), actual, ideal, t),
                1e-12);
    EXPECT_LT(dynamical_fidelity(ghz_x(9), ideal, actual, t), 1.0);
  }
}

TEST(Epsilon, ZeroAtZeroTimeAndZeroField) {
  const Lattice l(3, 3);
  const auto p = canonical_partition(l);
  const auto c = sample_gaussian(l, 1.0, 0.3, 3);
  const auto psi = embed(ghz_x(1), p);
  const auto proj = Projector::probe_rank_one(ghz_x(1, GhzPhase::Primed), p);
  {
    const EvolutionEngine total(build_h_total(l, p, c, 0.0));
    const EvolutionEngine eff(build_h_probe_omega(l, p, 0.0));
    for (double t : {0.0, 1.0, 10.0}) EXPECT_NEAR(epsilon_deviation(psi, total, eff, proj, t), 0.0, 1e-13);
  }
  const EvolutionEngine total(build_h_total(l, p, c, 0.05));
  const EvolutionEngine eff(build_h_probe_omega(l, p, 0.05));
  EXPECT_EQ(epsilon_deviation(psi, total, eff, proj, 0.0), 0.0);
}

TEST(Epsilon, ShrinksWithWeakerField) {
  const Lattice l(3, 3);
  const auto p = canonical_partition(l);
  const auto c = sample_gaussian(l, 1.0, 0.3, 8);
  const auto psi = embed(ghz_x(1), p);
  const auto proj = Projector::probe_rank_one(ghz_x(1, GhzPhase::Primed), p);
  double previous = 1.0;
  for (double w : {1e-1, 1e-2, 1e-3}) {
    const EvolutionEngine total(build_h_total(l, p, c, w));
    const EvolutionEngine eff(build_h_probe_omega(l, p, w));
    double worst = 0;
    for (double t = 0.5; t <= 10.0; t += 0.5) worst = std::max(worst, std::abs(epsilon_deviation(psi, total, eff, proj, t)));
    EXPECT_LT(worst, previous);
    previous = worst;
  }
}

TEST(Evolve, AncillasStayFrozen) {
  const Lattice l(3, 3);
  const auto p = canonical_partition(l);
  const auto c = sample_gaussian(l, 1.0, 0.3, 12);
  const double w = 1e-2;
  const EvolutionEngine total(build_h_total(l, p, c, w));
  const double jg = 4.0 * (1.0 - k_ratio(c));
  const auto psi = embed(ghz_x(1), p);
  const double t_int = 10.0;
  for (double t = 0.0; t <= t_int; t += 1.0) {
    const auto s = total.evolve(psi, t);
    for (Site a : p.ancilla_sites()) {
      const double target = p.frozen_spin(a) == Spin::Up ? 1.0 : -1.0;
      EXPECT_LE(std::abs(expectation_sigma_z(s, a) - target), 10.0 * 9 * w / jg);
    }
  }
}
