#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hsf/hamiltonian.hpp"
#include "hsf/sensing.hpp"

using namespace hsf;

TEST(Ramsey, UncertaintyFormula) {
  EXPECT_DOUBLE_EQ(ramsey_uncertainty(0.5, 2.0, 4), 0.125);
  EXPECT_THROW(ramsey_uncertainty(0.5, 0.0, 4), DomainError);
  EXPECT_THROW(ramsey_uncertainty(1.0, 1.0, 4), DomainError);
  EXPECT_THROW(ramsey_uncertainty(0.0, 1.0, 4), DomainError);
  EXPECT_THROW(ramsey_uncertainty(0.5, 1.0, 0), DomainError);
}

TEST(Ramsey, Repetitions) {
  EXPECT_EQ((RamseyConfig{0.1, 1.0, 100.0}.repetitions()), 100U);
  EXPECT_EQ((RamseyConfig{0.1, 3.0, 10.0}.repetitions()), 3U);
  EXPECT_THROW((RamseyConfig{0.1, 0.0, 10.0}.repetitions()), DomainError);
  EXPECT_THROW((RamseyConfig{0.1, 2.0, 1.0}.repetitions()), DomainError);
  EXPECT_TRUE((RamseyConfig{0.01, 1.0, 10.0}.weak_phase(9)));
  EXPECT_FALSE((RamseyConfig{0.1, 1.0, 10.0}.weak_phase(9)));
}

TEST(Scheme, NamesRoundTrip) {
  for (Scheme s : {Scheme::GhzFree, Scheme::GhzInteracting, Scheme::Hsf}) EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  EXPECT_THROW(parse_scheme("ghz"), DomainError);
}

TEST(Scheme, GhzFreeProbabilityIsSinusoidal) {
  const Lattice l(2, 2);
  const auto p = SitePartition(std::vector<Role>(4, Role::Ancilla), std::vector<Spin>(4, Spin::Down));
  const auto c = CouplingMap::homogeneous(l, 1.0);
  for (double w : {0.0, 0.1, 0.7}) {
    for (double t : {0.3, 1.0, 2.2}) {
      EXPECT_NEAR(scheme_probability(Scheme::GhzFree, w, t, l, p, c), 0.5 * (1.0 + std::sin(4.0 * w * t)), 1e-12);
    }
  }
}

TEST(Scheme, HsfIdealReachesHeisenbergLimit) {
  for (auto [w, h] : {std::pair{3, 3}, std::pair{3, 4}, std::pair{4, 4}}) {
    const Lattice l(static_cast<std::size_t>(w), static_cast<std::size_t>(h));
    const auto p = canonical_partition(l);
    const auto c = sample_gaussian(l, 1.0, 0.3, 1);
    const RamseyConfig cfg{0.05, 1.0, 100.0};
    SensitivityOptions opt;
    opt.ideal = true;
    const auto r = numeric_sensitivity(Scheme::Hsf, cfg, l, p, c, opt);
    const double n = static_cast<double>(p.probe_sites().size());
    const double hl = 1.0 / (n * std::sqrt(cfg.t_int * cfg.t_all));
    EXPECT_NEAR(r.delta_omega / hl, 1.0, 1e-6) << w << "x" << h;
    EXPECT_EQ(r.n_sensing, p.probe_sites().size());
  }
}

TEST(Scheme, HsfFullDynamicsCloseToIdealInWeakField) {
  const Lattice l(3, 3);
  const auto p = canonical_partition(l);
  const auto c = sample_gaussian(l, 1.0, 0.3, 2);
  const RamseyConfig cfg{1e-3, 1.0, 100.0};
  SensitivityOptions ideal;
  ideal.ideal = true;
  const auto a = numeric_sensitivity(Scheme::Hsf, cfg, l, p, c);
  const auto b = numeric_sensitivity(Scheme::Hsf, cfg, l, p, c, ideal);
  EXPECT_NEAR(a.delta_omega / b.delta_omega, 1.0, 0.05);
}

TEST(Scheme, InteractionsDegradeGhz) {
  const Lattice l(3, 3);
  const auto p = canonical_partition(l);
  const auto c = sample_gaussian(l, 1.0, 0.3, 3);
  const RamseyConfig cfg{0.05, 1.0, 100.0};
  const auto free = numeric_sensitivity(Scheme::GhzFree, cfg, l, p, c);
  const auto inter = numeric_sensitivity(Scheme::GhzInteracting, cfg, l, p, c);
  EXPECT_NEAR(free.delta_omega * 9.0 * std::sqrt(cfg.t_int * cfg.t_all), 1.0, 1e-6);
  EXPECT_GT(inter.delta_omega, 10.0 * free.delta_omega);
}

TEST(Series, SecondOrderAgreesAtShortTimes) {
  const Lattice l(3, 3);
  const auto p = canonical_partition(l);
  const auto c = sample_gaussian(l, 1.0, 0.3, 4);
  const double w = 0.4;
  double previous = 1.0;
  for (double t : {0.02, 0.01, 0.005}) {
    const double exact = scheme_probability(Scheme::GhzInteracting, w, t, l, p, c);
    const double err = std::abs(exact - p_s_second_order(w, t, l.size(), c));
    EXPECT_LT(err, previous);
    if (previous < 1.0) {
      EXPECT_GE(previous / err, 4.0);
      EXPECT_LE(previous / err, 16.0);
    }
    previous = err;
  }
}

TEST(Zeno, SlopeAndAsymptote) {
  ZenoParams z;
  z.jbar = 2.0;
  std::vector<double> x, y;
  for (int k = 6; k <= 12; ++k) {
    const std::size_t n = std::size_t{1} << k;
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(zeno_uncertainty(z, n, 100.0)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / x.size();
    my += y[i] / y.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  EXPECT_NEAR(sxy / sxx, -0.75, 0.02);
  const std::size_t big = std::size_t{1} << 20;
  EXPECT_NEAR(zeno_uncertainty(z, big, 100.0) / zeno_asymptote(z, big, 100.0), 1.0, 1e-3);
}

TEST(Zeno, RejectsBadParameters) {
  ZenoParams z;
  z.tau = -1;
  EXPECT_THROW(zeno_uncertainty(z, 64, 1.0), DomainError);
  ZenoParams big;
  big.tau = 50.0;
  EXPECT_THROW(zeno_uncertainty(big, 64, 1.0), DomainError);
}

TEST(Zeno, InterrogationTime) {
  ZenoParams z;
  z.tau = 0.2;
  z.jbar = 2.0;
  z.beta = 0.1;
  z.gamma = 0.3;
  EXPECT_NEAR(z.t_int(64), 0.2 * std::pow(64.0, -0.6) * std::pow(2.0, -1.3), 1e-15);
}

TEST(Estimator, InverseAndMse) {
  const EstimatorModel m{0.01, 1.0, 4.0, 0.0};
  EXPECT_NEAR(omega_estimate(m.p_effective(), m), 0.01, 1e-15);
  EXPECT_NEAR(estimator_mse(m, 100), 4.0 / 16.0 * m.p_actual() * (1 - m.p_actual()) / 100.0, 1e-18);
  const EstimatorModel biased{0.01, 1.0, 4.0, 0.01};
  EXPECT_GT(estimator_mse(biased, 100), estimator_mse(m, 100));
  EXPECT_THROW((EstimatorModel{1.0, 1.0, 4.0, 0.0}.p_actual()), DomainError);
}

TEST(Estimator, MonteCarloIsReproducibleAndMatches) {
  const EstimatorModel m{0.02, 1.0, 4.0, 0.005};
  const auto a = monte_carlo_estimator(m, 100, 4000, 11);
  const auto b = monte_carlo_estimator(m, 100, 4000, 11);
  EXPECT_EQ(a.estimates, b.estimates);
  EXPECT_NEAR(a.empirical_mse / a.analytic_mse, 1.0, 0.1);
  const auto c = monte_carlo_estimator(m, 100, 4000, 12);
  EXPECT_NE(a.estimates, c.estimates);
}
