#include "hsf/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "hsf/parallel.hpp"
#include "hsf/union_find.hpp"

namespace hsf {

namespace {

using Index = Eigen::Index;

struct Block {
  std::vector<BasisState> states;
  Eigen::VectorXd energies;
  Eigen::MatrixXd real_vectors;
  Eigen::MatrixXcd complex_vectors;
  bool real = true;
};

template <typename Matrix>
Matrix block_matrix(const SpinOperator& h, const Block& b) {
  const auto n = static_cast<Index>(b.states.size());
  Matrix a = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const BasisState r = b.states[static_cast<std::size_t>(j)];
    const auto cols = h.row_columns(r);
    const auto vals = h.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto it = std::lower_bound(b.states.begin(), b.states.end(), cols[k]);
      if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
        a(j, it - b.states.begin()) = vals[k].real();
      } else {
        a(j, it - b.states.begin()) = vals[k];
      }
    }
  }
  return a;
}

void diagonalize(const SpinOperator& h, Block& b) {
  if (b.real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(block_matrix<Eigen::MatrixXd>(h, b));
    if (eig.info() != Eigen::Success) throw InvariantError("eigensolver did not converge");
    b.energies = eig.eigenvalues();
    b.real_vectors = eig.eigenvectors();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block_matrix<Eigen::MatrixXcd>(h, b));
    if (eig.info() != Eigen::Success) throw InvariantError("eigensolver did not converge");
    b.energies = eig.eigenvalues();
    b.complex_vectors = eig.eigenvectors();
  }
}

// Connected components of the off-diagonal graph, ordered by smallest state.
std::vector<std::vector<BasisState>> components(const SpinOperator& h) {
  const std::size_t dim = h.dimension();
  UnionFind uf(dim);
  for (BasisState r = 0; r < dim; ++r) {
    const auto cols = h.row_columns(r);
    const auto vals = h.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] != r && vals[k] != cplx{0.0, 0.0}) uf.unite(r, cols[k]);
    }
  }
  std::vector<std::size_t> id(dim, SIZE_MAX);
  std::vector<std::vector<BasisState>> out;
  for (BasisState s = 0; s < dim; ++s) {
    std::size_t& slot = id[uf.find(s)];
    if (slot == SIZE_MAX) {
      slot = out.size();
      out.emplace_back();
    }
    out[slot].push_back(s);
  }
  return out;
}

}  // namespace

struct EvolutionEngine::Spectral {
  std::vector<Block> blocks;
  std::vector<BasisState> single_states;
  std::vector<double> single_energies;
};

EvolutionEngine::EvolutionEngine(SpinOperator h, EvolutionMethod method, KrylovOptions krylov)
    : h_(std::move(h)), method_(method), krylov_(krylov) {
  if (h_.dimension() == 0) throw DomainError("evolution needs a nonempty operator");
  const double scale = std::max(1.0, h_.norm_inf());
  if (!h_.is_hermitian(1e-12 * scale)) throw DomainError("evolution operator is not Hermitian");
  if (krylov_.max_dimension < 2) throw DomainError("Krylov dimension must be at least 2");
  if (!(krylov_.tolerance > 0.0)) throw DomainError("Krylov tolerance must be positive");

  auto blocks = components(h_);
  for (const auto& b : blocks) largest_block_ = std::max(largest_block_, b.size());
  if (method_ == EvolutionMethod::Auto) {
    method_ = largest_block_ <= kDenseBlockLimit ? EvolutionMethod::EigenDecomposition : EvolutionMethod::Krylov;
  }
  if (method_ != EvolutionMethod::EigenDecomposition) return;

  spectral_ = std::make_unique<Spectral>();
  const bool real = h_.is_real();
  for (auto& states : blocks) {
    if (states.size() == 1) {
      spectral_->single_states.push_back(states.front());
      spectral_->single_energies.push_back(h_.diagonal_entry(states.front()));
    } else {
      Block b;
      b.states = std::move(states);
      b.real = real;
      spectral_->blocks.push_back(std::move(b));
    }
  }
  auto& list = spectral_->blocks;
  parallel_for(list.size(), [&](std::size_t k) { diagonalize(h_, list[k]); });
}

EvolutionEngine::~EvolutionEngine() = default;
EvolutionEngine::EvolutionEngine(EvolutionEngine&&) noexcept = default;
EvolutionEngine& EvolutionEngine::operator=(EvolutionEngine&&) noexcept = default;

StateVector EvolutionEngine::evolve(const StateVector& psi, double t) const {
  if (psi.dimension() != h_.dimension()) throw DomainError("state and operator dimensions differ");
  if (!std::isfinite(t)) throw DomainError("evolution time must be finite");
  if (t == 0.0) return psi;
  return method_ == EvolutionMethod::EigenDecomposition ? evolve_spectral(psi, t) : evolve_krylov(psi, t);
}

StateVector EvolutionEngine::evolve_spectral(const StateVector& psi, double t) const {
  StateVector out = psi;
  const auto& sp = *spectral_;
  for (std::size_t k = 0; k < sp.single_states.size(); ++k) {
    out[sp.single_states[k]] *= std::polar(1.0, -sp.single_energies[k] * t);
  }
  for (const Block& b : sp.blocks) {
    const auto n = static_cast<Index>(b.states.size());
    Eigen::VectorXcd x(n);
    for (Index j = 0; j < n; ++j) x(j) = psi[b.states[static_cast<std::size_t>(j)]];
    Eigen::VectorXcd phases(n);
    for (Index j = 0; j < n; ++j) phases(j) = std::polar(1.0, -b.energies(j) * t);
    Eigen::VectorXcd y;
    if (b.real) {
      const Eigen::VectorXd cr = b.real_vectors.transpose() * x.real();
      const Eigen::VectorXd ci = b.real_vectors.transpose() * x.imag();
      const Eigen::VectorXcd c = (cr.cast<cplx>() + cplx{0.0, 1.0} * ci.cast<cplx>()).cwiseProduct(phases);
      const Eigen::VectorXd yr = b.real_vectors * c.real();
      const Eigen::VectorXd yi = b.real_vectors * c.imag();
      y = yr.cast<cplx>() + cplx{0.0, 1.0} * yi.cast<cplx>();
    } else {
      const Eigen::VectorXcd c = (b.complex_vectors.adjoint() * x).cwiseProduct(phases);
      y = b.complex_vectors * c;
    }
    for (Index j = 0; j < n; ++j) out[b.states[static_cast<std::size_t>(j)]] = y(j);
  }
  return out;
}

StateVector EvolutionEngine::evolve_krylov(const StateVector& psi, double t) const {
  const auto dim = static_cast<Index>(h_.dimension());
  const std::size_t m_max = std::min<std::size_t>(krylov_.max_dimension, h_.dimension());
  const double total = std::abs(t);
  const double sign = t < 0.0 ? -1.0 : 1.0;
  const double breakdown = 1e-14 * std::max(1.0, h_.norm_inf());

  Eigen::VectorXcd v = psi.to_eigen();
  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(m_max + 1);
  Eigen::VectorXcd w(dim);

  double remaining = total;
  double tau = total;
  while (remaining > 0.0) {
    const double beta0 = v.norm();
    if (beta0 == 0.0) break;
    basis.clear();
    basis.push_back(v / beta0);
    std::vector<double> alpha;
    std::vector<double> beta;
    bool happy = false;
    for (std::size_t j = 0; j < m_max; ++j) {
      h_.apply({basis[j].data(), static_cast<std::size_t>(dim)}, {w.data(), static_cast<std::size_t>(dim)});
      alpha.push_back((basis[j].adjoint() * w)(0).real());
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) w -= q * (q.adjoint() * w)(0);
      }
      const double b = w.norm();
      beta.push_back(b);
      if (b <= breakdown) {
        happy = true;
        break;
      }
      if (j + 1 < m_max) basis.push_back(w / b);
    }
    const auto k = static_cast<Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd sub(std::max<Index>(k - 1, 0));
    for (Index j = 0; j + 1 < k; ++j) sub(j) = beta[static_cast<std::size_t>(j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::MatrixXd& q = eig.eigenvectors();
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const double beta_k = happy ? 0.0 : beta.back();

    Eigen::VectorXcd y(k);
    for (;;) {
      tau = std::min(tau, remaining);
      Eigen::VectorXcd c(k);
      for (Index j = 0; j < k; ++j) c(j) = q(0, j) * std::polar(1.0, -sign * tau * lam(j));
      y = q * c;
      const double err = beta0 * beta_k * std::abs(y(k - 1));
      const double allowed = krylov_.tolerance * tau / total;
      if (err <= allowed) {
        remaining = (tau >= remaining) ? 0.0 : remaining - tau;
        if (err < 0.01 * allowed) tau *= 2.0;
        break;
      }
      tau *= 0.5;
      if (tau < 1e-14 * total) throw InvariantError("Krylov step size underflow");
    }
    v.setZero();
    for (Index j = 0; j < k; ++j) v += (beta0 * y(j)) * basis[static_cast<std::size_t>(j)];
  }
  std::vector<cplx> amps(v.data(), v.data() + v.size());
  return {psi.n_sites(), std::move(amps)};
}

std::vector<StateVector> EvolutionEngine::trajectory(const StateVector& psi, std::span<const double> times) const {
  std::vector<StateVector> out;
  out.reserve(times.size());
  const bool incremental = method_ == EvolutionMethod::Krylov && std::is_sorted(times.begin(), times.end()) &&
                           (times.empty() || times.front() >= 0.0);
  if (!incremental) {
    std::vector<StateVector> states(times.size());
    parallel_for(times.size(), [&](std::size_t k) { states[k] = evolve(psi, times[k]); });
    return states;
  }
  StateVector current = psi;
  double now = 0.0;
  for (double t : times) {
    current = evolve(current, t - now);
    now = t;
    out.push_back(current);
  }
  return out;
}

double EvolutionEngine::energy(const StateVector& psi) const {
  if (psi.dimension() != h_.dimension()) throw DomainError("state and operator dimensions differ");
  std::vector<cplx> hpsi(psi.dimension());
  h_.apply(psi.amplitudes(), hpsi);
  cplx e{0.0, 0.0};
  for (std::size_t k = 0; k < hpsi.size(); ++k) e += std::conj(psi[k]) * hpsi[k];
  return e.real();
}

double dynamical_fidelity(const StateVector& psi0, const EvolutionEngine& ideal, const EvolutionEngine& actual,
                          double t) {
  const StateVector a = ideal.evolve(psi0, t);
  const StateVector b = actual.evolve(psi0, t);
  return std::min(1.0, std::norm(a.inner(b)));
}

std::vector<double> dynamical_fidelity_trajectory(const StateVector& psi0, const EvolutionEngine& ideal,
                                                  const EvolutionEngine& actual, std::span<const double> times) {
  const auto a = ideal.trajectory(psi0, times);
  const auto b = actual.trajectory(psi0, times);
  std::vector<double> f(times.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::min(1.0, std::norm(a[k].inner(b[k])));
  return f;
}

double epsilon_deviation(const StateVector& psi, const EvolutionEngine& total, const EvolutionEngine& probe_omega,
                         const Projector& projector, double t) {
  return projector.expectation(total.evolve(psi, t)) - projector.expectation(probe_omega.evolve(psi, t));
}

std::vector<double> epsilon_trajectory(const StateVector& psi, const EvolutionEngine& total,
                                       const EvolutionEngine& probe_omega, const Projector& projector,
                                       std::span<const double> times) {
  const auto a = total.trajectory(psi, times);
  const auto b = probe_omega.trajectory(psi, times);
  std::vector<double> eps(times.size());
  for (std::size_t k = 0; k < eps.size(); ++k) eps[k] = projector.expectation(a[k]) - projector.expectation(b[k]);
  return eps;
}

}  // namespace hsf
