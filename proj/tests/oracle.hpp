#pragma once

// Dense reference constructions built from Kronecker products, independent
// of the sparse builders under test.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "hsf/constraints.hpp"
#include "hsf/couplings.hpp"
#include "hsf/lattice.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Single-spin matrices in the (down, up) = (bit 0, bit 1) basis.
inline Mat identity2() { return Mat::Identity(2, 2); }
inline Mat sigma_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat sigma_z() {
  Mat m(2, 2);
  m << -1, 0, 0, 1;
  return m;
}
inline Mat sigma_y() {
  Mat m(2, 2);
  m << cplx(0, 0), cplx(0, 1), cplx(0, -1), cplx(0, 0);
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// op acting on `site` of an n-site register; site 0 is the least significant factor.
inline Mat on_site(const Mat& op, std::size_t site, std::size_t n) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t k = n; k-- > 0;) out = kron(out, k == site ? op : identity2());
  return out;
}

inline Mat h_omega(std::size_t n, double omega, const std::vector<bool>& active) {
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Mat h = Mat::Zero(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (active[i]) h += 0.5 * omega * on_site(sigma_x(), i, n);
  }
  return h;
}

inline Mat h_int(const hsf::Lattice& lattice, const hsf::CouplingMap& c) {
  const std::size_t n = lattice.size();
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Mat h = Mat::Zero(dim, dim);
  const auto& bonds = lattice.bonds();
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    const Mat za = on_site(sigma_z(), bonds[b].a, n);
    if (bonds[b].is_frame()) {
      h -= c.coupling(b) * za * (-1.0);
    } else {
      h -= c.coupling(b) * za * on_site(sigma_z(), bonds[b].b, n);
    }
  }
  return h;
}

// -sum_i h_i sigma^z_i.
inline Mat longitudinal(const std::vector<double>& fields) {
  const std::size_t n = fields.size();
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Mat h = Mat::Zero(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (fields[i] != 0.0) h -= fields[i] * on_site(sigma_z(), i, n);
  }
  return h;
}

// sum_i sum_p keep(i, p) (omega/2) sigma^x_i prod_d proj_d(p[d]) over the
// six two-up/two-down patterns p; frame neighbors are down and a site with
// a missing neighbor never flips.
template <typename Keep>
Mat constrained_flips(const hsf::Lattice& lattice, double omega, Keep keep) {
  const std::size_t n = lattice.size();
  const auto dim = static_cast<Eigen::Index>(1) << n;
  const Mat up = 0.5 * (identity2() + sigma_z());
  const Mat down = 0.5 * (identity2() - sigma_z());
  Mat h = Mat::Zero(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& p : hsf::kFlipPatterns) {
      if (!keep(i, p)) continue;
      Mat term = 0.5 * omega * on_site(sigma_x(), i, n);
      for (hsf::Direction d : hsf::kDirections) {
        const int want = p[hsf::index_of(d)];
        const auto slot = lattice.neighbor(i, d);
        if (!slot) {
          term *= 0.0;
        } else if (slot->is_frame()) {
          if (want > 0) term *= 0.0;
        } else {
          term = term * on_site(want > 0 ? up : down, slot->site, n);
        }
      }
      h += term;
    }
  }
  return h;
}

inline Mat expm_hermitian(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<cplx>() * cplx(0, -t)).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace oracle
