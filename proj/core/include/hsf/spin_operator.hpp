#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hsf/types.hpp"

namespace hsf {

/// Sparse operator on the 2^N computational basis in CSR form. Rows are
/// sorted by column, duplicates merged, and every row stores its diagonal
/// explicitly (possibly zero).
class SpinOperator {
 public:
  struct Entry {
    BasisState row;
    BasisState col;
    cplx value;
  };

  SpinOperator() = default;

  /// Zero operator with explicit zero diagonal.
  static SpinOperator zero(std::size_t dimension);
  /// Diagonal operator.
  static SpinOperator diagonal(std::span<const double> diag);

  std::size_t dimension() const noexcept { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nonzeros() const noexcept { return cols_.size(); }

  std::span<const BasisState> row_columns(BasisState r) const;
  std::span<const cplx> row_values(BasisState r) const;

  cplx entry(BasisState r, BasisState c) const;
  double diagonal_entry(BasisState r) const { return entry(r, r).real(); }
  std::vector<double> diagonal_values() const;

  /// out = H in. Fixed per-row summation order.
  void apply(std::span<const cplx> in, std::span<cplx> out) const;

  std::vector<Entry> triplets() const;

  bool is_hermitian(double tolerance = 0.0) const;
  bool is_real() const noexcept;

  /// Row-wise max absolute sum, an upper bound on the spectral norm.
  double norm_inf() const noexcept;

  Eigen::MatrixXcd to_dense() const;

  /// True when every nonzero off-diagonal position of *this is nonzero in other.
  bool off_diagonal_support_within(const SpinOperator& other) const;

  /// Largest |[H, D]_{rc}| = |H_rc (d_c - d_r)| for the diagonal operator D = diag(d).
  double commutator_with_diagonal_max(std::span<const double> d) const;

  SpinOperator operator+(const SpinOperator& other) const;

  friend class OperatorBuilder;

 private:
  std::vector<std::size_t> row_ptr_;
  std::vector<BasisState> cols_;
  std::vector<cplx> values_;
};

/// Row-by-row accumulator producing a SpinOperator.
class OperatorBuilder {
 public:
  explicit OperatorBuilder(std::size_t dimension);

  void add(BasisState row, BasisState col, cplx value);
  void add_diagonal(BasisState row, double value) { add(row, row, value); }

  SpinOperator build() &&;

 private:
  std::vector<std::vector<std::pair<BasisState, cplx>>> rows_;
};

}  // namespace hsf
