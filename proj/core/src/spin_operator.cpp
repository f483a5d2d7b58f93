#include "hsf/spin_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hsf {

OperatorBuilder::OperatorBuilder(std::size_t dimension) : rows_(dimension) {}

void OperatorBuilder::add(BasisState row, BasisState col, cplx value) {
  if (row >= rows_.size() || col >= rows_.size()) {
    throw DomainError("operator entry (" + std::to_string(row) + ", " + std::to_string(col) +
                      ") outside dimension " + std::to_string(rows_.size()));
  }
  rows_[row].emplace_back(col, value);
}

SpinOperator OperatorBuilder::build() && {
  SpinOperator op;
  op.row_ptr_.reserve(rows_.size() + 1);
  op.row_ptr_.push_back(0);
  for (BasisState r = 0; r < rows_.size(); ++r) {
    auto& row = rows_[r];
    row.emplace_back(r, cplx{0.0, 0.0});
    std::stable_sort(row.begin(), row.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < row.size();) {
      const BasisState c = row[k].first;
      cplx sum{0.0, 0.0};
      for (; k < row.size() && row[k].first == c; ++k) sum += row[k].second;
      op.cols_.push_back(c);
      op.values_.push_back(sum);
    }
    op.row_ptr_.push_back(op.cols_.size());
    row.clear();
    row.shrink_to_fit();
  }
  return op;
}

SpinOperator SpinOperator::zero(std::size_t dimension) {
  return OperatorBuilder(dimension).build();
}

SpinOperator SpinOperator::diagonal(std::span<const double> diag) {
  OperatorBuilder b(diag.size());
  for (BasisState r = 0; r < diag.size(); ++r) b.add_diagonal(r, diag[r]);
  return std::move(b).build();
}

std::span<const BasisState> SpinOperator::row_columns(BasisState r) const {
  return {cols_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
}

std::span<const cplx> SpinOperator::row_values(BasisState r) const {
  return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
}

cplx SpinOperator::entry(BasisState r, BasisState c) const {
  if (r >= dimension() || c >= dimension()) throw DomainError("operator index out of range");
  const auto cols = row_columns(r);
  const auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return {0.0, 0.0};
  return row_values(r)[static_cast<std::size_t>(it - cols.begin())];
}

std::vector<double> SpinOperator::diagonal_values() const {
  std::vector<double> d(dimension());
  for (BasisState r = 0; r < d.size(); ++r) d[r] = diagonal_entry(r);
  return d;
}

void SpinOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != dimension() || out.size() != dimension()) {
    throw DomainError("operator/vector dimension mismatch");
  }
  for (BasisState r = 0; r < dimension(); ++r) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * in[cols_[k]];
    out[r] = acc;
  }
}

std::vector<SpinOperator::Entry> SpinOperator::triplets() const {
  std::vector<Entry> out;
  out.reserve(nonzeros());
  for (BasisState r = 0; r < dimension(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out.push_back({r, cols_[k], values_[k]});
  }
  return out;
}

bool SpinOperator::is_hermitian(double tolerance) const {
  for (BasisState r = 0; r < dimension(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const cplx transposed = std::conj(entry(cols_[k], r));
      if (std::abs(values_[k] - transposed) > tolerance) return false;
    }
  }
  return true;
}

bool SpinOperator::is_real() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v.imag() == 0.0; });
}

double SpinOperator::norm_inf() const noexcept {
  double best = 0.0;
  for (BasisState r = 0; r < dimension(); ++r) {
    double sum = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) sum += std::abs(values_[k]);
    best = std::max(best, sum);
  }
  return best;
}

Eigen::MatrixXcd SpinOperator::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (BasisState r = 0; r < dimension(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[k])) = values_[k];
    }
  }
  return m;
}

bool SpinOperator::off_diagonal_support_within(const SpinOperator& other) const {
  if (other.dimension() != dimension()) return false;
  for (BasisState r = 0; r < dimension(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (cols_[k] == r || values_[k] == cplx{0.0, 0.0}) continue;
      if (other.entry(r, cols_[k]) == cplx{0.0, 0.0}) return false;
    }
  }
  return true;
}

double SpinOperator::commutator_with_diagonal_max(std::span<const double> d) const {
  if (d.size() != dimension()) throw DomainError("diagonal length mismatch");
  double worst = 0.0;
  for (BasisState r = 0; r < dimension(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      worst = std::max(worst, std::abs(values_[k] * (d[cols_[k]] - d[r])));
    }
  }
  return worst;
}

SpinOperator SpinOperator::operator+(const SpinOperator& other) const {
  if (other.dimension() != dimension()) throw DomainError("cannot add operators of different dimension");
  OperatorBuilder b(dimension());
  for (const SpinOperator* op : {this, &other}) {
    for (BasisState r = 0; r < dimension(); ++r) {
      for (std::size_t k = op->row_ptr_[r]; k < op->row_ptr_[r + 1]; ++k) {
        b.add(r, op->cols_[k], op->values_[k]);
      }
    }
  }
  return std::move(b).build();
}

}  // namespace hsf
