#include "nlcn/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "nlcn/error.hpp"

namespace nlcn {

bool FieldVector::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

bool FieldVector::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

void FieldVector::zero_boundary() {
  if (!space) return;
  const auto& flags = space->boundary_node_flags();
  for (std::size_t i = 0; i < values.size(); ++i)
    if (flags[i]) values[i] = 0.0;
}

FieldVector linear_combination(double a, const FieldVector& x, double b, const FieldVector& y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::DimensionMismatch, "vectors of different length");
  FieldVector out(x.space, std::vector<double>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = a * x.values[i] + b * y.values[i];
  return out;
}

SparseSymMatrix SparseSymMatrix::from_triplets(std::size_t n, std::vector<Triplet> triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseSymMatrix m;
  m.row_ptr_.assign(n + 1, 0);
  for (std::size_t t = 0; t < triplets.size();) {
    const std::size_t r = triplets[t].row, c = triplets[t].col;
    if (r >= n || c >= n) throw Error(ErrorKind::DimensionMismatch, "triplet index out of range");
    double sum = 0.0;
    while (t < triplets.size() && triplets[t].row == r && triplets[t].col == c) sum += triplets[t++].value;
    m.col_idx_.push_back(c);
    m.values_.push_back(sum);
    ++m.row_ptr_[r + 1];
  }
  for (std::size_t r = 0; r < n; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

SparseSymMatrix SparseSymMatrix::identity(std::size_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, std::move(t));
}

double SparseSymMatrix::entry(std::size_t i, std::size_t j) const {
  const auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

double SparseSymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SparseSymMatrix::max_asymmetry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      m = std::max(m, std::abs(values_[p] - entry(col_idx_[p], i)));
  return m;
}

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(rows());
  for (std::size_t i = 0; i < rows(); ++i) d[i] = entry(i, i);
  return d;
}

void SparseSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != rows() || y.size() != rows())
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
  for (std::size_t i = 0; i < rows(); ++i) {
    double s = 0.0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += values_[p] * x[col_idx_[p]];
    y[i] = s;
  }
}

std::vector<double> SparseSymMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows());
  multiply(x, y);
  return y;
}

double SparseSymMatrix::bilinear(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != rows() || y.size() != rows())
    throw Error(ErrorKind::DimensionMismatch, "bilinear form size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < rows(); ++i) {
    double row = 0.0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) row += values_[p] * y[col_idx_[p]];
    s += x[i] * row;
  }
  return s;
}

bool SparseSymMatrix::same_pattern(const SparseSymMatrix& other) const {
  return row_ptr_ == other.row_ptr_ && col_idx_ == other.col_idx_;
}

SparseSymMatrix SparseSymMatrix::combine(double a, const SparseSymMatrix& A, double b,
                                         const SparseSymMatrix& B) {
  if (!A.same_pattern(B))
    throw Error(ErrorKind::DimensionMismatch, "combine requires matching sparsity patterns");
  SparseSymMatrix out = A;
  for (std::size_t p = 0; p < out.values_.size(); ++p) out.values_[p] = a * A.values_[p] + b * B.values_[p];
  return out;
}

}  // namespace nlcn
