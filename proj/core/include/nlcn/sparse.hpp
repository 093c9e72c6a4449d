#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlcn/mesh.hpp"

namespace nlcn {

/// Coefficient vector of a discrete function in a Lagrange space.
struct FieldVector {
  SpacePtr space;
  std::vector<double> values;

  FieldVector() = default;
  explicit FieldVector(SpacePtr s) : space(std::move(s)), values(space ? space->n_nodes() : 0, 0.0) {}
  FieldVector(SpacePtr s, std::vector<double> v) : space(std::move(s)), values(std::move(v)) {}

  [[nodiscard]] std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool all_finite() const;
  void zero_boundary();
};

/// a * x + b * y
FieldVector linear_combination(double a, const FieldVector& x, double b, const FieldVector& y);

/// Symmetric sparse matrix in compressed-row form with both triangles stored.
class SparseSymMatrix {
 public:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };

  SparseSymMatrix() = default;

  /// Sums duplicate entries; triplets are reduced in (row, col, insertion) order
  /// so the result does not depend on hash or thread scheduling.
  static SparseSymMatrix from_triplets(std::size_t n, std::vector<Triplet> triplets);

  static SparseSymMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  [[nodiscard]] std::size_t nonzeros() const { return values_.size(); }

  [[nodiscard]] double entry(std::size_t i, std::size_t j) const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double max_asymmetry() const;
  [[nodiscard]] std::vector<double> diagonal() const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;

  /// x^T A y
  [[nodiscard]] double bilinear(std::span<const double> x, std::span<const double> y) const;

  /// a * A + b * B; both operands must share one sparsity pattern.
  [[nodiscard]] static SparseSymMatrix combine(double a, const SparseSymMatrix& A, double b,
                                               const SparseSymMatrix& B);

  [[nodiscard]] bool same_pattern(const SparseSymMatrix& other) const;

  [[nodiscard]] const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  [[nodiscard]] const std::vector<std::size_t>& col_idx() const { return col_idx_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }

 private:
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

}  // namespace nlcn
