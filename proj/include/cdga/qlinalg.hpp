#pragma once

// Exact linear algebra over Q. Everything here is value-typed and pure; sharing
// const objects between threads is safe.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cdga/rational.hpp"

namespace cdga {

/// Sorted (column, value) pairs with no stored zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  /// Builds a rows x cols.size() matrix whose j-th column is cols[j].
  static RationalMatrix from_columns(std::size_t rows, std::span<const Vector> cols);
  static RationalMatrix from_rows(std::size_t cols, std::span<const Vector> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);
  void add_to(std::size_t r, std::size_t c, const Rational& value);

  const SparseRow& row(std::size_t r) const { return data_.at(r); }
  std::size_t nonzeros() const;

  Vector apply(const Vector& v) const;
  Vector column(std::size_t c) const;
  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& rhs) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseRow> data_;
};

/// Reduced row-echelon form. Unique for a given matrix, so every basis derived
/// from it is deterministic.
struct Echelon {
  std::vector<SparseRow> rows;      // nonzero rows only, pivot entry normalised to 1
  std::vector<std::size_t> pivots;  // pivot column of each row, strictly increasing
  std::size_t cols = 0;

  std::size_t rank() const noexcept { return pivots.size(); }
};

Echelon reduced_row_echelon(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// Accumulates vectors one at a time and reports whether each new one is
/// independent of those already accepted.
class IncrementalBasis {
 public:
  /// Returns true (and keeps v) iff v is not in the span of the accepted vectors.
  bool insert(const Vector& v);
  std::size_t size() const noexcept { return rows_.size(); }

 private:
  std::vector<SparseRow> rows_;  // reduced against all earlier rows, leading entry 1
  std::vector<std::size_t> pivots_;
};

/// A linear subspace of Q^ambient_dim given by an independent basis.
class Subspace {
 public:
  Subspace() = default;
  /// Throws DimensionMismatch on wrong vector lengths, Membership if the basis is dependent.
  Subspace(std::size_t ambient_dim, std::vector<Vector> basis);

  /// Canonical (RREF) basis of the span of arbitrary vectors.
  static Subspace span(std::size_t ambient_dim, std::span<const Vector> vectors);
  static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim, {}); }
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Vector> basis_;
};

Subspace kernel_basis(const RationalMatrix& m);
Subspace image_basis(const RationalMatrix& m);

/// Some v with m*v = b, or nullopt when b is not in the image.
std::optional<Vector> solve(const RationalMatrix& m, const Vector& b);

/// Precomputed left inverse of a full-column-rank matrix: recovers the unique
/// coefficients of a vector in the column span, and detects vectors outside it.
class ColumnSolver {
 public:
  ColumnSolver() = default;
  ColumnSolver(std::size_t ambient_dim, std::span<const Vector> columns);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t columns() const noexcept { return inverse_.size(); }

  bool in_span(const Vector& v) const;
  std::optional<Vector> coordinates(const Vector& v) const;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<SparseRow> inverse_;      // one row per column of the input
  std::vector<SparseRow> consistency_;  // v is in the span iff every row annihilates v
};

/// Coordinates of vectors of `ambient` modulo `sub`, taken in a fixed complement
/// of `sub` obtained greedily from the ambient basis.
class QuotientBasis {
 public:
  QuotientBasis() = default;
  /// Throws Membership when sub is not contained in ambient.
  QuotientBasis(Subspace ambient, Subspace sub);

  const Subspace& ambient() const noexcept { return ambient_; }
  const Subspace& sub() const noexcept { return sub_; }
  const std::vector<Vector>& complement() const noexcept { return complement_; }
  std::size_t dim() const noexcept { return complement_.size(); }

  /// Throws Membership when v is not in ambient.
  Vector coordinates(const Vector& v) const;

 private:
  Subspace ambient_;
  Subspace sub_;
  std::vector<Vector> complement_;
  ColumnSolver solver_;  // columns: sub basis, then complement
};

Vector quotient_coordinates(const Subspace& ambient, const Subspace& sub, const Vector& v);

}  // namespace cdga
