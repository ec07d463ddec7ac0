#include "cdga/qlinalg.hpp"

#include <algorithm>
#include <limits>

#include "cdga/error.hpp"

namespace cdga {

namespace {

const Rational kZero(0);

const Rational* find_entry(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  if (it == row.end() || it->first != col) return nullptr;
  return &it->second;
}

// dst += factor * src
void axpy(SparseRow& dst, const Rational& factor, const SparseRow& src) {
  SparseRow out;
  out.reserve(dst.size() + src.size());
  auto a = dst.begin();
  auto b = src.begin();
  while (a != dst.end() || b != src.end()) {
    if (b == src.end() || (a != dst.end() && a->first < b->first)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == dst.end() || b->first < a->first) {
      out.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Rational v = a->second + factor * b->second;
      if (v != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  dst = std::move(out);
}

SparseRow to_sparse(const Vector& v) {
  SparseRow row;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) row.emplace_back(i, v[i]);
  return row;
}

Vector to_dense(const SparseRow& row, std::size_t n) {
  Vector v = zero_vector(n);
  for (const auto& [c, x] : row) v[c] = x;
  return v;
}

Rational dot(const SparseRow& row, const Vector& v) {
  Rational acc(0);
  for (const auto& [c, x] : row) acc += x * v[c];
  return acc;
}

// Gauss-Jordan elimination on sparse rows. The pivot in each column is the
// candidate with the smallest numerator+denominator bit length.
Echelon eliminate(std::vector<SparseRow> rows, std::size_t cols) {
  Echelon result;
  result.cols = cols;
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].empty()) active.push_back(i);
  std::vector<std::size_t> done;

  for (std::size_t c = 0; c < cols && !active.empty(); ++c) {
    std::size_t best_pos = active.size();
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t k = 0; k < active.size(); ++k) {
      const Rational* e = find_entry(rows[active[k]], c);
      if (e == nullptr) continue;
      const std::size_t cost = bit_length(*e);
      if (cost < best_cost) {
        best_cost = cost;
        best_pos = k;
      }
    }
    if (best_pos == active.size()) continue;

    const std::size_t p = active[best_pos];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_pos));
    const Rational inv = 1 / *find_entry(rows[p], c);
    for (auto& e : rows[p]) e.second *= inv;

    auto clear_column = [&](std::size_t r) {
      const Rational* e = find_entry(rows[r], c);
      if (e == nullptr) return;
      const Rational factor = -*e;
      axpy(rows[r], factor, rows[p]);
    };
    for (std::size_t r : active) clear_column(r);
    for (std::size_t r : done) clear_column(r);
    done.push_back(p);
    result.pivots.push_back(c);
  }
  for (std::size_t r : done) result.rows.push_back(std::move(rows[r]));
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// IncrementalBasis

bool IncrementalBasis::insert(const Vector& v) {
  SparseRow r = to_sparse(v);
  for (std::size_t i = 0; i < rows_.size() && !r.empty(); ++i) {
    const Rational* e = find_entry(r, pivots_[i]);
    if (e) {
      const Rational factor = -*e;
      axpy(r, factor, rows_[i]);
    }
  }
  if (r.empty()) return false;
  const Rational inv = 1 / r.front().second;
  for (auto& e : r) e.second *= inv;
  pivots_.push_back(r.front().first);
  rows_.push_back(std::move(r));
  return true;
}

// ---------------------------------------------------------------------------
// RationalMatrix

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
  return m;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows, std::span<const Vector> cols) {
  RationalMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw Error(ErrorCode::DimensionMismatch, "column length differs from row count");
    for (std::size_t i = 0; i < rows; ++i)
      if (cols[j][i] != 0) m.data_[i].emplace_back(j, cols[j][i]);
  }
  return m;
}

RationalMatrix RationalMatrix::from_rows(std::size_t cols, std::span<const Vector> rows) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw Error(ErrorCode::DimensionMismatch, "row length differs from column count");
    m.data_[i] = to_sparse(rows[i]);
  }
  return m;
}

Rational RationalMatrix::at(std::size_t r, std::size_t c) const {
  const Rational* e = find_entry(data_.at(r), c);
  return e ? *e : kZero;
}

void RationalMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw Error(ErrorCode::DimensionMismatch, "index out of range");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (value == 0)
      row.erase(it);
    else
      it->second = value;
  } else if (value != 0) {
    row.insert(it, {c, value});
  }
}

void RationalMatrix::add_to(std::size_t r, std::size_t c, const Rational& value) {
  if (value == 0) return;
  set(r, c, at(r, c) + value);
}

std::size_t RationalMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.size();
  return n;
}

Vector RationalMatrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from column count");
  Vector out = zero_vector(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = dot(data_[i], v);
  return out;
}

Vector RationalMatrix::column(std::size_t c) const {
  Vector out = zero_vector(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, c);
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [c, x] : data_[i]) t.data_[c].emplace_back(i, x);
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    SparseRow acc;
    for (const auto& [k, x] : data_[i]) axpy(acc, x, rhs.data_[k]);
    out.data_[i] = std::move(acc);
  }
  return out;
}

// ---------------------------------------------------------------------------

Echelon reduced_row_echelon(const RationalMatrix& m) {
  std::vector<SparseRow> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return eliminate(std::move(rows), m.cols());
}

std::size_t rank(const RationalMatrix& m) { return reduced_row_echelon(m).rank(); }

Subspace kernel_basis(const RationalMatrix& m) {
  const Echelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      const Rational* x = find_entry(e.rows[i], f);
      if (x) v[e.pivots[i]] = -*x;
    }
    basis.push_back(std::move(v));
  }
  return Subspace(m.cols(), std::move(basis));
}

Subspace image_basis(const RationalMatrix& m) {
  const Echelon e = reduced_row_echelon(m.transpose());
  std::vector<Vector> basis;
  for (const auto& row : e.rows) basis.push_back(to_dense(row, m.rows()));
  return Subspace(m.rows(), std::move(basis));
}

std::optional<Vector> solve(const RationalMatrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length differs from row count");
  std::vector<SparseRow> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseRow r = m.row(i);
    if (b[i] != 0) r.emplace_back(m.cols(), b[i]);
    rows.push_back(std::move(r));
  }
  const Echelon e = eliminate(std::move(rows), m.cols() + 1);
  Vector x = zero_vector(m.cols());
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    const Rational* rhs = find_entry(e.rows[i], m.cols());
    if (rhs) x[e.pivots[i]] = *rhs;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(std::size_t ambient_dim, std::vector<Vector> basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  for (const auto& v : basis_)
    if (v.size() != ambient_dim_)
      throw Error(ErrorCode::DimensionMismatch, "basis vector length differs from ambient dimension");
  if (!basis_.empty() && rank(RationalMatrix::from_rows(ambient_dim_, basis_)) != basis_.size())
    throw Error(ErrorCode::Membership, "subspace basis is linearly dependent");
}

Subspace Subspace::span(std::size_t ambient_dim, std::span<const Vector> vectors) {
  const Echelon e = reduced_row_echelon(RationalMatrix::from_rows(ambient_dim, vectors));
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  for (const auto& row : e.rows) s.basis_.push_back(to_dense(row, ambient_dim));
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    Vector v = zero_vector(ambient_dim);
    v[i] = 1;
    s.basis_.push_back(std::move(v));
  }
  return s;
}

bool Subspace::contains(const Vector& v) const {
  if (v.size() != ambient_dim_) return false;
  if (is_zero(v)) return true;
  if (basis_.empty()) return false;
  return ColumnSolver(ambient_dim_, basis_).in_span(v);
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) return false;
  if (other.basis_.empty()) return true;
  ColumnSolver solver(ambient_dim_, basis_);
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const Vector& v) { return solver.in_span(v); });
}

// ---------------------------------------------------------------------------
// ColumnSolver: row-reduce [B | I]. The first r rows give B's left inverse, the
// remaining rows cut out the column span.

ColumnSolver::ColumnSolver(std::size_t ambient_dim, std::span<const Vector> columns)
    : ambient_dim_(ambient_dim) {
  const std::size_t r = columns.size();
  std::vector<SparseRow> rows(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (columns[j].size() != ambient_dim)
        throw Error(ErrorCode::DimensionMismatch, "column length differs from ambient dimension");
      if (columns[j][i] != 0) rows[i].emplace_back(j, columns[j][i]);
    }
    rows[i].emplace_back(r + i, Rational(1));
  }
  Echelon e = eliminate(std::move(rows), r + ambient_dim);
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    SparseRow tail;
    for (const auto& [c, x] : e.rows[i])
      if (c >= r) tail.emplace_back(c - r, x);
    if (e.pivots[i] < r) {
      if (e.pivots[i] != inverse_.size())
        throw Error(ErrorCode::Membership, "solver columns are linearly dependent");
      inverse_.push_back(std::move(tail));
    } else {
      consistency_.push_back(std::move(tail));
    }
  }
  if (inverse_.size() != r) throw Error(ErrorCode::Membership, "solver columns are linearly dependent");
}

bool ColumnSolver::in_span(const Vector& v) const {
  if (v.size() != ambient_dim_) return false;
  return std::all_of(consistency_.begin(), consistency_.end(),
                     [&](const SparseRow& row) { return dot(row, v) == 0; });
}

std::optional<Vector> ColumnSolver::coordinates(const Vector& v) const {
  if (!in_span(v)) return std::nullopt;
  Vector x;
  x.reserve(inverse_.size());
  for (const auto& row : inverse_) x.push_back(dot(row, v));
  return x;
}

// ---------------------------------------------------------------------------
// QuotientBasis

QuotientBasis::QuotientBasis(Subspace ambient, Subspace sub)
    : ambient_(std::move(ambient)), sub_(std::move(sub)) {
  if (!ambient_.contains(sub_)) throw Error(ErrorCode::Membership, "subspace is not contained in the ambient space");
  std::vector<Vector> chosen = sub_.basis();
  const std::size_t target = ambient_.dim();
  IncrementalBasis independent;
  for (const auto& v : chosen) independent.insert(v);
  for (const auto& v : ambient_.basis()) {
    if (chosen.size() == target) break;
    if (!independent.insert(v)) continue;
    chosen.push_back(v);
    complement_.push_back(v);
  }
  solver_ = ColumnSolver(ambient_.ambient_dim(), chosen);
}

Vector QuotientBasis::coordinates(const Vector& v) const {
  auto x = solver_.coordinates(v);
  if (!x) throw Error(ErrorCode::Membership, "vector is not in the ambient subspace");
  return Vector(x->begin() + static_cast<std::ptrdiff_t>(sub_.dim()), x->end());
}

Vector quotient_coordinates(const Subspace& ambient, const Subspace& sub, const Vector& v) {
  return QuotientBasis(ambient, sub).coordinates(v);
}

}  // namespace cdga
