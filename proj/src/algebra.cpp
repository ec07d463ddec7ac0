#include "cdga/algebra.hpp"

#include "cdga/error.hpp"

namespace cdga {

bool CohomologySlice::is_cycle(const Vector& v) const {
  if (v.size() != ambient) return false;
  return is_zero(differential.apply(v));
}

Vector CohomologySlice::class_of(const Vector& v) const {
  if (v.size() != ambient)
    throw Error(ErrorCode::DimensionMismatch, "vector length differs from the degree slice");
  if (!is_cycle(v)) throw Error(ErrorCode::NotClosed, "element of degree " + std::to_string(degree) + " is not closed");
  return quotient.coordinates(v);
}

Vector CohomologySlice::cocycle(const Vector& class_coords) const {
  const auto& reps = representatives();
  if (class_coords.size() != reps.size())
    throw Error(ErrorCode::DimensionMismatch, "class coordinates have the wrong length");
  Vector out = zero_vector(ambient);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    if (class_coords[r] == 0) continue;
    for (std::size_t i = 0; i < ambient; ++i) out[i] += class_coords[r] * reps[r][i];
  }
  return out;
}

GradedAlgebra::GradedAlgebra() : memo_(std::make_shared<Memo>()) {}

void GradedAlgebra::reset_cohomology_cache() { memo_ = std::make_shared<Memo>(); }

Vector GradedAlgebra::unit() const {
  Vector u = zero_vector(dimension(0));
  if (!u.empty()) u[0] = 1;
  return u;
}

Vector GradedAlgebra::apply_d(int k, const Vector& x) const { return differential_matrix(k).apply(x); }

const CohomologySlice& GradedAlgebra::cohomology(int k) const {
  {
    std::lock_guard lock(memo_->mutex);
    auto it = memo_->slices.find(k);
    if (it != memo_->slices.end()) return *it->second;
  }
  auto slice = std::make_shared<CohomologySlice>();
  slice->degree = k;
  slice->ambient = k < 0 ? 0 : dimension(k);
  slice->differential = k < 0 ? RationalMatrix(0, 0) : differential_matrix(k);
  slice->cycles = kernel_basis(slice->differential);
  if (k <= 0) {
    slice->boundaries = Subspace::zero(slice->ambient);
  } else {
    slice->boundaries = image_basis(differential_matrix(k - 1));
  }
  slice->quotient = QuotientBasis(slice->cycles, slice->boundaries);

  std::lock_guard lock(memo_->mutex);
  auto [it, inserted] = memo_->slices.try_emplace(k, std::move(slice));
  return *it->second;
}

std::vector<std::size_t> GradedAlgebra::betti(int through) const {
  std::vector<std::size_t> b;
  for (int k = 0; k <= through; ++k) b.push_back(cohomology(k).dim());
  return b;
}

RationalMatrix GradedAlgebra::cup_product_map(int c_degree, const Vector& c, int i) const {
  if (!cohomology(c_degree).is_cycle(c))
    throw Error(ErrorCode::NotClosed, "cup product factor is not closed");
  const auto& source = cohomology(i);
  const auto& target = cohomology(i + c_degree);
  RationalMatrix m(target.dim(), source.dim());
  for (std::size_t j = 0; j < source.dim(); ++j) {
    Vector image = multiply(c_degree, c, i, source.representatives()[j]);
    Vector coords = target.class_of(image);
    for (std::size_t r = 0; r < coords.size(); ++r)
      if (coords[r] != 0) m.set(r, j, coords[r]);
  }
  return m;
}

// ---------------------------------------------------------------------------

FiniteCDGA::FiniteCDGA(std::string name, std::vector<std::vector<std::string>> labels, Table products,
                       std::map<int, RationalMatrix> differentials)
    : name_(std::move(name)), labels_(std::move(labels)), products_(std::move(products)),
      differentials_(std::move(differentials)) {
  if (labels_.empty() || labels_[0].size() != 1)
    throw Error(ErrorCode::DimensionMismatch, "a finite algebra needs a one-dimensional degree 0");
  for (const auto& [key, table] : products_) {
    const auto [p, q] = key;
    if (table.size() != dimension(p))
      throw Error(ErrorCode::DimensionMismatch, "product table has the wrong number of rows");
    for (const auto& row : table) {
      if (row.size() != dimension(q))
        throw Error(ErrorCode::DimensionMismatch, "product table has the wrong number of columns");
      for (const auto& v : row)
        if (v.size() != dimension(p + q))
          throw Error(ErrorCode::DimensionMismatch, "product vector has the wrong length");
    }
  }
}

FiniteCDGA FiniteCDGA::truncated_polynomial(std::string name, int degree, int height) {
  std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(degree * height + 1));
  labels[0] = {"1"};
  for (int e = 1; e <= height; ++e)
    labels[static_cast<std::size_t>(e * degree)] = {e == 1 ? "x" : "x^" + std::to_string(e)};
  Table products;
  for (int a = 1; a <= height; ++a) {
    for (int b = 1; b <= height; ++b) {
      const std::size_t dim = a + b <= height ? 1 : 0;
      Vector v(dim, Rational(1));
      products[{a * degree, b * degree}] = {{v}};
    }
  }
  return FiniteCDGA(std::move(name), std::move(labels), std::move(products));
}

const std::vector<std::string>& FiniteCDGA::labels(int k) const {
  static const std::vector<std::string> none;
  if (k < 0 || k > top_degree()) return none;
  return labels_[static_cast<std::size_t>(k)];
}

std::size_t FiniteCDGA::dimension(int k) const { return labels(k).size(); }

RationalMatrix FiniteCDGA::differential_matrix(int k) const {
  auto it = differentials_.find(k);
  if (it != differentials_.end()) return it->second;
  return RationalMatrix(dimension(k + 1), dimension(k));
}

Vector FiniteCDGA::multiply(int p, const Vector& x, int q, const Vector& y) const {
  if (x.size() != dimension(p) || y.size() != dimension(q))
    throw Error(ErrorCode::DimensionMismatch, "factor has the wrong length");
  Vector out = zero_vector(dimension(p + q));
  if (out.empty()) return out;
  if (p == 0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[0] * y[i];
    return out;
  }
  if (q == 0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] * y[0];
    return out;
  }
  auto it = products_.find({p, q});
  if (it == products_.end()) return out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      const Rational c = x[i] * y[j];
      const Vector& v = it->second[i][j];
      for (std::size_t r = 0; r < out.size(); ++r)
        if (v[r] != 0) out[r] += c * v[r];
    }
  }
  return out;
}

}  // namespace cdga
