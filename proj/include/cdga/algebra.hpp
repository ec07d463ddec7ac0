#pragma once

// Abstract finite-type graded algebra with a differential, seen through
// coordinates: every degree k has a finite basis and elements are vectors.
// Cohomology is computed lazily per degree and memoised.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cdga/qlinalg.hpp"

namespace cdga {

/// H^k = ker d_k / im d_{k-1} in one degree, with a fixed basis of representatives.
struct CohomologySlice {
  int degree = 0;
  std::size_t ambient = 0;       // dim A^k
  RationalMatrix differential;   // d_k : A^k -> A^{k+1}
  Subspace cycles;
  Subspace boundaries;
  QuotientBasis quotient;        // complement of boundaries inside cycles

  std::size_t dim() const noexcept { return quotient.dim(); }
  const std::vector<Vector>& representatives() const noexcept { return quotient.complement(); }
  bool is_cycle(const Vector& v) const;
  /// Class coordinates in the representative basis; throws NotClosed.
  Vector class_of(const Vector& v) const;
  /// The cocycle sum_r c_r * rep_r.
  Vector cocycle(const Vector& class_coords) const;
};

class GradedAlgebra {
 public:
  GradedAlgebra();
  virtual ~GradedAlgebra() = default;
  GradedAlgebra(const GradedAlgebra&) = default;
  GradedAlgebra& operator=(const GradedAlgebra&) = default;

  virtual std::size_t dimension(int k) const = 0;
  /// Matrix of d: A^k -> A^{k+1}, of shape dim(k+1) x dim(k).
  virtual RationalMatrix differential_matrix(int k) const = 0;
  /// Product of x in A^p and y in A^q, as a vector of A^{p+q}.
  virtual Vector multiply(int p, const Vector& x, int q, const Vector& y) const = 0;
  /// Degree through which the cohomology of this presentation agrees with the
  /// algebra it stands for; nullopt when it is complete.
  virtual std::optional<int> complete_through() const { return std::nullopt; }

  Vector unit() const;
  Vector apply_d(int k, const Vector& x) const;

  /// Thread-safe; concurrent first calls may both compute, the first stored result wins.
  const CohomologySlice& cohomology(int k) const;
  std::vector<std::size_t> betti(int through) const;

  /// Class coordinates of a closed vector; throws NotClosed.
  Vector class_of(int k, const Vector& v) const { return cohomology(k).class_of(v); }
  /// Matrix of [x] -> [c x] from H^i to H^{i+deg c}; throws NotClosed.
  RationalMatrix cup_product_map(int c_degree, const Vector& c, int i) const;

 protected:
  /// Drop memoised cohomology (used after mutation during construction).
  void reset_cohomology_cache();

 private:
  struct Memo {
    std::mutex mutex;
    std::map<int, std::shared_ptr<const CohomologySlice>> slices;
  };
  std::shared_ptr<Memo> memo_;
};

/// A finite-dimensional graded algebra given by a multiplication table in a
/// chosen basis. Used for cohomology algebras (H*, d = 0) and small test inputs.
class FiniteCDGA : public GradedAlgebra {
 public:
  using Table = std::map<std::pair<int, int>, std::vector<std::vector<Vector>>>;

  FiniteCDGA() = default;
  /// labels[k] names the basis of degree k (labels[0] must be the unit);
  /// products[{p,q}][i][j] is the product of basis i of degree p with basis j of degree q.
  /// Products with the unit are implicit. The differential is zero unless given.
  FiniteCDGA(std::string name, std::vector<std::vector<std::string>> labels, Table products,
             std::map<int, RationalMatrix> differentials = {});

  /// Q[x]/(x^{height+1}) with deg x = degree.
  static FiniteCDGA truncated_polynomial(std::string name, int degree, int height);

  const std::string& name() const noexcept { return name_; }
  int top_degree() const noexcept { return static_cast<int>(labels_.size()) - 1; }
  const std::vector<std::string>& labels(int k) const;

  std::size_t dimension(int k) const override;
  RationalMatrix differential_matrix(int k) const override;
  Vector multiply(int p, const Vector& x, int q, const Vector& y) const override;

 private:
  std::string name_;
  std::vector<std::vector<std::string>> labels_;
  Table products_;
  std::map<int, RationalMatrix> differentials_;
};

}  // namespace cdga
