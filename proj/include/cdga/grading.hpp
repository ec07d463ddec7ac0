#pragma once

// Free graded-commutative algebras: generators, monomials, elements, and the
// Koszul sign rule. Odd generators square to zero; even generators are
// polynomial.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdga/rational.hpp"

namespace cdga {

struct Generator {
  std::string name;
  int degree = 1;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Ordered generators. The order is the well-ordering used for minimality and is
/// required to be non-decreasing in degree.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  /// Throws InvalidGenerators (degree < 1, decreasing degree) or DuplicateGenerator.
  explicit GeneratorSet(std::vector<Generator> generators);

  std::size_t size() const noexcept { return gens_.size(); }
  bool empty() const noexcept { return gens_.empty(); }
  const Generator& operator[](std::size_t i) const { return gens_.at(i); }
  int degree(std::size_t i) const { return gens_.at(i).degree; }
  const std::string& name(std::size_t i) const { return gens_.at(i).name; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  int max_degree() const;

  auto begin() const { return gens_.begin(); }
  auto end() const { return gens_.end(); }

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

 private:
  std::vector<Generator> gens_;
};

/// Canonical monomial: (generator index, exponent) pairs sorted by index, exponents > 0.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;  // the unit
  explicit Monomial(std::vector<Factor> factors);

  static Monomial unit() { return {}; }
  static Monomial generator(std::size_t index, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_unit() const noexcept { return factors_.empty(); }
  std::uint32_t exponent(std::size_t index) const;
  std::uint32_t length() const;  // total number of generator factors with multiplicity
  std::size_t max_index() const;  // largest generator index; 0 for the unit

  int degree(const GeneratorSet& gens) const;
  /// The monomial with one factor of `index` removed; requires exponent(index) > 0.
  Monomial without(std::size_t index) const;

  /// Lexicographic order of the expanded index sequences (shorter prefix first).
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Sign-aware product of monomials; sign is 0 when an odd generator repeats.
struct SignedMonomial {
  int sign = 0;
  Monomial monomial;
};
SignedMonomial multiply(const Monomial& a, const Monomial& b, const GeneratorSet& gens);

/// Sparse rational combination of monomials with no stored zeros.
class Element {
 public:
  using Terms = std::map<Monomial, Rational>;

  Element() = default;
  explicit Element(const Monomial& m, const Rational& c = Rational(1));
  static Element unit() { return Element(Monomial::unit()); }
  static Element generator(std::size_t index) { return Element(Monomial::generator(index)); }
  static Element scalar(const Rational& c) { return Element(Monomial::unit(), c); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Rational& c);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend bool operator==(const Element&, const Element&) = default;

  /// Degree when every monomial has the same degree; nullopt for zero or mixed elements.
  std::optional<int> degree(const GeneratorSet& gens) const;
  bool is_homogeneous(const GeneratorSet& gens) const;
  /// Throws GeneratorMismatch if a monomial uses an index outside `gens`.
  void check_generators(const GeneratorSet& gens) const;

 private:
  Terms terms_;
};

/// Graded-commutative product. Throws GeneratorMismatch on out-of-range indices.
Element multiply(const Element& x, const Element& y, const GeneratorSet& gens);
Element power(const Element& x, unsigned exponent, const GeneratorSet& gens);

/// Every monomial of total degree k, in lexicographic order. k = 0 yields the unit.
std::vector<Monomial> degree_basis(const GeneratorSet& gens, int k);

/// Monomials of degree k using only generators for which `allowed` is true.
std::vector<Monomial> degree_basis(const GeneratorSet& gens, int k, const std::vector<bool>& allowed);

struct GradedFactor {
  long key = 0;    // sort key (e.g. generator index)
  int degree = 0;
};
/// Sign of stably sorting `factors` by key through adjacent transpositions, each
/// swap of degrees (p, q) contributing (-1)^(p*q).
int koszul_sign(std::span<const GradedFactor> factors);

std::string to_string(const Monomial& m, const GeneratorSet& gens);
/// DSL spelling: "-a1*a2 + 1/2*b2", "0" for zero.
std::string to_string(const Element& x, const GeneratorSet& gens);

}  // namespace cdga
