#include "cdga/grading.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "cdga/error.hpp"

namespace cdga {

// ---------------------------------------------------------------------------
// GeneratorSet

GeneratorSet::GeneratorSet(std::vector<Generator> generators) : gens_(std::move(generators)) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& g = gens_[i];
    if (g.degree < 1)
      throw Error(ErrorCode::InvalidGenerators, "generator '" + g.name + "' has degree < 1");
    if (i > 0 && g.degree < gens_[i - 1].degree)
      throw Error(ErrorCode::InvalidGenerators,
                  "generator '" + g.name + "' breaks the non-decreasing degree order");
    if (!seen.insert(g.name).second)
      throw Error(ErrorCode::DuplicateGenerator, "generator '" + g.name + "' declared twice");
  }
}

std::optional<std::size_t> GeneratorSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

int GeneratorSet::max_degree() const { return gens_.empty() ? 0 : gens_.back().degree; }

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  std::vector<Factor> merged;
  for (const auto& f : factors_) {
    if (f.second == 0) continue;
    if (!merged.empty() && merged.back().first == f.first)
      merged.back().second += f.second;
    else
      merged.push_back(f);
  }
  factors_ = std::move(merged);
}

Monomial Monomial::generator(std::size_t index, std::uint32_t exponent) {
  return Monomial({{static_cast<std::uint32_t>(index), exponent}});
}

std::uint32_t Monomial::exponent(std::size_t index) const {
  for (const auto& [i, e] : factors_)
    if (i == index) return e;
  return 0;
}

std::uint32_t Monomial::length() const {
  std::uint32_t n = 0;
  for (const auto& f : factors_) n += f.second;
  return n;
}

std::size_t Monomial::max_index() const { return factors_.empty() ? 0 : factors_.back().first; }

int Monomial::degree(const GeneratorSet& gens) const {
  int d = 0;
  for (const auto& [i, e] : factors_) d += gens.degree(i) * static_cast<int>(e);
  return d;
}

Monomial Monomial::without(std::size_t index) const {
  Monomial m = *this;
  for (auto it = m.factors_.begin(); it != m.factors_.end(); ++it) {
    if (it->first != index) continue;
    if (--it->second == 0) m.factors_.erase(it);
    return m;
  }
  return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  const auto& fa = a.factors_;
  const auto& fb = b.factors_;
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) return fa[i].first <=> fb[i].first;
    if (fa[i].second != fb[i].second) {
      // The side with fewer copies continues with a larger index, or stops.
      if (fa[i].second < fb[i].second)
        return i + 1 == fa.size() ? std::strong_ordering::less : std::strong_ordering::greater;
      return i + 1 == fb.size() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
  }
  return fa.size() <=> fb.size();
}

SignedMonomial multiply(const Monomial& a, const Monomial& b, const GeneratorSet& gens) {
  const std::size_t n = gens.size();
  if ((!a.is_unit() && a.max_index() >= n) || (!b.is_unit() && b.max_index() >= n))
    throw Error(ErrorCode::GeneratorMismatch, "monomial refers to a generator outside the set");

  // Moving each odd factor of b left past the odd factors of a with larger index.
  int parity = 0;
  for (const auto& [ib, eb] : b.factors()) {
    if (gens.degree(ib) % 2 == 0) continue;
    for (const auto& [ia, ea] : a.factors()) {
      if (gens.degree(ia) % 2 == 0) continue;
      if (ia == ib) return {0, {}};
      if (ia > ib) parity ^= static_cast<int>((ea * eb) & 1U);
    }
  }
  std::vector<Monomial::Factor> all = a.factors();
  all.insert(all.end(), b.factors().begin(), b.factors().end());
  return {parity ? -1 : 1, Monomial(std::move(all))};
}

// ---------------------------------------------------------------------------
// Element

Element::Element(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.emplace(m, c);
}

Rational Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Element& Element::operator+=(const Element& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

std::optional<int> Element::degree(const GeneratorSet& gens) const {
  std::optional<int> d;
  for (const auto& [m, c] : terms_) {
    const int dm = m.degree(gens);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

bool Element::is_homogeneous(const GeneratorSet& gens) const { return is_zero() || degree(gens).has_value(); }

void Element::check_generators(const GeneratorSet& gens) const {
  for (const auto& [m, c] : terms_)
    if (!m.is_unit() && m.max_index() >= gens.size())
      throw Error(ErrorCode::GeneratorMismatch, "element refers to a generator outside the set");
}

Element multiply(const Element& x, const Element& y, const GeneratorSet& gens) {
  x.check_generators(gens);
  y.check_generators(gens);
  Element out;
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      auto [sign, m] = multiply(mx, my, gens);
      if (sign == 0) continue;
      Rational c = cx * cy;
      if (sign < 0) c = -c;
      out.add_term(m, c);
    }
  }
  return out;
}

Element power(const Element& x, unsigned exponent, const GeneratorSet& gens) {
  Element out = Element::unit();
  for (unsigned i = 0; i < exponent; ++i) out = multiply(out, x, gens);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Monomial> degree_basis(const GeneratorSet& gens, int k, const std::vector<bool>& allowed) {
  std::vector<Monomial> out;
  if (k < 0) return out;
  std::vector<Monomial::Factor> current;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    if (i == gens.size()) return;
    rec(i + 1, remaining);
    if (!allowed[i]) return;
    const int deg = gens.degree(i);
    const int max_exp = deg % 2 == 1 ? 1 : remaining / deg;
    for (int e = 1; e <= max_exp && e * deg <= remaining; ++e) {
      current.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(e));
      rec(i + 1, remaining - e * deg);
      current.pop_back();
    }
  };
  rec(0, k);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> degree_basis(const GeneratorSet& gens, int k) {
  return degree_basis(gens, k, std::vector<bool>(gens.size(), true));
}

int koszul_sign(std::span<const GradedFactor> factors) {
  std::vector<GradedFactor> v(factors.begin(), factors.end());
  int sign = 1;
  // Bubble sort is stable and makes the adjacent transpositions explicit.
  for (std::size_t pass = 0; pass + 1 < v.size(); ++pass) {
    for (std::size_t j = 0; j + 1 < v.size() - pass; ++j) {
      if (v[j + 1].key < v[j].key) {
        if ((v[j].degree * v[j + 1].degree) % 2 != 0) sign = -sign;
        std::swap(v[j], v[j + 1]);
      }
    }
  }
  return sign;
}

std::string to_string(const Monomial& m, const GeneratorSet& gens) {
  if (m.is_unit()) return "1";
  std::string s;
  for (const auto& [i, e] : m.factors()) {
    for (std::uint32_t k = 0; k < e; ++k) {
      if (!s.empty()) s += '*';
      s += gens.name(i);
    }
  }
  return s;
}

std::string to_string(const Element& x, const GeneratorSet& gens) {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : x.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    first = false;
    if (m.is_unit()) {
      s += to_string(mag);
    } else {
      if (mag != 1) s += to_string(mag) + "*";
      s += to_string(m, gens);
    }
  }
  return s;
}

}  // namespace cdga
