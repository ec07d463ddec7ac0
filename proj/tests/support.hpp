#pragma once

// Random inputs and small helpers shared by the test executables.

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cdga/cdga.hpp"
#include "cdga/dsl.hpp"
#include "cdga/models.hpp"

namespace support {

using cdga::Element;
using cdga::FreeCDGA;
using cdga::Rational;

inline Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  int n = num(rng);
  if (n == 0) n = 1;
  Rational q(n);
  q /= den(rng);
  return q;
}

/// A sum of up to `terms` random monomials of degree k (zero when the slice is empty).
inline Element random_element(const FreeCDGA& a, int k, std::mt19937_64& rng, int terms = 3) {
  const auto& basis = a.basis(k);
  Element x;
  if (basis.empty()) return x;
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> count(1, terms);
  for (int t = count(rng); t > 0; --t) x.add_term(basis[pick(rng)], small_rational(rng));
  return x;
}

inline Element poly(const FreeCDGA& a, std::string_view text) { return cdga::parse_polynomial(text, a.generators()); }

/// Minimal algebra on generators of degree 1 and 3 (at most 6), built one
/// generator at a time: d of the new generator is a random closed element of the
/// algebra on the earlier generators, so d^2 = 0 and minimality hold by
/// construction. The declared dimension is the top degree of the exterior algebra.
inline FreeCDGA random_minimal(std::mt19937_64& rng, const std::string& name) {
  std::uniform_int_distribution<int> ones(2, 5);
  const int n1 = ones(rng);
  std::uniform_int_distribution<int> threes(0, std::min(2, 6 - n1));
  const int n3 = threes(rng);
  std::vector<cdga::Generator> gens;
  std::vector<Element> diff;
  std::uniform_int_distribution<int> coin(0, 2), sign(-1, 1);
  for (int i = 0; i < n1 + n3; ++i) {
    const int deg = i < n1 ? 1 : 3;
    const FreeCDGA sub("sub", cdga::GeneratorSet(gens), diff);
    Element dx;
    if (!gens.empty() && coin(rng) != 0) {
      const auto closed = cdga::kernel_basis(sub.differential_matrix(deg + 1));
      for (const auto& v : closed.basis()) {
        const int c = sign(rng);
        if (c != 0) dx += Rational(c) * sub.element(v, deg + 1);
      }
    }
    gens.push_back({(deg == 1 ? "x" : "y") + std::to_string(i + 1), deg});
    diff.push_back(dx);
  }
  cdga::FreeCDGAOptions opt;
  opt.formal_dim = n1 + 3 * n3;
  opt.minimal = true;
  return FreeCDGA(name, cdga::GeneratorSet(std::move(gens)), std::move(diff), std::move(opt));
}

/// Algebras with generators in several degrees, used by the algebraic property suites.
inline std::vector<FreeCDGA> property_algebras(std::mt19937_64& rng) {
  std::vector<FreeCDGA> out{cdga::builtin("kt"),      cdga::builtin("iwasawa"), cdga::builtin("fls"),
                            cdga::builtin("fls-minimal"), cdga::builtin("cp2"),  cdga::builtin("sphere4"),
                            cdga::tensor_product(cdga::builtin("sphere3"), cdga::builtin("fls-minimal"))};
  for (int i = 0; i < 5; ++i) out.push_back(random_minimal(rng, "random" + std::to_string(i)));
  return out;
}

}  // namespace support
