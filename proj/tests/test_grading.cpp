#include <doctest.h>

#include <random>

#include "cdga/error.hpp"
#include "cdga/grading.hpp"
#include "support.hpp"

using namespace cdga;

namespace {

GeneratorSet mixed() { return GeneratorSet({{"x", 1}, {"y", 1}, {"u", 2}, {"z", 3}}); }

}  // namespace

TEST_CASE("koszul sign of transpositions") {
  const std::vector<GradedFactor> odd_pair{{1, 1}, {0, 1}};
  CHECK(koszul_sign(odd_pair) == -1);
  const std::vector<GradedFactor> even_odd{{1, 2}, {0, 1}};
  CHECK(koszul_sign(even_odd) == 1);
  const std::vector<GradedFactor> three{{2, 1}, {1, 1}, {0, 1}};
  CHECK(koszul_sign(three) == -1);  // reversing three odd factors takes three swaps
  const std::vector<GradedFactor> sorted{{0, 3}, {1, 3}};
  CHECK(koszul_sign(sorted) == 1);
}

TEST_CASE("odd generators square to zero and anticommute") {
  const GeneratorSet g = mixed();
  const Element x = Element::generator(0), y = Element::generator(1), u = Element::generator(2);
  CHECK(multiply(x, x, g).is_zero());
  CHECK(multiply(y, x, g) == -multiply(x, y, g));
  CHECK(multiply(u, x, g) == multiply(x, u, g));
  CHECK_FALSE(multiply(u, u, g).is_zero());
  CHECK(power(u, 3, g).degree(g) == 6);
  CHECK(to_string(multiply(y, x, g), g) == "-x*y");
}

TEST_CASE("generator sets reject bad input") {
  CHECK_THROWS_AS(GeneratorSet({{"a", 0}}), Error);
  CHECK_THROWS_AS(GeneratorSet({{"a", 2}, {"b", 1}}), Error);
  CHECK_THROWS_AS(GeneratorSet({{"a", 1}, {"a", 1}}), Error);
}

TEST_CASE("degree bases have the free graded-commutative dimensions") {
  // Lambda(x,y) (x) Q[u] (x) Lambda(z): count by hand.
  const GeneratorSet g = mixed();
  CHECK(degree_basis(g, 0).size() == 1);
  CHECK(degree_basis(g, 1).size() == 2);  // x y
  CHECK(degree_basis(g, 2).size() == 2);  // xy u
  CHECK(degree_basis(g, 3).size() == 3);  // xu yu z
  CHECK(degree_basis(g, 4).size() == 4);  // u^2 xyu xz yz
}

TEST_CASE("graded commutativity and associativity on 1000 random pairs") {
  std::mt19937_64 rng(99);
  auto algebras = support::property_algebras(rng);
  std::uniform_int_distribution<std::size_t> pick(0, algebras.size() - 1);
  std::uniform_int_distribution<int> deg(0, 4);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const FreeCDGA& a = algebras[pick(rng)];
    const auto& g = a.generators();
    const int p = deg(rng), q = deg(rng), r = deg(rng);
    const Element x = support::random_element(a, p, rng), y = support::random_element(a, q, rng),
                  z = support::random_element(a, r, rng);
    const Element xy = multiply(x, y, g), yx = multiply(y, x, g);
    CAPTURE(a.name());
    REQUIRE(xy == Rational((p * q) % 2 ? -1 : 1) * yx);
    REQUIRE(multiply(xy, z, g) == multiply(x, multiply(y, z, g), g));
    ++checked;
  }
  CHECK(checked == 1000);
}
