#include <doctest.h>

#include "cdga/error.hpp"
#include "cdga/models.hpp"
#include "support.hpp"

using namespace cdga;
using support::poly;

TEST_CASE("Chevalley-Eilenberg complex of the Heisenberg algebra") {
  LiePresentation h;
  h.basis = {"x1", "x2", "x3"};
  h.brackets[{0, 1}] = {Rational(0), Rational(0), Rational(1)};  // [e1, e2] = e3
  const FreeCDGA a = chevalley_eilenberg("h3", h);
  const FreeCDGA ref = builtin("heisenberg3");
  CHECK(a.differentials() == ref.differentials());
  CHECK(a.betti(3) == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("a bracket violating Jacobi is rejected") {
  LiePresentation bad;
  bad.basis = {"e1", "e2", "e3", "e4"};
  bad.brackets[{0, 1}] = {Rational(0), Rational(0), Rational(1), Rational(0)};  // [e1, e2] = e3
  bad.brackets[{2, 3}] = {Rational(1), Rational(0), Rational(0), Rational(0)};  // [e3, e4] = e1
  try {
    chevalley_eilenberg("bad", bad);
    FAIL("expected JacobiFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::JacobiFailure);
  }
}

TEST_CASE("built-in names") {
  for (const std::string name : {"heisenberg3", "kt", "iwasawa", "fls", "fls-minimal", "torus3", "torus(2)",
                                 "sphere5", "cp2"})
    CHECK_NOTHROW(builtin(name));
  for (const std::string name : {"torus0", "klein", "cp", "sphere-1"}) {
    CAPTURE(name);
    CHECK_THROWS_AS(builtin(name), Error);
  }
}

TEST_CASE("tori, spheres and projective spaces") {
  CHECK(torus(4).betti(4) == std::vector<std::size_t>{1, 4, 6, 4, 1});
  CHECK(sphere(2).betti(4) == std::vector<std::size_t>{1, 0, 1, 0, 0});
  CHECK(sphere(3).betti(4) == std::vector<std::size_t>{1, 0, 0, 1, 0});
  CHECK(complex_projective(2).betti(6) == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 0});
  CHECK(complex_projective(3).betti(6) == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1});
  for (const auto& a : {torus(2), torus(4), sphere(2), sphere(7), complex_projective(2)}) {
    CAPTURE(a.name());
    CHECK(a.validate().ok());
    CHECK(a.poincare_pairing().nondegenerate());
  }
}

TEST_CASE("kt is the Heisenberg model times a circle") {
  const FreeCDGA p = tensor_product(builtin("heisenberg3"), torus(1));
  const FreeCDGA kt = builtin("kt");
  // x1 x2 x3 t1 -> a1 a2 a3 a4
  const std::vector<Element> images{poly(kt, "a1"), poly(kt, "a2"), poly(kt, "a3"), poly(kt, "a4")};
  const MorphismReport r = morphism_check(p, kt, images);
  CHECK(r.commutes_with_d);
  CHECK(r.quasi_isomorphism);
}

TEST_CASE("the minimal model of the solvable example maps quasi-isomorphically to its 1-forms") {
  const FreeCDGA m = builtin("fls-minimal");
  const FreeCDGA fls = builtin("fls");
  const MorphismReport r = morphism_check(m, fls, fls_comparison());
  CHECK(r.commutes_with_d);
  CHECK(r.checked_through == 3);
  CHECK(r.iso_through == 3);
  CHECK(r.quasi_isomorphism);

  // The printed images of b3 and b4 have the opposite sign. With them the map
  // fails to commute with d on b3 (b4 is consistent with either choice as long
  // as it matches b3), so the built-in comparison negates both.
  std::vector<Element> printed = fls_comparison();
  printed[4] = poly(fls, "1/2*gamma2*delta1 - 1/2*gamma1*delta2");
  printed[5] = poly(fls, "1/2*gamma1*gamma2");
  const MorphismReport literal = morphism_check(m, fls, printed);
  CHECK_FALSE(literal.commutes_with_d);
  CHECK(literal.noncommuting == std::vector<std::string>{"b3"});
}

TEST_CASE("morphisms of the wrong degree are rejected") {
  const FreeCDGA kt = builtin("kt");
  const std::vector<Element> images{poly(kt, "a1*a2"), Element(), Element(), Element()};
  CHECK_THROWS_AS(morphism_check(kt, kt, images), Error);
}
