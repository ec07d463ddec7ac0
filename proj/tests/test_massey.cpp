#include <doctest.h>

#include "cdga/error.hpp"
#include "cdga/massey.hpp"
#include "cdga/models.hpp"
#include "support.hpp"

using namespace cdga;
using support::poly;

namespace {

ErrorCode code_of_triple(const FreeCDGA& a, const char* x, const char* y, const char* z) {
  try {
    massey_triple(a, poly(a, x), poly(a, y), poly(a, z));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Parse;
}

// Whether the representative is c*[target] modulo the indeterminacy for some c != 0.
bool nonzero_multiple_modulo(const MasseyResult& m, const Vector& target) {
  if (m.indeterminacy.contains(target)) return false;
  std::vector<Vector> with_target = m.indeterminacy.basis();
  with_target.push_back(target);
  const Subspace bigger = Subspace::span(target.size(), with_target);
  return bigger.contains(m.representative) && !m.indeterminacy.contains(m.representative);
}

}  // namespace

TEST_CASE("degree windows") {
  CHECK(within_windows({1, 1, 1}, 1));
  CHECK_FALSE(within_windows({2, 1, 1}, 1));
  CHECK(within_windows({2, 1, 1}, 2));
  CHECK(within_windows({2, 1, 1, 1}, 2));
  CHECK_FALSE(within_windows({2, 2, 1, 1}, 2));
}

TEST_CASE("kt: <a1, a1, a2> is a nonvanishing triple product") {
  const FreeCDGA kt = builtin("kt");
  const MasseyResult m = massey_triple(kt, poly(kt, "a1"), poly(kt, "a1"), poly(kt, "a2"));
  CHECK(m.degree == 2);
  CHECK(m.verdict == MasseyVerdict::Nonvanishing);
  CHECK(m.affine);
  CHECK(nonzero_multiple_modulo(m, kt.class_coordinates(poly(kt, "a1*a3"))));
  // The parameter family is the classical indeterminacy a1*H^1 + H^1*a2.
  const Subspace classical = triple_indeterminacy(kt, poly(kt, "a1"), poly(kt, "a1"), poly(kt, "a2"));
  CHECK(classical.dim() == 2);
  CHECK(classical.contains(m.indeterminacy));
  CHECK(m.indeterminacy.contains(classical));
}

TEST_CASE("kt: the obstruction scan at s = 1 finds triple products") {
  const MasseyScan scan = massey_obstruction_scan(builtin("kt"), 1, 3);
  CHECK(scan.hits.size() >= 1);
  CHECK_FALSE(scan.capped);
  for (const auto& h : scan.hits) {
    CHECK(h.degrees == std::vector<int>{1, 1, 1});
    CHECK(h.result.verdict == MasseyVerdict::Nonvanishing);
  }
}

TEST_CASE("torus Massey products vanish") {
  for (int n = 2; n <= 4; ++n) {
    const FreeCDGA t = torus(n);
    CAPTURE(n);
    const MasseyScan scan = massey_obstruction_scan(t, n, 4);
    CHECK(scan.hits.empty());
    CHECK(scan.evaluated > 0);
  }
  // On the torus a product is defined only when neighbouring classes multiply to zero.
  const FreeCDGA t = torus(3);
  CHECK(massey_triple(t, poly(t, "t1"), poly(t, "t1"), poly(t, "t1")).verdict == MasseyVerdict::Vanishes);
  CHECK(massey_triple(t, poly(t, "t1 + t2"), poly(t, "t1 + t2"), poly(t, "t1 + t2")).verdict == MasseyVerdict::Vanishes);
  CHECK(massey_higher(t, {poly(t, "t1"), poly(t, "t1"), poly(t, "t1"), poly(t, "t1")}).verdict ==
        MasseyVerdict::Vanishes);
}

TEST_CASE("solvable example: <[d1 d2], [b], [b], [b]> is nonvanishing") {
  const FreeCDGA fls = builtin("fls");
  const std::vector<Element> classes{poly(fls, "delta1*delta2"), poly(fls, "beta"), poly(fls, "beta"),
                                     poly(fls, "beta")};
  const MasseyResult m = massey_higher(fls, classes);
  CHECK(m.degree == 3);
  CHECK(m.verdict == MasseyVerdict::Nonvanishing);
  CHECK(m.affine);
  CHECK(nonzero_multiple_modulo(m, fls.class_coordinates(poly(fls, "beta*gamma1*gamma2"))));
  // The family is spanned by [alpha d1 d2] and [beta g1 d2].
  const Subspace family = Subspace::span(
      4, std::vector<Vector>{fls.class_coordinates(poly(fls, "alpha*delta1*delta2")),
                             fls.class_coordinates(poly(fls, "beta*gamma1*delta2"))});
  CHECK(m.indeterminacy.contains(family));
  CHECK(family.contains(m.indeterminacy));
}

TEST_CASE("solvable example: the scan at s = 2 finds the quadruple product") {
  const MasseyScan scan = massey_obstruction_scan(builtin("fls"), 2, 4);
  bool quadruple = false;
  for (const auto& h : scan.hits) quadruple |= h.degrees == std::vector<int>{2, 1, 1, 1};
  CHECK(quadruple);
}

TEST_CASE("undefined and ill-formed products") {
  const FreeCDGA t = torus(3);
  CHECK(code_of_triple(t, "t1", "t2", "t3") == ErrorCode::NotDefined);  // [t1][t2] != 0
  const FreeCDGA kt = builtin("kt");
  CHECK(code_of_triple(kt, "a3", "a1", "a1") == ErrorCode::NotClosed);
  try {
    massey_higher(kt, {poly(kt, "a1"), poly(kt, "a2")});
    FAIL("two classes are not a Massey product");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDefined);
  }
}

TEST_CASE("massey_product works on a finite algebra") {
  // H*(S^1 x S^1) with d = 0: every defined triple vanishes.
  const FreeCDGA t = torus(2);
  const FiniteCDGA h = cohomology_cdga(t, 2);
  const Vector a{Rational(1), Rational(0)};
  const MasseyResult m = massey_product(h, {{1, a}, {1, a}, {1, a}});
  CHECK(m.verdict == MasseyVerdict::Vanishes);
}
