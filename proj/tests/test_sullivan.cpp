#include <doctest.h>

#include "cdga/error.hpp"
#include "cdga/formality.hpp"
#include "cdga/models.hpp"
#include "cdga/sullivan.hpp"
#include "support.hpp"

using namespace cdga;

namespace {

std::vector<int> degrees(const FreeCDGA& m) {
  std::vector<int> out;
  for (const auto& g : m.generators()) out.push_back(g.degree);
  return out;
}

// Generators whose differential is nonzero.
std::vector<int> non_closed_degrees(const FreeCDGA& m) {
  std::vector<int> out;
  for (std::size_t i = 0; i < m.generators().size(); ++i)
    if (!m.differentials()[i].is_zero()) out.push_back(m.generators().degree(i));
  return out;
}

// x^p up to a nonzero scalar.
bool is_multiple_of_power(const Element& e, std::size_t x, std::uint32_t p) {
  return e.size() == 1 && e.terms().begin()->first == Monomial::generator(x, p) && e.terms().begin()->second != 0;
}

}  // namespace

TEST_CASE("minimality test") {
  CHECK(is_minimal(builtin("kt")));
  CHECK(is_minimal(builtin("fls-minimal")));
  CHECK(is_minimal(builtin("cp2")));
  CHECK_FALSE(is_minimal(builtin("fls")));
}

TEST_CASE("the cohomology of S^2 has model x2, y3 with d y3 = x2^2") {
  const FiniteCDGA h = FiniteCDGA::truncated_polynomial("S2", 2, 1);
  const MinimalModelResult r = minimal_model_up_to(h, 4);
  CHECK(degrees(r.model) == std::vector<int>{2, 3});
  CHECK(r.model.differentials()[0].is_zero());
  CHECK(is_multiple_of_power(r.model.differentials()[1], 0, 2));
  CHECK(r.model.betti(5) == std::vector<std::size_t>{1, 0, 1, 0, 0, 0});
  CHECK(r.ranks == std::vector<std::size_t>{1, 0, 1, 0, 0, 0});
}

TEST_CASE("the cohomology of CP^2 has model x2, y5 with d y5 = x2^3") {
  const FiniteCDGA h = FiniteCDGA::truncated_polynomial("CP2", 2, 2);
  const MinimalModelResult r = minimal_model_up_to(h, 6);
  CHECK(degrees(r.model) == std::vector<int>{2, 5});
  CHECK(is_multiple_of_power(r.model.differentials()[1], 0, 3));
  CHECK(r.model.betti(7) == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 0, 0});
}

TEST_CASE("the construction is idempotent on kt") {
  const FreeCDGA kt = builtin("kt");
  const MinimalModelResult r = minimal_model_up_to(kt, 3);
  CHECK(degrees(r.model) == std::vector<int>{1, 1, 1, 1});
  CHECK(non_closed_degrees(r.model) == std::vector<int>{1});
  CHECK(r.model.betti(4) == kt.betti(4));
  const MorphismReport m = morphism_check(r.model, kt, comparison_elements(r, kt), 4);
  CHECK(m.commutes_with_d);
  CHECK(m.quasi_isomorphism);
  // A second pass reproduces the same shape.
  const MinimalModelResult again = minimal_model_up_to(r.model, 3);
  CHECK(degrees(again.model) == degrees(r.model));
  CHECK(non_closed_degrees(again.model) == non_closed_degrees(r.model));
}

TEST_CASE("comparison morphisms are quasi-isomorphisms through the bound") {
  for (const std::string name : {"iwasawa", "fls", "heisenberg3"}) {
    CAPTURE(name);
    const FreeCDGA a = builtin(name);
    const MinimalModelResult r = minimal_model_up_to(a, 2);
    const MorphismReport m = morphism_check(r.model, a, comparison_elements(r, a), 2);
    CHECK(m.commutes_with_d);
    CHECK(m.iso_through >= 2);
    CHECK(is_minimal(r.model));
  }
}

TEST_CASE("the solvable example has two generators in degree 1 and four in degree 2") {
  const MinimalModelResult r = minimal_model_up_to(builtin("fls"), 2);
  CHECK(degrees(r.model) == std::vector<int>{1, 1, 2, 2, 2, 2});
  CHECK(non_closed_degrees(r.model) == std::vector<int>{2, 2});
}

TEST_CASE("Miller pattern: no non-closed generators below 2k-1 for (k-1)-connected inputs") {
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    const FiniteCDGA h = FiniteCDGA::truncated_polynomial("S", n, 1);
    const MinimalModelResult r = minimal_model_up_to(h, 2 * n);
    for (int d : non_closed_degrees(r.model)) CHECK(d >= 2 * n - 1);
    // The same on the built-in model through the splitting.
    const Splitting s = canonical_splitting(sphere(n), 2 * n - 2);
    CHECK(s.injective_empty());
  }
  const MinimalModelResult cp = minimal_model_up_to(FiniteCDGA::truncated_polynomial("CP2", 2, 2), 6);
  for (int d : non_closed_degrees(cp.model)) CHECK(d >= 3);
  CHECK(canonical_splitting(complex_projective(2), 2).injective_empty());
}

TEST_CASE("a wedge of two circles has no finite degree-1 model") {
  const FiniteCDGA wedge("wedge", {{"1"}, {"a", "b"}}, {});
  try {
    minimal_model_up_to(wedge, 2, MinimalModelOptions{8});
    FAIL("expected NonNilpotentDegreeOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonNilpotent);
  }
}
