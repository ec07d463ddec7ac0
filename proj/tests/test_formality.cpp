#include <doctest.h>

#include <random>

#include "cdga/error.hpp"
#include "cdga/formality.hpp"
#include "cdga/lefschetz.hpp"
#include "cdga/models.hpp"
#include "support.hpp"

using namespace cdga;
using support::poly;

namespace {

FormalityStatus status(const FreeCDGA& a, int s) { return s_formality(a, s).status; }

void check_witness(const FreeCDGA& a, int s, const char* expected) {
  const FormalityVerdict v = s_formality(a, s);
  REQUIRE(v.status == FormalityStatus::NotSFormal);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->element == poly(a, expected));
  CHECK(a.d(v.witness->element).is_zero());
  CHECK_FALSE(a.is_exact(v.witness->element));
  CHECK(in_ideal(a, v.splitting, v.witness_level, v.witness->element));
  REQUIRE(v.robustness.has_value());
  CHECK(v.robustness->robust);
  CHECK(verify_certificate(a, v));
}

FreeCDGA h3_times_circle() {
  FreeCDGA p = tensor_product(builtin("heisenberg3"), torus(1));
  FreeCDGAOptions opt = p.options();
  opt.formal_dim = 4;
  opt.omega = poly(p, "x1*x3 + x2*t1");
  return p.with_options(opt).with_name("h3xS1");
}

}  // namespace

TEST_CASE("kt: 0-formal, not 1-formal with witness a1*a3") {
  const FreeCDGA kt = builtin("kt");
  CHECK(status(kt, 0) == FormalityStatus::SFormal);
  check_witness(kt, 1, "a1*a3");
  const Splitting s = canonical_splitting(kt, 1);
  REQUIRE(s.degrees.size() == 1);
  CHECK(s.degrees[0].closed.size() == 3);
  CHECK(s.degrees[0].injective == std::vector<Element>{poly(kt, "a3")});
}

TEST_CASE("iwasawa: not 1-formal with witness c1*a1*a2") {
  const FreeCDGA a = builtin("iwasawa");
  check_witness(a, 1, "a1*a2*c1");
  CHECK(canonical_splitting(a, 1).degrees[0].injective.size() == 2);
}

TEST_CASE("solvable example: 1-formal, not 2-formal with witness b4*a2") {
  const FreeCDGA m = builtin("fls-minimal");
  const FormalityVerdict one = s_formality(m, 1);
  CHECK(one.status == FormalityStatus::SFormal);
  CHECK(verify_certificate(m, one));
  CHECK(one.phi.size() == 2);
  check_witness(m, 2, "a2*b4");
  const Splitting s = canonical_splitting(m, 2);
  CHECK(s.degrees[1].closed == std::vector<Element>{poly(m, "b1"), poly(m, "b2")});
  CHECK(s.degrees[1].injective == std::vector<Element>{poly(m, "b3"), poly(m, "b4")});
}

TEST_CASE("tori are formal") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const FormalityReport r = formality(torus(n), true);
    CHECK(r.status() == "FORMAL");
    CHECK(r.agree);
    CHECK(verify_certificate(torus(n), r.verdict));
  }
}

TEST_CASE("no built-in minimal model is left undecided") {
  for (const std::string name : {"heisenberg3", "kt", "iwasawa", "fls-minimal", "torus2", "torus3", "sphere2",
                                 "sphere3", "sphere4", "cp2", "cp3"}) {
    const FreeCDGA a = builtin(name);
    for (int s = 0; s <= std::min(*a.formal_dim(), 4); ++s) {
      CAPTURE(name);
      CAPTURE(s);
      const FormalityVerdict v = s_formality(a, s);
      CHECK(v.status != FormalityStatus::Undecided);
      CHECK(verify_certificate(a, v));
    }
  }
}

TEST_CASE("non-minimal or dimensionless input is refused") {
  CHECK_THROWS_AS(s_formality(builtin("fls"), 1), Error);
  const FreeCDGA kt = builtin("kt");
  FreeCDGAOptions opt = kt.options();
  opt.formal_dim.reset();
  try {
    s_formality(kt.with_options(opt), 1);
    FAIL("expected MissingDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingDimension);
  }
}

TEST_CASE("a tampered certificate does not replay") {
  const FreeCDGA kt = builtin("kt");
  FormalityVerdict v = s_formality(kt, 1);
  REQUIRE(v.witness.has_value());
  v.witness->element = poly(kt, "a1*a2");  // closed but exact
  CHECK_FALSE(verify_certificate(kt, v));
  FormalityVerdict f = s_formality(kt, 0);
  f.status = FormalityStatus::SFormal;
  f.s = 1;
  CHECK_FALSE(verify_certificate(kt, f));
}

TEST_CASE("formality from the half-dimension bound agrees with the full bound") {
  for (const std::string name : {"kt", "fls-minimal", "iwasawa", "heisenberg3"}) {
    CAPTURE(name);
    const FormalityReport r = formality(builtin(name), true);
    CHECK(r.status() == "NOT_FORMAL");
    REQUIRE(r.strict.has_value());
    CHECK(r.strict->status == FormalityStatus::NotSFormal);
    CHECK(r.agree);
  }
  const FormalityReport cp = formality(builtin("cp3"), true);
  CHECK(cp.status() == "FORMAL");
  CHECK(cp.agree);
}

TEST_CASE("verdicts are monotone in s on 50 random minimal algebras") {
  std::mt19937_64 rng(271828);
  int decided = 0, negative = 0;
  for (int t = 0; t < 50; ++t) {
    const FreeCDGA a = support::random_minimal(rng, "random" + std::to_string(t));
    CAPTURE(emit(a));
    std::vector<FormalityStatus> by_s;
    for (int s = 0; s <= 4; ++s) {
      const FormalityVerdict v = s_formality(a, s);
      REQUIRE(verify_certificate(a, v));
      by_s.push_back(v.status);
    }
    for (int s = 0; s < 4; ++s) {
      for (int u = s + 1; u <= 4; ++u) {
        if (by_s[s] == FormalityStatus::NotSFormal) CHECK(by_s[u] != FormalityStatus::SFormal);
        if (by_s[u] == FormalityStatus::SFormal) CHECK(by_s[s] != FormalityStatus::NotSFormal);
      }
    }
    if (by_s[4] != FormalityStatus::Undecided) ++decided;
    if (by_s[4] == FormalityStatus::NotSFormal) ++negative;
  }
  MESSAGE("decided at s=4 on " << decided << " of 50, " << negative << " not 4-formal");
  CHECK(decided > 0);
  CHECK(negative > 0);
  CHECK(negative < 50);
}

TEST_CASE("s-formality and s-Lefschetz of products") {
  const std::vector<FreeCDGA> factors{torus(2), builtin("kt"), h3_times_circle()};
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i; j < factors.size(); ++j) {
      const FreeCDGA& a = factors[i];
      const FreeCDGA& b = factors[j];
      const FreeCDGA p = tensor_product(a, b, true);
      CAPTURE(p.name());
      for (int s = 0; s <= 2; ++s) {
        CAPTURE(s);
        const FormalityStatus sa = status(a, s), sb = status(b, s), sp = status(p, s);
        REQUIRE(sa != FormalityStatus::Undecided);
        REQUIRE(sb != FormalityStatus::Undecided);
        CHECK(sp != FormalityStatus::Undecided);
        CHECK((sp == FormalityStatus::SFormal) ==
              (sa == FormalityStatus::SFormal && sb == FormalityStatus::SFormal));
      }
      for (int s = 0; s <= 1; ++s) {
        CAPTURE(s);
        const bool la = s_lefschetz(a, s).passes, lb = s_lefschetz(b, s).passes;
        CHECK(s_lefschetz(p, s).passes == (la && lb));
      }
    }
  }
}

TEST_CASE("simply connected built-ins are 2-formal") {
  for (const std::string name : {"sphere2", "sphere3", "sphere4", "sphere5", "cp2", "cp3"}) {
    const FreeCDGA a = builtin(name);
    CAPTURE(name);
    REQUIRE(a.cohomology(1).dim() == 0);
    CHECK(status(a, 2) == FormalityStatus::SFormal);
  }
}
