#pragma once

// Constructors for concrete CDGAs: Chevalley–Eilenberg complexes, the named
// built-in models, and checked morphisms between free CDGAs.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cdga/cdga.hpp"

namespace cdga {

struct LiePresentation {
  std::vector<std::string> basis;
  /// brackets[{i, j}] (i < j) = coefficients of [e_i, e_j] in the basis.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> brackets;
};

/// One degree-1 generator per basis vector, d(x^k) = -sum_{i<j} c^k_{ij} x^i x^j.
/// Options pass through unchanged; set `minimal` only for nilpotent algebras whose
/// basis is ordered compatibly with the lower central series. Throws JacobiFailure
/// when d^2 != 0.
FreeCDGA chevalley_eilenberg(const std::string& name, const LiePresentation& lie, FreeCDGAOptions options = {});

/// Names accepted by builtin(): heisenberg3, kt, iwasawa, fls, fls-minimal,
/// torusN, sphereN, cpN (N a positive integer).
std::vector<std::string> builtin_names();
/// Throws UnknownModel.
FreeCDGA builtin(const std::string& name);

FreeCDGA torus(int n);
FreeCDGA sphere(int n);
FreeCDGA complex_projective(int n);

struct MorphismDegree {
  int degree = 0;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;
  bool iso = false;
};

struct MorphismReport {
  bool commutes_with_d = false;
  std::vector<std::string> noncommuting;  // generators where d(f(x)) != f(dx)
  std::vector<MorphismDegree> degrees;
  int iso_through = -1;        // H^k is an isomorphism for every k <= iso_through
  bool injective_next = false;  // injective at iso_through + 1
  int checked_through = 0;
  bool quasi_isomorphism = false;  // iso on every checked degree (injective at the last if truncated)
};

/// Checks that generator images define a CDGA map and reports its effect on
/// cohomology through `through` (default: the source's dimension, or its
/// truncation degree + 1). Throws DegreeMismatch.
MorphismReport morphism_check(const FreeCDGA& source, const FreeCDGA& target, const std::vector<Element>& images,
                              std::optional<int> through = std::nullopt);

/// The quasi-isomorphism from fls-minimal to the 1-form algebra fls.
std::vector<Element> fls_comparison();

}  // namespace cdga
