#pragma once

// Massey products <[a_1], ..., [a_t]> by a symbolic defining system.
//
// Each a_ij is a particular solution plus a free rational parameter for every
// cohomology class of its degree; exact changes are not parametrised (they can
// be absorbed by changing later entries). The representative is then a
// polynomial in the parameters, and the verdict reads off its classes.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cdga/cdga.hpp"

namespace cdga {

enum class MasseyVerdict { Vanishes, Nonvanishing, Inconclusive };

std::string to_string(MasseyVerdict v);

struct MasseyResult {
  std::vector<int> degrees;     // p_1 .. p_t
  int degree = 0;               // p_1 + ... + p_t - (t - 2)
  Vector representative;        // class of the representative with every parameter at 0
  Subspace indeterminacy;       // span of the classes the parameters can add
  MasseyVerdict verdict = MasseyVerdict::Inconclusive;
  bool affine = true;           // no product of two parameters carries a nonzero class
  std::size_t parameters = 0;
  std::string note;
};

/// Classes are given as (degree, cocycle coordinates). Throws NotClosed on a
/// non-closed input and NotDefined when no defining system exists.
MasseyResult massey_product(const GradedAlgebra& a, const std::vector<std::pair<int, Vector>>& classes);

MasseyResult massey_triple(const FreeCDGA& a, const Element& a1, const Element& a2, const Element& a3);
MasseyResult massey_higher(const FreeCDGA& a, const std::vector<Element>& classes);

/// [a1] H^{p2+p3-1} + H^{p1+p2-1} [a3], the classical indeterminacy of a triple product.
Subspace triple_indeterminacy(const FreeCDGA& a, const Element& a1, const Element& a2, const Element& a3);

/// Whether degrees p_1..p_t satisfy both windows p_1+..+p_{t-1} <= s+t-2 and
/// p_2+..+p_t <= s+t-2.
bool within_windows(const std::vector<int>& degrees, int s);

struct MasseyHit {
  std::vector<int> degrees;
  std::vector<std::size_t> basis;  // index into the representative basis of each H^{p_i}
  MasseyResult result;
};

struct MasseyScanOptions {
  bool stop_at_first = false;
  std::size_t evaluation_cap = 2000;
};

struct MasseyScan {
  std::vector<MasseyHit> hits;  // NONVANISHING products only, in enumeration order
  std::size_t evaluated = 0;
  bool capped = false;
};

/// Products of cohomology basis classes of length 3 .. max_length inside the
/// windows for s. On presentations listed through degree T only products of
/// degree <= T + 1 are evaluated.
MasseyScan massey_obstruction_scan(const FreeCDGA& a, int s, int max_length, MasseyScanOptions options = {});

}  // namespace cdga
