#pragma once

// Lefschetz maps of a symplectic class, the odd-Betti parity obstruction, and
// the cohomology that a Donaldson submanifold Z (Poincaré dual to a multiple
// of [omega]) inherits from M.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdga/cdga.hpp"
#include "cdga/formality.hpp"

namespace cdga {

struct LefschetzDegree {
  int i = 0;
  std::size_t rank = 0;
  std::size_t source_dim = 0;  // b_i
  std::size_t target_dim = 0;  // b_{2n-i}
  bool iso = false;
  std::vector<Element> killers;  // cocycles spanning the kernel of [omega]^{n-i}
};

struct LefschetzReport {
  int n = 0;
  int s = 0;  // requested; degrees i = 0 .. min(s, n-1) are checked
  std::vector<LefschetzDegree> degrees;
  bool passes = false;
  std::optional<int> first_failure;
  std::vector<std::pair<int, std::size_t>> parity;  // from parity_obstruction
};

/// Throws NoSymplecticClass (no omega, or omega not closed / not of degree 2),
/// MissingDimension or OddDimension.
LefschetzReport s_lefschetz(const FreeCDGA& a, int s);

/// Odd degrees 2i+1 <= n whose Betti number is odd. Throws MissingDimension or OddDimension.
std::vector<std::pair<int, std::size_t>> parity_obstruction(const FreeCDGA& a);

/// ker([omega] : H^p -> H^{p+2}) in class coordinates, 0 <= p <= 2n - 2.
/// Throws DegreeOutOfRange, NoSymplecticClass.
Subspace restriction_kernel(const FreeCDGA& a, int p);

enum class ZStatus { Exact, LowerBound, Unknown };
std::string to_string(ZStatus s);

struct ZDegree {
  int degree = 0;
  std::size_t dim = 0;  // exact dimension or lower bound, 0 when unknown
  ZStatus status = ZStatus::Unknown;
  std::string source;
};

struct QuotientDegree {
  int i = 0;
  int p = 0;                    // 2(n-1) - i
  std::size_t dim = 0;          // dim H^p(M) / ker([omega])
  Subspace kernel;              // ker([omega] : H^p -> H^{p+2})
  std::vector<Element> basis;   // cocycles whose classes span the quotient
  bool lefschetz = false;       // M is Lefschetz at i, so H^p(Z) is this quotient
};

struct DonaldsonReport {
  int n = 0;
  int s = 0;
  std::vector<QuotientDegree> quotients;
  std::vector<ZDegree> z;  // H^k(Z) for k = 0 .. 2n-2
  std::string note;
};

/// Default s = n - 2. Throws DegreeOutOfRange when s > n - 2 or s < 0, and in
/// strict mode NotSLefschetz when M is not Lefschetz at some i <= s.
DonaldsonReport donaldson_quotient(const FreeCDGA& a, std::optional<int> s = std::nullopt, bool strict = false);

/// What the formality of M says about Z: s-formal M gives s-formal Z, and
/// (n-2)-formal M gives formal Z.
std::string transport_formality(const FormalityVerdict& m_verdict, int s, int n);

}  // namespace cdga
