#pragma once

// s-formality of minimal models.
//
// The decision is three-valued. A positive answer ships the splitting
// V^i = C^i + N^i that passed the ideal check together with the induced map
// to cohomology; a negative answer ships either a closed, non-exact element
// of the ideal generated by N that survives every admissible change of
// complement, or a non-vanishing Massey product inside the degree windows.
// Anything else is UNDECIDED.

#include <optional>
#include <string>
#include <vector>

#include "cdga/cdga.hpp"
#include "cdga/massey.hpp"

namespace cdga {

struct SplitDegree {
  int degree = 0;
  std::vector<Element> closed;     // basis of C^i
  std::vector<Element> injective;  // basis of N^i
};

struct Splitting {
  int s = 0;
  std::vector<SplitDegree> degrees;  // i = 1 .. s

  bool injective_empty() const;
  /// N^{<= s}, lowest degree first.
  std::vector<Element> injective_through(int s) const;
};

/// C^i = ker d on V^i, N^i the complement spanned by generators. Throws NotMinimal.
Splitting canonical_splitting(const FreeCDGA& a, int s);

struct Witness {
  Element element;   // normalised: leading coefficient 1
  int degree = 0;
  Element n_factor;  // zero when the witness came from the general slice search
  Element m_factor;
  Vector class_coords;
};

struct WitnessSearch {
  std::optional<Witness> witness;
  int searched_through = 0;
  bool exhaustive = false;  // every degree that can carry a witness was searched
};

/// Searches closed elements of the ideal N^{<=s} * (wedge V^{<=s}) for one with a
/// nonzero class, in degrees up to the dimension (one past the listed degree for
/// truncated presentations). Single products n*m are tried first, then the full
/// degree slices. Throws MissingDimension.
WitnessSearch find_witness(const FreeCDGA& a, const Splitting& split, int s);
std::optional<Witness> ideal_witness(const FreeCDGA& a, const Splitting& split, int s);

/// Whether an element lies in the degree slice of the ideal N^{<=s} * (wedge V^{<=s}).
bool in_ideal(const FreeCDGA& a, const Splitting& split, int s, const Element& x);

struct Robustness {
  bool robust = false;
  int effective_s = 0;               // largest generator degree occurring in the witness
  std::vector<Element> perturbations;
  std::vector<Vector> classes;       // class of each perturbation (empty when not closed)
  std::string note;
};

/// Replaces each N-factor n of the witness by every element of C^{deg n} and
/// every decomposable monomial of degree deg n; robust iff every replacement
/// term is closed and the witness class is outside the span of their classes.
/// Throws UnsupportedShape unless the generators of degree <= effective_s all
/// have degree 1 or N^{<= effective_s} sits in a single degree, or when a
/// monomial of the witness has two N-factors.
Robustness witness_robustness(const FreeCDGA& a, const Splitting& split, const Element& witness, int s);

enum class FormalityStatus { SFormal, NotSFormal, Undecided };
std::string to_string(FormalityStatus s);

struct PhiEntry {
  std::string generator;
  int degree = 0;
  Vector class_coords;  // zero on N
};

struct FormalityVerdict {
  FormalityStatus status = FormalityStatus::Undecided;
  int s = 0;
  int exactness_bound = 0;  // degrees in which ideal elements were tested for exactness
  Splitting splitting;
  std::vector<PhiEntry> phi;              // S_FORMAL
  std::optional<Witness> witness;         // NOT_S_FORMAL via the ideal
  int witness_level = 0;                  // the s' <= s at which the witness was found
  std::optional<Robustness> robustness;
  std::optional<MasseyHit> massey;        // NOT_S_FORMAL via a Massey product
  std::string reason;
  std::vector<std::string> notes;
};

/// Requires a minimal model (NotMinimal) with a declared dimension (MissingDimension).
FormalityVerdict s_formality(const FreeCDGA& a, int s);

struct FormalityReport {
  int dimension = 0;
  int s = 0;  // ceil(m/2) - 1
  FormalityVerdict verdict;
  std::optional<FormalityVerdict> strict;  // s = m
  bool agree = true;                       // strict and bounded verdicts match when both decided

  /// FORMAL, NOT_FORMAL or UNDECIDED.
  std::string status() const;
};

FormalityReport formality(const FreeCDGA& a, bool strict = false);

/// Replays a verdict's certificate against the algebra.
bool verify_certificate(const FreeCDGA& a, const FormalityVerdict& v);

}  // namespace cdga
