#pragma once

// The text format for CDGA presentations.
//
//   algebra kt dim 4 minimal      # name, optional dimension and flags
//   gen a1 : 1                    # declaration order is the generator order
//   d a3 = -a1*a2                 # undeclared differentials are zero
//   omega = a2*a3 + a1*a4
//
// `through <int>` after the algebra name marks a presentation that lists
// generators only through that degree.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdga/cdga.hpp"

namespace cdga {

struct AlgebraFile {
  std::string name = "algebra";
  std::optional<int> dim;
  std::optional<int> through;
  bool minimal = false;
  std::vector<Generator> gens;
  std::vector<std::pair<std::string, std::string>> differentials;  // generator -> polynomial text
  std::optional<std::string> omega;
};

/// Checks the grammar and that every referenced generator is declared. Throws
/// ParseError, UnknownGenerator or DuplicateGenerator; messages carry line and column.
AlgebraFile parse(std::string_view source);

/// Builds the algebra. Throws InvalidGenerators for bad degrees or ordering.
FreeCDGA to_algebra(const AlgebraFile& file);
FreeCDGA parse_algebra(std::string_view source);

/// A polynomial over `gens`, e.g. "-1/2*a*b + c". Throws ParseError or UnknownGenerator.
Element parse_polynomial(std::string_view text, const GeneratorSet& gens);

/// Canonical text of an algebra; parse_algebra(emit(A)) reproduces A.
std::string emit(const FreeCDGA& a);

}  // namespace cdga
