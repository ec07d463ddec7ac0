#pragma once

// Sullivan minimal models built degree by degree, and the minimality test.

#include <vector>

#include "cdga/cdga.hpp"

namespace cdga {

bool is_minimal(const FreeCDGA& a);

struct MinimalModelResult {
  FreeCDGA model;
  /// Image of each model generator in the target, as coordinates of the target's
  /// slice in the generator's degree.
  std::vector<Vector> comparison;
  int verified_through = 0;
  /// Rank of the induced map on H^k for k = 0 .. verified_through + 1.
  std::vector<std::size_t> ranks;
};

struct MinimalModelOptions {
  int iteration_cap = 32;  // rounds of the kernel-killing loop per degree
};

/// Requires H^0(target) = Q (NotConnected). Throws NonNilpotentDegreeOne when a
/// degree does not stabilise within the iteration cap.
MinimalModelResult minimal_model_up_to(const GradedAlgebra& target, int bound, MinimalModelOptions options = {});

/// The comparison images as elements, when the target is itself a free CDGA.
std::vector<Element> comparison_elements(const MinimalModelResult& result, const FreeCDGA& target);

}  // namespace cdga
