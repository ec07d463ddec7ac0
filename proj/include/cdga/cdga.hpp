#pragma once

// Free CDGAs (⋀V, d): generators, differential on generators extended as a
// derivation, validation, cohomology in the monomial basis, cup products,
// Poincaré pairing and tensor products.

#include <optional>
#include <string>
#include <vector>

#include "cdga/algebra.hpp"
#include "cdga/grading.hpp"

namespace cdga {

struct FreeCDGAOptions {
  std::optional<int> formal_dim;
  std::optional<Element> omega;
  /// The presentation only lists generators through this degree; cohomology
  /// agrees with the intended algebra through it (and injects one degree higher).
  std::optional<int> complete_through;
  bool minimal = false;  // claims to be a Sullivan minimal algebra
};

struct Violation {
  std::string kind;       // "d_squared", "not_homogeneous", "wrong_degree", "linear_part",
                          // "ordering", "omega_not_closed", "omega_degree", "cohomology_above_dim"
  std::string generator;  // offending generator, empty when not applicable
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool has(const std::string& kind) const;
};

struct PairingBlock {
  int degree = 0;  // i, paired with m - i
  RationalMatrix matrix;
  std::size_t rank = 0;
  bool nondegenerate = false;
};

struct PairingReport {
  int dim = 0;
  std::vector<PairingBlock> blocks;  // i = 0 .. floor(m/2)
  bool nondegenerate() const;
};

class FreeCDGA : public GradedAlgebra {
 public:
  FreeCDGA();
  /// `diff[i]` is d of generator i (missing entries mean 0). Throws GeneratorMismatch
  /// when an image or omega mentions an unknown generator.
  FreeCDGA(std::string name, GeneratorSet gens, std::vector<Element> diff, FreeCDGAOptions options = {});

  const std::string& name() const noexcept { return name_; }
  const GeneratorSet& generators() const noexcept { return gens_; }
  const std::vector<Element>& differentials() const noexcept { return diff_; }
  const FreeCDGAOptions& options() const noexcept { return options_; }
  std::optional<int> formal_dim() const noexcept { return options_.formal_dim; }
  const std::optional<Element>& omega() const noexcept { return options_.omega; }
  bool claims_minimal() const noexcept { return options_.minimal; }
  std::optional<int> complete_through() const override { return options_.complete_through; }

  FreeCDGA with_name(std::string name) const;
  FreeCDGA with_options(FreeCDGAOptions options) const;

  /// The derivation extension of the differential. Throws GeneratorMismatch.
  Element d(const Element& x) const;
  Element multiply(const Element& x, const Element& y) const { return cdga::multiply(x, y, gens_); }
  Element generator(std::string_view name) const;

  const std::vector<Monomial>& basis(int k) const;
  /// Coordinates of a homogeneous element of degree k; throws NotHomogeneous.
  Vector coordinates(const Element& x, int k) const;
  Element element(const Vector& v, int k) const;

  // GradedAlgebra
  std::size_t dimension(int k) const override;
  RationalMatrix differential_matrix(int k) const override;
  Vector multiply(int p, const Vector& x, int q, const Vector& y) const override;

  ValidationReport validate() const;

  /// Class of a closed element in the representative basis of its degree; the zero
  /// element needs an explicit degree. Throws NotClosed or NotHomogeneous.
  Vector class_coordinates(const Element& z, std::optional<int> degree = std::nullopt) const;
  bool is_exact(const Element& z, std::optional<int> degree = std::nullopt) const;
  std::vector<Element> cohomology_representatives(int k) const;
  Element class_representative(int k, const Vector& class_coords) const;

  using GradedAlgebra::cup_product_map;
  /// Matrix of [x] -> [c x] : H^i -> H^{i + deg c}. Throws NotClosed / NotHomogeneous.
  RationalMatrix cup_product_map(const Element& c, int i) const;
  /// Throws MissingDimension or TopClassNotLine.
  PairingReport poincare_pairing() const;

  /// Images of the generators under the algebra map sending generator i to images[i].
  Element substitute(const Element& x, const std::vector<Element>& images, const GeneratorSet& target) const;

 private:
  struct Slices;
  std::string name_;
  GeneratorSet gens_;
  std::vector<Element> diff_;
  FreeCDGAOptions options_;
  std::shared_ptr<Slices> slices_;
};

/// Degree of a homogeneous nonzero element; throws NotHomogeneous otherwise.
int homogeneous_degree(const Element& x, const GeneratorSet& gens);

/// ⋀V_A ⊗ ⋀V_B. Throws NameCollision on shared names unless auto_rename, in which
/// case clashing names of B get a "_2" suffix (or "_3", ...).
FreeCDGA tensor_product(const FreeCDGA& a, const FreeCDGA& b, bool auto_rename = false);

/// (H*(A), 0) through `bound`, with products of representatives reduced to classes.
FiniteCDGA cohomology_cdga(const FreeCDGA& a, int bound);

}  // namespace cdga
