#include "cdga/sullivan.hpp"

#include "cdga/error.hpp"

namespace cdga {

bool is_minimal(const FreeCDGA& a) {
  FreeCDGAOptions opt = a.options();
  opt.minimal = true;
  opt.omega.reset();
  opt.formal_dim.reset();
  const auto report = a.with_options(std::move(opt)).validate();
  return report.ok();
}

namespace {

class Builder {
 public:
  explicit Builder(const GradedAlgebra& target) : target_(target) {}

  FreeCDGA model() const {
    FreeCDGAOptions opt;
    opt.minimal = true;
    return FreeCDGA("minimal_model", GeneratorSet(gens_), diff_, opt);
  }

  void add(int degree, Element dv, Vector image) {
    const int n = ++counters_[degree];
    gens_.push_back({"v" + std::to_string(degree) + "_" + std::to_string(n), degree});
    diff_.push_back(std::move(dv));
    phi_.push_back(std::move(image));
  }

  std::size_t count(int degree) const {
    std::size_t c = 0;
    for (const auto& g : gens_) c += g.degree == degree ? 1 : 0;
    return c;
  }

  // Image of a homogeneous model element of degree k in the target slice A^k.
  Vector image(const FreeCDGA& m, const Element& x, int k) const {
    Vector out = zero_vector(target_.dimension(k));
    for (const auto& [mono, c] : x.terms()) {
      Vector acc = target_.unit();
      int deg = 0;
      for (const auto& [i, e] : mono.factors()) {
        for (std::uint32_t r = 0; r < e; ++r) {
          const int gd = m.generators().degree(i);
          acc = target_.multiply(deg, acc, gd, phi_[i]);
          deg += gd;
        }
      }
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += c * acc[j];
    }
    return out;
  }

  // Matrix of H^k(model) -> H^k(target) in the representative bases.
  RationalMatrix induced(const FreeCDGA& m, int k) const {
    const auto& hm = m.cohomology(k);
    const auto& ha = target_.cohomology(k);
    RationalMatrix mat(ha.dim(), hm.dim());
    for (std::size_t j = 0; j < hm.dim(); ++j) {
      Vector coords = ha.class_of(image(m, m.element(hm.representatives()[j], k), k));
      for (std::size_t r = 0; r < coords.size(); ++r)
        if (coords[r] != 0) mat.set(r, j, coords[r]);
    }
    return mat;
  }

  const std::vector<Vector>& phi() const { return phi_; }

 private:
  const GradedAlgebra& target_;
  std::vector<Generator> gens_;
  std::vector<Element> diff_;
  std::vector<Vector> phi_;
  std::map<int, int> counters_;
};

constexpr std::size_t kMaxGeneratorsPerDegree = 24;

}  // namespace

MinimalModelResult minimal_model_up_to(const GradedAlgebra& target, int bound, MinimalModelOptions options) {
  if (target.cohomology(0).dim() != 1) throw Error(ErrorCode::NotConnected, "H^0 of the target is not one-dimensional");
  Builder b(target);

  for (int k = 1; k <= bound; ++k) {
    // Surject onto H^k with new closed generators.
    {
      const FreeCDGA m = b.model();
      const RationalMatrix induced = b.induced(m, k);
      const auto& ha = target.cohomology(k);
      IncrementalBasis image;
      for (std::size_t j = 0; j < induced.cols(); ++j) image.insert(induced.column(j));
      for (std::size_t r = 0; r < ha.dim(); ++r) {
        Vector e = zero_vector(ha.dim());
        e[r] = 1;
        if (image.insert(e)) b.add(k, Element(), ha.representatives()[r]);
      }
    }
    // Kill the kernel on H^{k+1}; new degree-k generators can create new
    // kernel (through products with degree-1 generators), hence the loop.
    int round = 0;
    for (;; ++round) {
      const FreeCDGA m = b.model();
      const RationalMatrix induced = b.induced(m, k + 1);
      const Subspace kernel = kernel_basis(induced);
      if (kernel.dim() == 0) break;
      if (round == options.iteration_cap || b.count(k) + kernel.dim() > kMaxGeneratorsPerDegree)
        throw Error(ErrorCode::NonNilpotent, "degree " + std::to_string(k) +
                                                 " of the minimal model does not stabilise within the iteration cap");
      const auto& hm = m.cohomology(k + 1);
      for (const auto& kappa : kernel.basis()) {
        Vector z = hm.cocycle(kappa);
        Element zi = m.element(z, k + 1);
        auto a = solve(target.differential_matrix(k), b.image(m, zi, k + 1));
        if (!a) throw Error(ErrorCode::NotClosed, "internal: image of a kernel class is not exact");
        b.add(k, zi, *a);
      }
    }
  }

  MinimalModelResult result;
  result.model = b.model();
  result.comparison = b.phi();
  result.verified_through = bound;
  for (int k = 0; k <= bound + 1; ++k) result.ranks.push_back(rank(b.induced(result.model, k)));
  return result;
}

std::vector<Element> comparison_elements(const MinimalModelResult& result, const FreeCDGA& target) {
  std::vector<Element> out;
  const auto& g = result.model.generators();
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back(target.element(result.comparison[i], g.degree(i)));
  return out;
}

}  // namespace cdga
