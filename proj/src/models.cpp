#include "cdga/models.hpp"

#include <algorithm>
#include <cctype>

#include "cdga/dsl.hpp"
#include "cdga/error.hpp"

namespace cdga {

FreeCDGA chevalley_eilenberg(const std::string& name, const LiePresentation& lie, FreeCDGAOptions options) {
  const std::size_t n = lie.basis.size();
  std::vector<Generator> gens;
  for (const auto& b : lie.basis) gens.push_back({b, 1});
  GeneratorSet set(std::move(gens));
  std::vector<Element> diff(n);
  for (const auto& [ij, coeffs] : lie.brackets) {
    const auto [i, j] = ij;
    if (i >= j || j >= n) throw Error(ErrorCode::GeneratorMismatch, "bracket indices must satisfy i < j < dim");
    if (coeffs.size() != n) throw Error(ErrorCode::DimensionMismatch, "bracket has the wrong number of coefficients");
    const Monomial xij({{static_cast<std::uint32_t>(i), 1U}, {static_cast<std::uint32_t>(j), 1U}});
    for (std::size_t k = 0; k < n; ++k)
      if (coeffs[k] != 0) diff[k].add_term(xij, -coeffs[k]);
  }
  FreeCDGA a(name, std::move(set), std::move(diff), std::move(options));
  for (std::size_t k = 0; k < n; ++k) {
    if (!a.d(a.differentials()[k]).is_zero())
      throw Error(ErrorCode::JacobiFailure, "the bracket violates the Jacobi identity (d^2 != 0 on " + lie.basis[k] + ")");
  }
  return a;
}

namespace {

FreeCDGA from_text(const std::string& text) { return parse_algebra(text); }

const char* const kHeisenberg = R"(algebra heisenberg3 dim 3 minimal
gen x1 : 1
gen x2 : 1
gen x3 : 1
d x3 = -x1*x2
)";

const char* const kKodairaThurston = R"(algebra kt dim 4 minimal
gen a1 : 1
gen a2 : 1
gen a3 : 1
gen a4 : 1
d a3 = -a1*a2
omega = a2*a3 + a1*a4
)";

const char* const kIwasawa = R"(algebra iwasawa dim 6 minimal
gen a1 : 1
gen a2 : 1
gen b1 : 1
gen b2 : 1
gen c1 : 1
gen c2 : 1
d c1 = -a1*b1 + a2*b2
d c2 = -a1*b2 - a2*b1
omega = a1*c2 + a2*c1 + b1*b2
)";

// Left-invariant 1-forms of the completely solvable group; not a minimal algebra.
const char* const kFls = R"(algebra fls dim 6
gen alpha : 1
gen beta : 1
gen gamma1 : 1
gen gamma2 : 1
gen delta1 : 1
gen delta2 : 1
d gamma1 = -alpha*gamma1 - beta*delta1
d gamma2 = alpha*gamma2 - beta*delta2
d delta1 = -alpha*delta1
d delta2 = alpha*delta2
omega = alpha*beta + gamma1*delta2 + gamma2*delta1
)";

// Minimal model of the same manifold, listed through degree 2 only.
const char* const kFlsMinimal = R"(algebra fls-minimal dim 6 minimal through 2
gen a1 : 1
gen a2 : 1
gen b1 : 2
gen b2 : 2
gen b3 : 2
gen b4 : 2
d b3 = -a2*b1
d b4 = a2*b3
)";

std::optional<int> suffix_number(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
  std::string rest = name.substr(prefix.size());
  if (rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
  if (rest.empty() || rest.size() > 4 || !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::nullopt;
  const int n = std::stoi(rest);
  if (n < 1) return std::nullopt;
  return n;
}

}  // namespace

FreeCDGA torus(int n) {
  std::vector<Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({"t" + std::to_string(i), 1});
  FreeCDGAOptions opt;
  opt.formal_dim = n;
  opt.minimal = true;
  if (n % 2 == 0) {
    Element w;
    for (int i = 0; i + 1 < n; i += 2)
      w.add_term(Monomial({{static_cast<std::uint32_t>(i), 1U}, {static_cast<std::uint32_t>(i + 1), 1U}}), 1);
    opt.omega = w;
  }
  return FreeCDGA("torus" + std::to_string(n), GeneratorSet(std::move(gens)), {}, std::move(opt));
}

FreeCDGA sphere(int n) {
  FreeCDGAOptions opt;
  opt.formal_dim = n;
  opt.minimal = true;
  const std::string name = "sphere" + std::to_string(n);
  if (n % 2 == 1)
    return FreeCDGA(name, GeneratorSet({{"y" + std::to_string(n), n}}), {}, std::move(opt));
  GeneratorSet gens({{"x" + std::to_string(n), n}, {"y" + std::to_string(2 * n - 1), 2 * n - 1}});
  Element dy(Monomial::generator(0, 2));
  return FreeCDGA(name, std::move(gens), {Element(), dy}, std::move(opt));
}

FreeCDGA complex_projective(int n) {
  FreeCDGAOptions opt;
  opt.formal_dim = 2 * n;
  opt.minimal = true;
  opt.omega = Element::generator(0);
  GeneratorSet gens({{"x2", 2}, {"y" + std::to_string(2 * n + 1), 2 * n + 1}});
  Element dy(Monomial::generator(0, static_cast<std::uint32_t>(n + 1)));
  return FreeCDGA("cp" + std::to_string(n), std::move(gens), {Element(), dy}, std::move(opt));
}

std::vector<std::string> builtin_names() {
  return {"heisenberg3", "kt", "iwasawa", "fls", "fls-minimal", "torusN", "sphereN", "cpN"};
}

FreeCDGA builtin(const std::string& name) {
  if (name == "heisenberg3") return from_text(kHeisenberg);
  if (name == "kt") return from_text(kKodairaThurston);
  if (name == "iwasawa") return from_text(kIwasawa);
  if (name == "fls") return from_text(kFls);
  if (name == "fls-minimal") return from_text(kFlsMinimal);
  if (auto n = suffix_number(name, "torus")) return torus(*n);
  if (auto n = suffix_number(name, "sphere")) return sphere(*n);
  if (auto n = suffix_number(name, "cpn")) return complex_projective(*n);
  if (auto n = suffix_number(name, "cp")) return complex_projective(*n);
  throw Error(ErrorCode::UnknownModel, "no built-in model named '" + name + "'");
}

MorphismReport morphism_check(const FreeCDGA& source, const FreeCDGA& target, const std::vector<Element>& images,
                              std::optional<int> through) {
  const auto& sg = source.generators();
  const auto& tg = target.generators();
  if (images.size() != sg.size())
    throw Error(ErrorCode::DegreeMismatch, "expected one image per source generator");
  for (std::size_t i = 0; i < sg.size(); ++i) {
    images[i].check_generators(tg);
    if (images[i].is_zero()) continue;
    auto deg = images[i].degree(tg);
    if (!deg || *deg != sg.degree(i))
      throw Error(ErrorCode::DegreeMismatch, "image of '" + sg.name(i) + "' does not have degree " +
                                                 std::to_string(sg.degree(i)));
  }

  MorphismReport report;
  report.commutes_with_d = true;
  for (std::size_t i = 0; i < sg.size(); ++i) {
    Element lhs = target.d(images[i]);
    Element rhs = source.substitute(source.differentials()[i], images, tg);
    if (lhs != rhs) {
      report.commutes_with_d = false;
      report.noncommuting.push_back(sg.name(i));
    }
  }

  int bound = 0;
  if (through) bound = *through;
  else if (source.complete_through()) bound = *source.complete_through() + 1;
  else if (source.formal_dim()) bound = *source.formal_dim();
  else if (target.formal_dim()) bound = *target.formal_dim();
  else bound = sg.max_degree() + 1;
  report.checked_through = bound;
  if (!report.commutes_with_d) return report;

  bool all_iso = true;
  for (int k = 0; k <= bound; ++k) {
    const auto& hs = source.cohomology(k);
    const auto& ht = target.cohomology(k);
    RationalMatrix m(ht.dim(), hs.dim());
    for (std::size_t j = 0; j < hs.dim(); ++j) {
      Element image = source.substitute(source.element(hs.representatives()[j], k), images, tg);
      Vector coords = target.class_coordinates(image, k);
      for (std::size_t r = 0; r < coords.size(); ++r)
        if (coords[r] != 0) m.set(r, j, coords[r]);
    }
    MorphismDegree deg;
    deg.degree = k;
    deg.source_dim = hs.dim();
    deg.target_dim = ht.dim();
    deg.rank = rank(m);
    deg.iso = deg.rank == hs.dim() && deg.rank == ht.dim();
    if (deg.iso && all_iso) report.iso_through = k;
    all_iso = all_iso && deg.iso;
    report.degrees.push_back(deg);
  }
  const auto next = static_cast<std::size_t>(report.iso_through + 1);
  report.injective_next = next < report.degrees.size() && report.degrees[next].rank == report.degrees[next].source_dim;
  if (source.complete_through() && !through)
    report.quasi_isomorphism = report.iso_through >= bound - 1 && (report.iso_through >= bound || report.injective_next);
  else
    report.quasi_isomorphism = report.iso_through >= bound;
  return report;
}

// The published map sends b3 to (gamma2*delta1 - gamma1*delta2)/2 and b4 to
// gamma1*gamma2/2; with d b3 = -a2*b1 that fails to commute with d on b3. Negating
// both images keeps d b4 = a2*b3 intact and makes the map a CDGA morphism.
std::vector<Element> fls_comparison() {
  const FreeCDGA fls = builtin("fls");
  const auto& g = fls.generators();
  auto p = [&](const char* text) { return parse_polynomial(text, g); };
  return {p("alpha"),
          p("beta"),
          p("delta1*delta2"),
          p("1/2*gamma1*delta2 + 1/2*gamma2*delta1"),
          p("1/2*gamma1*delta2 - 1/2*gamma2*delta1"),
          p("-1/2*gamma1*gamma2")};
}

}  // namespace cdga
