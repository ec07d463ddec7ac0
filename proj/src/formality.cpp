#include "cdga/formality.hpp"

#include <algorithm>
#include <set>

#include "cdga/error.hpp"
#include "cdga/sullivan.hpp"

namespace cdga {

std::string to_string(FormalityStatus s) {
  switch (s) {
    case FormalityStatus::SFormal: return "S_FORMAL";
    case FormalityStatus::NotSFormal: return "NOT_S_FORMAL";
    case FormalityStatus::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

bool Splitting::injective_empty() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const SplitDegree& d) { return d.injective.empty(); });
}

std::vector<Element> Splitting::injective_through(int bound) const {
  std::vector<Element> out;
  for (const auto& d : degrees)
    if (d.degree <= bound) out.insert(out.end(), d.injective.begin(), d.injective.end());
  return out;
}

namespace {

std::vector<std::size_t> generators_of_degree(const GeneratorSet& g, int i) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g.degree(j) == i) out.push_back(j);
  return out;
}

std::vector<bool> up_to_degree(const GeneratorSet& g, int s) {
  std::vector<bool> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = g.degree(j) <= s;
  return out;
}

Element combination(const Vector& v, const std::vector<std::size_t>& idx) {
  Element out;
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (v[j] != 0) out.add_term(Monomial::generator(idx[j]), v[j]);
  return out;
}

void require_minimal(const FreeCDGA& a) {
  if (!a.claims_minimal() || !is_minimal(a))
    throw Error(ErrorCode::NotMinimal, "formality analysis needs a minimal model; '" + a.name() + "' is not one");
}

int require_dimension(const FreeCDGA& a) {
  if (!a.formal_dim()) throw Error(ErrorCode::MissingDimension, "the algebra has no declared dimension");
  return *a.formal_dim();
}

// Degrees whose ideal slices decide formality: through the dimension, or one
// past the listed degree of a truncated presentation.
std::pair<int, bool> search_bound(const FreeCDGA& a) {
  const int m = require_dimension(a);
  if (auto t = a.complete_through(); t && *t + 1 < m) return {*t + 1, false};
  return {m, true};
}

Witness make_witness(Element x, int k, Element n, Element m, Vector cls) {
  const Rational lead = x.terms().begin()->second;
  const Rational scale = 1 / lead;
  x *= scale;
  m *= scale;
  for (auto& c : cls) c *= scale;
  return {std::move(x), k, std::move(n), std::move(m), std::move(cls)};
}

std::vector<Vector> ideal_slice(const FreeCDGA& a, const std::vector<Element>& ns, const std::vector<bool>& allowed, int k) {
  const auto& g = a.generators();
  std::vector<Vector> out;
  for (const auto& n : ns) {
    const int p = homogeneous_degree(n, g);
    if (k < p) continue;
    for (const auto& mono : degree_basis(g, k - p, allowed)) {
      Element x = a.multiply(n, Element(mono));
      if (!x.is_zero()) out.push_back(a.coordinates(x, k));
    }
  }
  return out;
}

std::vector<PhiEntry> induced_phi(const FreeCDGA& a, const Splitting& split) {
  const auto& g = a.generators();
  std::vector<PhiEntry> out;
  for (const auto& sd : split.degrees) {
    const auto idx = generators_of_degree(g, sd.degree);
    if (idx.empty()) continue;
    // Coordinates in the generator basis of V^i.
    auto to_local = [&](const Element& x) {
      Vector w = zero_vector(idx.size());
      for (const auto& [mono, c] : x.terms())
        for (std::size_t j = 0; j < idx.size(); ++j)
          if (mono == Monomial::generator(idx[j])) w[j] = c;
      return w;
    };
    std::vector<Vector> basis;
    for (const auto& c : sd.closed) basis.push_back(to_local(c));
    for (const auto& n : sd.injective) basis.push_back(to_local(n));
    const ColumnSolver solver(idx.size(), basis);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      Vector e = zero_vector(idx.size());
      e[j] = 1;
      const Vector coeffs = *solver.coordinates(e);
      Element proj;
      for (std::size_t q = 0; q < sd.closed.size(); ++q)
        if (coeffs[q] != 0) proj += coeffs[q] * sd.closed[q];
      out.push_back({g.name(idx[j]), sd.degree, a.class_coordinates(proj, sd.degree)});
    }
  }
  return out;
}

}  // namespace

Splitting canonical_splitting(const FreeCDGA& a, int s) {
  require_minimal(a);
  const auto& g = a.generators();
  Splitting split;
  split.s = s;
  for (int i = 1; i <= s; ++i) {
    SplitDegree sd;
    sd.degree = i;
    const auto idx = generators_of_degree(g, i);
    if (!idx.empty()) {
      std::vector<Vector> images;
      for (std::size_t j : idx) images.push_back(a.coordinates(a.differentials()[j], i + 1));
      const RationalMatrix dm = RationalMatrix::from_columns(a.dimension(i + 1), images);
      const Subspace closed = kernel_basis(dm);
      const QuotientBasis q(Subspace::full(idx.size()), closed);
      for (const auto& v : closed.basis()) sd.closed.push_back(combination(v, idx));
      std::vector<Vector> n_images;
      for (const auto& v : q.complement()) {
        sd.injective.push_back(combination(v, idx));
        n_images.push_back(dm.apply(v));
      }
      if (rank(RationalMatrix::from_columns(a.dimension(i + 1), n_images)) != n_images.size())
        throw Error(ErrorCode::NotMinimal, "d is not injective on N^" + std::to_string(i));
    }
    split.degrees.push_back(std::move(sd));
  }
  return split;
}

WitnessSearch find_witness(const FreeCDGA& a, const Splitting& split, int s) {
  const auto [bound, exhaustive] = search_bound(a);
  const auto& g = a.generators();
  const auto ns = split.injective_through(s);
  const auto allowed = up_to_degree(g, s);
  WitnessSearch out;
  out.searched_through = bound;
  out.exhaustive = exhaustive;
  if (ns.empty()) return out;

  // Single products first: they give the most readable certificates.
  for (int k = 1; k <= bound; ++k) {
    for (const auto& n : ns) {
      const int p = homogeneous_degree(n, g);
      if (k < p) continue;
      for (const auto& mono : degree_basis(g, k - p, allowed)) {
        Element x = a.multiply(n, Element(mono));
        if (x.is_zero() || !a.d(x).is_zero()) continue;
        Vector cls = a.class_coordinates(x, k);
        if (is_zero(cls)) continue;
        out.witness = make_witness(std::move(x), k, n, Element(mono), std::move(cls));
        return out;
      }
    }
  }

  // Then every closed element of each slice.
  for (int k = 1; k <= bound; ++k) {
    const auto vectors = ideal_slice(a, ns, allowed, k);
    const Subspace slice = Subspace::span(a.dimension(k), vectors);
    if (slice.dim() == 0) continue;
    const RationalMatrix d = a.differential_matrix(k);
    std::vector<Vector> images;
    for (const auto& v : slice.basis()) images.push_back(d.apply(v));
    const Subspace closed = kernel_basis(RationalMatrix::from_columns(a.dimension(k + 1), images));
    for (const auto& kappa : closed.basis()) {
      Vector z = zero_vector(a.dimension(k));
      for (std::size_t j = 0; j < kappa.size(); ++j)
        if (kappa[j] != 0)
          for (std::size_t r = 0; r < z.size(); ++r) z[r] += kappa[j] * slice.basis()[j][r];
      Vector cls = a.cohomology(k).class_of(z);
      if (is_zero(cls)) continue;
      out.witness = make_witness(a.element(z, k), k, Element(), Element(), std::move(cls));
      return out;
    }
  }
  return out;
}

std::optional<Witness> ideal_witness(const FreeCDGA& a, const Splitting& split, int s) {
  return find_witness(a, split, s).witness;
}

bool in_ideal(const FreeCDGA& a, const Splitting& split, int s, const Element& x) {
  if (x.is_zero()) return true;
  const auto& g = a.generators();
  const int k = homogeneous_degree(x, g);
  const auto vectors = ideal_slice(a, split.injective_through(s), up_to_degree(g, s), k);
  return Subspace::span(a.dimension(k), vectors).contains(a.coordinates(x, k));
}

Robustness witness_robustness(const FreeCDGA& a, const Splitting& split, const Element& w, int s) {
  const auto& g = a.generators();
  const int k = homogeneous_degree(w, g);
  Robustness r;
  for (const auto& [mono, c] : w.terms())
    for (const auto& [i, e] : mono.factors()) r.effective_s = std::max(r.effective_s, g.degree(i));
  r.effective_s = std::min(r.effective_s, s);

  std::set<std::size_t> n_index;
  std::set<int> n_degrees;
  for (const auto& n : split.injective_through(r.effective_s)) {
    if (n.size() != 1 || n.terms().begin()->first.length() != 1)
      throw Error(ErrorCode::UnsupportedShape, "N is not spanned by generators");
    n_index.insert(n.terms().begin()->first.factors().front().first);
    n_degrees.insert(homogeneous_degree(n, g));
  }
  bool all_degree_one = true;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g.degree(j) <= r.effective_s && g.degree(j) != 1) all_degree_one = false;
  if (!all_degree_one && n_degrees.size() > 1)
    throw Error(ErrorCode::UnsupportedShape, "N^{<=" + std::to_string(r.effective_s) + "} spans several degrees");

  std::set<std::size_t> present;
  for (const auto& [mono, c] : w.terms()) {
    std::uint32_t count = 0;
    for (const auto& [i, e] : mono.factors())
      if (n_index.count(i)) {
        count += e;
        present.insert(i);
      }
    if (count > 1) throw Error(ErrorCode::UnsupportedShape, "a monomial of the witness has two N-factors");
  }

  if (!a.d(w).is_zero()) {
    r.note = "the element is not closed";
    return r;
  }
  const Vector w_class = a.class_coordinates(w, k);
  if (is_zero(w_class)) {
    r.note = "the element is exact";
    return r;
  }

  const auto allowed = up_to_degree(g, r.effective_s);
  bool all_closed = true;
  for (std::size_t n : present) {
    const int p = g.degree(n);
    std::vector<Element> candidates;
    for (const auto& sd : split.degrees)
      if (sd.degree == p) candidates.insert(candidates.end(), sd.closed.begin(), sd.closed.end());
    for (const auto& mono : degree_basis(g, p, allowed))
      if (mono.length() >= 2) candidates.emplace_back(mono);
    for (const auto& c : candidates) {
      std::vector<Element> images;
      for (std::size_t j = 0; j < g.size(); ++j) images.push_back(Element::generator(j));
      images[n] += c;
      Element delta = a.substitute(w, images, g) - w;
      if (delta.is_zero()) continue;
      if (!a.d(delta).is_zero()) {
        all_closed = false;
        r.classes.emplace_back();
      } else {
        r.classes.push_back(a.class_coordinates(delta, k));
      }
      r.perturbations.push_back(std::move(delta));
    }
  }
  if (!all_closed) {
    r.note = "some change of complement makes the element non-closed";
    return r;
  }
  std::vector<Vector> nonempty;
  for (const auto& c : r.classes) nonempty.push_back(c);
  r.robust = !Subspace::span(w_class.size(), nonempty).contains(w_class);
  r.note = r.robust ? "the class stays nonzero under every change of complement"
                    : "a change of complement can make the element exact";
  return r;
}

FormalityVerdict s_formality(const FreeCDGA& a, int s) {
  require_minimal(a);
  const int m = require_dimension(a);
  if (s < 0) throw Error(ErrorCode::DegreeOutOfRange, "s must be non-negative");
  FormalityVerdict v;
  v.s = s;
  v.splitting = canonical_splitting(a, s);
  const auto [bound, exhaustive] = search_bound(a);
  v.exactness_bound = bound;
  const auto truncated = a.complete_through();
  const bool generators_known = !truncated || s <= *truncated;
  if (!exhaustive)
    v.notes.push_back("generators are listed through degree " + std::to_string(*truncated) +
                      "; ideal elements were tested through degree " + std::to_string(bound));
  else
    v.notes.push_back("closed elements of degree > " + std::to_string(m) + " are exact since H^{>" +
                      std::to_string(m) + "} = 0");

  if (v.splitting.injective_empty() && generators_known) {
    v.status = FormalityStatus::SFormal;
    v.phi = induced_phi(a, v.splitting);
    v.reason = "N^{<=" + std::to_string(s) + "} = 0";
    return v;
  }

  // Look for a robust witness at every level s' <= s; a certificate at s'
  // already rules out s-formality.
  std::optional<WitnessSearch> top;
  for (int level = 1; level <= s; ++level) {
    WitnessSearch ws = find_witness(a, v.splitting, level);
    if (level == s) top = ws;
    if (!ws.witness) continue;
    const std::string text = to_string(ws.witness->element, a.generators());
    try {
      Robustness r = witness_robustness(a, v.splitting, ws.witness->element, level);
      if (r.robust) {
        v.status = FormalityStatus::NotSFormal;
        v.witness = ws.witness;
        v.witness_level = level;
        v.robustness = std::move(r);
        v.reason = "closed element " + text + " of the ideal I_" + std::to_string(level) + " is not exact";
        return v;
      }
      v.notes.push_back("witness " + text + " at s=" + std::to_string(level) + " is not robust: " + r.note);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnsupportedShape) throw;
      v.notes.push_back("witness " + text + " at s=" + std::to_string(level) + ": " + e.what());
    }
  }

  if (top && !top->witness && top->exhaustive && generators_known) {
    v.status = FormalityStatus::SFormal;
    v.phi = induced_phi(a, v.splitting);
    v.reason = "every closed element of I_" + std::to_string(s) + " is exact";
    return v;
  }

  MasseyScanOptions opt;
  opt.stop_at_first = true;
  MasseyScan scan = massey_obstruction_scan(a, s, 4, opt);
  if (!scan.hits.empty()) {
    v.status = FormalityStatus::NotSFormal;
    v.massey = scan.hits.front();
    v.reason = "a Massey product inside the degree windows for s=" + std::to_string(s) + " does not vanish";
    return v;
  }
  v.status = FormalityStatus::Undecided;
  if (top && top->witness)
    v.reason = "the ideal has a non-exact closed element that a different splitting might remove, and no "
               "Massey obstruction was found";
  else
    v.reason = "the ideal could not be searched in every relevant degree";
  if (scan.capped) v.notes.push_back("the Massey scan stopped at its evaluation cap");
  return v;
}

std::string FormalityReport::status() const {
  switch (verdict.status) {
    case FormalityStatus::SFormal: return "FORMAL";
    case FormalityStatus::NotSFormal: return "NOT_FORMAL";
    case FormalityStatus::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

FormalityReport formality(const FreeCDGA& a, bool strict) {
  require_minimal(a);
  FormalityReport report;
  report.dimension = require_dimension(a);
  report.s = (report.dimension + 1) / 2 - 1;
  report.verdict = s_formality(a, report.s);
  if (strict) {
    report.strict = s_formality(a, report.dimension);
    const auto x = report.verdict.status;
    const auto y = report.strict->status;
    report.agree = x == FormalityStatus::Undecided || y == FormalityStatus::Undecided || x == y;
  }
  return report;
}

bool verify_certificate(const FreeCDGA& a, const FormalityVerdict& v) {
  const auto& g = a.generators();
  if (v.status == FormalityStatus::Undecided) return true;
  // The splitting is canonical, so a certificate must carry exactly the one
  // recomputed here.
  const Splitting fresh = canonical_splitting(a, v.s);
  if (v.splitting.s != v.s || v.splitting.degrees.size() != fresh.degrees.size()) return false;
  for (std::size_t i = 0; i < fresh.degrees.size(); ++i) {
    const auto& x = v.splitting.degrees[i];
    const auto& y = fresh.degrees[i];
    if (x.degree != y.degree || x.closed != y.closed || x.injective != y.injective) return false;
  }
  switch (v.status) {
    case FormalityStatus::Undecided:
      return true;
    case FormalityStatus::SFormal: {
      for (const auto& sd : v.splitting.degrees)
        for (const auto& c : sd.closed)
          if (!a.d(c).is_zero()) return false;
      if (!v.splitting.injective_empty()) {
        const WitnessSearch ws = find_witness(a, v.splitting, v.s);
        if (ws.witness || !ws.exhaustive) return false;
      }
      const auto phi = induced_phi(a, v.splitting);
      if (phi.size() != v.phi.size()) return false;
      for (std::size_t j = 0; j < phi.size(); ++j)
        if (phi[j].generator != v.phi[j].generator || phi[j].class_coords != v.phi[j].class_coords) return false;
      // phi(dx) = 0 for every generator of degree <= s, where phi sends N to 0.
      std::vector<Element> images;
      for (std::size_t j = 0; j < g.size(); ++j) images.push_back(Element::generator(j));
      for (const auto& e : phi) {
        const auto j = *g.index_of(e.generator);
        images[j] = a.class_representative(e.degree, e.class_coords);
      }
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (g.degree(j) > v.s || a.differentials()[j].is_zero()) continue;
        const Element image = a.substitute(a.differentials()[j], images, g);
        if (!a.d(image).is_zero() || !is_zero(a.class_coordinates(image, g.degree(j) + 1))) return false;
      }
      return true;
    }
    case FormalityStatus::NotSFormal: {
      if (v.witness) {
        if (v.witness_level < 1 || v.witness_level > v.s) return false;
        const Element& w = v.witness->element;
        if (!a.d(w).is_zero()) return false;
        if (is_zero(a.class_coordinates(w, v.witness->degree))) return false;
        if (!in_ideal(a, v.splitting, v.witness_level, w)) return false;
        return witness_robustness(a, v.splitting, w, v.witness_level).robust;
      }
      if (v.massey) {
        if (!within_windows(v.massey->degrees, v.s)) return false;
        std::vector<std::pair<int, Vector>> classes;
        for (std::size_t q = 0; q < v.massey->degrees.size(); ++q)
          classes.emplace_back(v.massey->degrees[q],
                               a.cohomology(v.massey->degrees[q]).representatives()[v.massey->basis[q]]);
        return massey_product(a, classes).verdict == MasseyVerdict::Nonvanishing;
      }
      return false;
    }
  }
  return false;
}

}  // namespace cdga
