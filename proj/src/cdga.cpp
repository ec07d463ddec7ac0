#include "cdga/cdga.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "cdga/error.hpp"

namespace cdga {

struct FreeCDGA::Slices {
  struct Slice {
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t> index;
  };
  std::mutex mutex;
  std::map<int, std::shared_ptr<const Slice>> slices;
  std::map<int, std::shared_ptr<const RationalMatrix>> differentials;
};

namespace {

std::vector<std::size_t> expand(const Monomial& m) {
  std::vector<std::size_t> out;
  for (const auto& [i, e] : m.factors())
    for (std::uint32_t k = 0; k < e; ++k) out.push_back(i);
  return out;
}

Monomial collect(const std::vector<std::size_t>& indices, std::size_t begin, std::size_t end) {
  std::vector<Monomial::Factor> f;
  for (std::size_t j = begin; j < end; ++j) f.emplace_back(static_cast<std::uint32_t>(indices[j]), 1U);
  return Monomial(std::move(f));
}

}  // namespace

int homogeneous_degree(const Element& x, const GeneratorSet& gens) {
  if (x.is_zero()) throw Error(ErrorCode::NotHomogeneous, "the zero element has no degree");
  auto d = x.degree(gens);
  if (!d) throw Error(ErrorCode::NotHomogeneous, "element '" + to_string(x, gens) + "' is not homogeneous");
  return *d;
}

bool ValidationReport::has(const std::string& kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

bool PairingReport::nondegenerate() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const PairingBlock& b) { return b.nondegenerate; });
}

FreeCDGA::FreeCDGA() : slices_(std::make_shared<Slices>()) {}

FreeCDGA::FreeCDGA(std::string name, GeneratorSet gens, std::vector<Element> diff, FreeCDGAOptions options)
    : name_(std::move(name)), gens_(std::move(gens)), diff_(std::move(diff)), options_(std::move(options)),
      slices_(std::make_shared<Slices>()) {
  if (diff_.size() > gens_.size())
    throw Error(ErrorCode::GeneratorMismatch, "more differentials than generators");
  diff_.resize(gens_.size());
  for (const auto& x : diff_) x.check_generators(gens_);
  if (options_.omega) options_.omega->check_generators(gens_);
}

FreeCDGA FreeCDGA::with_name(std::string name) const {
  return FreeCDGA(std::move(name), gens_, diff_, options_);
}

FreeCDGA FreeCDGA::with_options(FreeCDGAOptions options) const {
  return FreeCDGA(name_, gens_, diff_, std::move(options));
}

Element FreeCDGA::generator(std::string_view name) const {
  auto i = gens_.index_of(name);
  if (!i) throw Error(ErrorCode::UnknownGenerator, "no generator named '" + std::string(name) + "'");
  return Element::generator(*i);
}

Element FreeCDGA::d(const Element& x) const {
  x.check_generators(gens_);
  Element out;
  for (const auto& [m, c] : x.terms()) {
    const auto seq = expand(m);
    int prefix_degree = 0;
    for (std::size_t j = 0; j < seq.size(); ++j) {
      const Element& dg = diff_[seq[j]];
      if (!dg.is_zero()) {
        Element left(collect(seq, 0, j), prefix_degree % 2 == 0 ? c : Rational(-c));
        Element term = cdga::multiply(cdga::multiply(left, dg, gens_), Element(collect(seq, j + 1, seq.size())), gens_);
        out += term;
      }
      prefix_degree += gens_.degree(seq[j]);
    }
  }
  return out;
}

const std::vector<Monomial>& FreeCDGA::basis(int k) const {
  {
    std::lock_guard lock(slices_->mutex);
    auto it = slices_->slices.find(k);
    if (it != slices_->slices.end()) return it->second->basis;
  }
  auto slice = std::make_shared<Slices::Slice>();
  if (k >= 0) slice->basis = degree_basis(gens_, k);
  for (std::size_t i = 0; i < slice->basis.size(); ++i) slice->index.emplace(slice->basis[i], i);
  std::lock_guard lock(slices_->mutex);
  auto [it, inserted] = slices_->slices.try_emplace(k, std::move(slice));
  return it->second->basis;
}

std::size_t FreeCDGA::dimension(int k) const { return basis(k).size(); }

Vector FreeCDGA::coordinates(const Element& x, int k) const {
  basis(k);
  const Slices::Slice* slice = nullptr;
  {
    std::lock_guard lock(slices_->mutex);
    slice = slices_->slices.at(k).get();
  }
  Vector v = zero_vector(slice->basis.size());
  for (const auto& [m, c] : x.terms()) {
    auto it = slice->index.find(m);
    if (it == slice->index.end())
      throw Error(ErrorCode::NotHomogeneous,
                  "term '" + to_string(m, gens_) + "' does not have degree " + std::to_string(k));
    v[it->second] = c;
  }
  return v;
}

Element FreeCDGA::element(const Vector& v, int k) const {
  const auto& b = basis(k);
  if (v.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector has the wrong length");
  Element x;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (v[i] != 0) x.add_term(b[i], v[i]);
  return x;
}

RationalMatrix FreeCDGA::differential_matrix(int k) const {
  {
    std::lock_guard lock(slices_->mutex);
    auto it = slices_->differentials.find(k);
    if (it != slices_->differentials.end()) return *it->second;
  }
  const auto& source = basis(k);
  auto m = std::make_shared<RationalMatrix>(dimension(k + 1), source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    Vector col = coordinates(d(Element(source[j])), k + 1);
    for (std::size_t i = 0; i < col.size(); ++i)
      if (col[i] != 0) m->set(i, j, col[i]);
  }
  std::lock_guard lock(slices_->mutex);
  auto [it, inserted] = slices_->differentials.try_emplace(k, std::move(m));
  return *it->second;
}

Vector FreeCDGA::multiply(int p, const Vector& x, int q, const Vector& y) const {
  return coordinates(cdga::multiply(element(x, p), element(y, q), gens_), p + q);
}

ValidationReport FreeCDGA::validate() const {
  ValidationReport report;
  auto add = [&](std::string kind, std::size_t gen, std::string message) {
    report.violations.push_back({std::move(kind), gens_.name(gen), std::move(message)});
  };
  bool differential_sane = true;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Element& dx = diff_[i];
    if (dx.is_zero()) continue;
    auto deg = dx.degree(gens_);
    if (!deg) {
      add("not_homogeneous", i, "d(" + gens_.name(i) + ") is not homogeneous");
      differential_sane = false;
      continue;
    }
    if (*deg != gens_.degree(i) + 1) {
      add("wrong_degree", i, "d(" + gens_.name(i) + ") has degree " + std::to_string(*deg) + ", expected " +
                                 std::to_string(gens_.degree(i) + 1));
      differential_sane = false;
    }
    Element dd = d(dx);
    if (!dd.is_zero()) {
      add("d_squared", i, "d(d(" + gens_.name(i) + ")) = " + to_string(dd, gens_));
      differential_sane = false;
    }
    if (options_.minimal) {
      for (const auto& [m, c] : dx.terms()) {
        if (m.length() <= 1) {
          add("linear_part", i, "d(" + gens_.name(i) + ") has the linear term " + to_string(m, gens_));
          break;
        }
      }
      for (const auto& [m, c] : dx.terms()) {
        if (!m.is_unit() && m.max_index() >= i) {
          add("ordering", i, "d(" + gens_.name(i) + ") uses a generator that does not precede it");
          break;
        }
      }
    }
  }
  if (options_.omega) {
    const Element& w = *options_.omega;
    auto deg = w.degree(gens_);
    if (!w.is_zero() && (!deg || *deg != 2))
      report.violations.push_back({"omega_degree", "", "omega is not homogeneous of degree 2"});
    else if (!d(w).is_zero())
      report.violations.push_back({"omega_not_closed", "", "d(omega) = " + to_string(d(w), gens_)});
  }
  if (differential_sane && options_.formal_dim && !options_.complete_through) {
    const int m = *options_.formal_dim;
    for (int k = m + 1; k <= m + 2; ++k) {
      if (cohomology(k).dim() != 0)
        report.violations.push_back({"cohomology_above_dim", "",
                                     "H^" + std::to_string(k) + " is nonzero above the declared dimension"});
    }
  }
  return report;
}

Vector FreeCDGA::class_coordinates(const Element& z, std::optional<int> degree) const {
  if (z.is_zero()) {
    if (!degree) return {};
    return zero_vector(cohomology(*degree).dim());
  }
  const int k = homogeneous_degree(z, gens_);
  if (degree && *degree != k)
    throw Error(ErrorCode::NotHomogeneous, "element does not have degree " + std::to_string(*degree));
  return cohomology(k).class_of(coordinates(z, k));
}

bool FreeCDGA::is_exact(const Element& z, std::optional<int> degree) const {
  return is_zero(class_coordinates(z, degree));
}

std::vector<Element> FreeCDGA::cohomology_representatives(int k) const {
  std::vector<Element> out;
  for (const auto& v : cohomology(k).representatives()) out.push_back(element(v, k));
  return out;
}

Element FreeCDGA::class_representative(int k, const Vector& class_coords) const {
  return element(cohomology(k).cocycle(class_coords), k);
}

RationalMatrix FreeCDGA::cup_product_map(const Element& c, int i) const {
  const int p = c.is_zero() ? 0 : homogeneous_degree(c, gens_);
  if (!d(c).is_zero()) throw Error(ErrorCode::NotClosed, "cup product factor is not closed");
  if (c.is_zero()) return RationalMatrix(cohomology(i).dim(), cohomology(i).dim());
  return GradedAlgebra::cup_product_map(p, coordinates(c, p), i);
}

PairingReport FreeCDGA::poincare_pairing() const {
  if (!options_.formal_dim) throw Error(ErrorCode::MissingDimension, "algebra '" + name_ + "' declares no dimension");
  const int m = *options_.formal_dim;
  if (cohomology(m).dim() != 1)
    throw Error(ErrorCode::TopClassNotLine, "H^" + std::to_string(m) + " has dimension " +
                                                std::to_string(cohomology(m).dim()));
  PairingReport report;
  report.dim = m;
  for (int i = 0; 2 * i <= m; ++i) {
    const auto& left = cohomology(i);
    const auto& right = cohomology(m - i);
    PairingBlock block;
    block.degree = i;
    block.matrix = RationalMatrix(left.dim(), right.dim());
    for (std::size_t a = 0; a < left.dim(); ++a) {
      for (std::size_t b = 0; b < right.dim(); ++b) {
        Vector top = cohomology(m).class_of(multiply(i, left.representatives()[a], m - i, right.representatives()[b]));
        if (top[0] != 0) block.matrix.set(a, b, top[0]);
      }
    }
    block.rank = rank(block.matrix);
    block.nondegenerate = block.rank == left.dim() && block.rank == right.dim();
    report.blocks.push_back(std::move(block));
  }
  return report;
}

Element FreeCDGA::substitute(const Element& x, const std::vector<Element>& images, const GeneratorSet& target) const {
  x.check_generators(gens_);
  if (images.size() != gens_.size())
    throw Error(ErrorCode::GeneratorMismatch, "one image per generator is required");
  Element out;
  for (const auto& [m, c] : x.terms()) {
    Element term = Element::scalar(c);
    for (const auto& [i, e] : m.factors())
      for (std::uint32_t k = 0; k < e; ++k) term = cdga::multiply(term, images[i], target);
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------

FreeCDGA tensor_product(const FreeCDGA& a, const FreeCDGA& b, bool auto_rename) {
  struct Entry {
    Generator gen;
    bool from_a;
    std::size_t old_index;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < a.generators().size(); ++i) entries.push_back({a.generators()[i], true, i});
  for (std::size_t i = 0; i < b.generators().size(); ++i) {
    Generator g = b.generators()[i];
    auto taken = [&](const std::string& name) {
      return std::any_of(entries.begin(), entries.end(), [&](const Entry& e) { return e.gen.name == name; }) ||
             (name != g.name && b.generators().index_of(name).has_value());
    };
    if (taken(g.name)) {
      if (!auto_rename) throw Error(ErrorCode::NameCollision, "generator '" + g.name + "' occurs in both factors");
      int suffix = 2;
      while (taken(g.name + "_" + std::to_string(suffix))) ++suffix;
      g.name += "_" + std::to_string(suffix);
    }
    entries.push_back({g, false, i});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.gen.degree < y.gen.degree; });

  std::vector<std::uint32_t> map_a(a.generators().size()), map_b(b.generators().size());
  std::vector<Generator> gens;
  for (std::size_t n = 0; n < entries.size(); ++n) {
    (entries[n].from_a ? map_a : map_b)[entries[n].old_index] = static_cast<std::uint32_t>(n);
    gens.push_back(entries[n].gen);
  }
  // Stable sorting keeps the relative order inside each factor, so relabelling
  // a monomial never reorders its factors and introduces no sign.
  auto relabel = [](const Element& x, const std::vector<std::uint32_t>& map) {
    Element out;
    for (const auto& [m, c] : x.terms()) {
      std::vector<Monomial::Factor> f;
      for (const auto& [i, e] : m.factors()) f.emplace_back(map[i], e);
      out.add_term(Monomial(std::move(f)), c);
    }
    return out;
  };
  std::vector<Element> diff(entries.size());
  for (std::size_t n = 0; n < entries.size(); ++n) {
    const auto& e = entries[n];
    diff[n] = e.from_a ? relabel(a.differentials()[e.old_index], map_a) : relabel(b.differentials()[e.old_index], map_b);
  }

  FreeCDGAOptions opt;
  if (a.formal_dim() && b.formal_dim()) opt.formal_dim = *a.formal_dim() + *b.formal_dim();
  if (a.omega() && b.omega()) opt.omega = relabel(*a.omega(), map_a) + relabel(*b.omega(), map_b);
  const auto ta = a.complete_through(), tb = b.complete_through();
  if (ta && tb) opt.complete_through = std::min(*ta, *tb);
  else if (ta) opt.complete_through = ta;
  else if (tb) opt.complete_through = tb;
  opt.minimal = a.claims_minimal() && b.claims_minimal();
  return FreeCDGA(a.name() + "_x_" + b.name(), GeneratorSet(std::move(gens)), std::move(diff), std::move(opt));
}

FiniteCDGA cohomology_cdga(const FreeCDGA& a, int bound) {
  std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(std::max(bound, 0) + 1));
  for (int k = 0; k <= bound; ++k)
    for (const auto& rep : a.cohomology_representatives(k))
      labels[static_cast<std::size_t>(k)].push_back("[" + to_string(rep, a.generators()) + "]");
  if (labels[0].size() != 1) throw Error(ErrorCode::NotConnected, "H^0 is not one-dimensional");
  FiniteCDGA::Table table;
  for (int p = 1; p <= bound; ++p) {
    for (int q = 1; p + q <= bound; ++q) {
      const auto& hp = a.cohomology(p);
      const auto& hq = a.cohomology(q);
      if (hp.dim() == 0 || hq.dim() == 0) continue;
      std::vector<std::vector<Vector>> rows(hp.dim(), std::vector<Vector>(hq.dim()));
      for (std::size_t i = 0; i < hp.dim(); ++i)
        for (std::size_t j = 0; j < hq.dim(); ++j)
          rows[i][j] = a.cohomology(p + q).class_of(a.multiply(p, hp.representatives()[i], q, hq.representatives()[j]));
      table[{p, q}] = std::move(rows);
    }
  }
  return FiniteCDGA(a.name() + "_cohomology", std::move(labels), std::move(table));
}

}  // namespace cdga
