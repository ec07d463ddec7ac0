#include "cdga/massey.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "cdga/error.hpp"

namespace cdga {

std::string to_string(MasseyVerdict v) {
  switch (v) {
    case MasseyVerdict::Vanishes: return "VANISHES";
    case MasseyVerdict::Nonvanishing: return "NONVANISHING";
    case MasseyVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

// A polynomial in the rational parameters with coefficients in one degree
// slice of the algebra. Keys are sorted multisets of parameter ids.
using Params = std::vector<std::size_t>;
struct Poly {
  int degree = 0;
  std::map<Params, Vector> terms;
};

void add_into(std::map<Params, Vector>& terms, const Params& p, const Vector& v, const Rational& c) {
  if (c == 0 || is_zero(v)) return;
  auto [it, inserted] = terms.try_emplace(p, zero_vector(v.size()));
  for (std::size_t r = 0; r < v.size(); ++r) it->second[r] += c * v[r];
  if (is_zero(it->second)) terms.erase(it);
}

Poly product(const GradedAlgebra& alg, const Poly& x, const Poly& y, int sign) {
  Poly out{x.degree + y.degree, {}};
  for (const auto& [px, vx] : x.terms) {
    for (const auto& [py, vy] : y.terms) {
      Params p;
      std::merge(px.begin(), px.end(), py.begin(), py.end(), std::back_inserter(p));
      add_into(out.terms, p, alg.multiply(x.degree, vx, y.degree, vy), Rational(sign));
    }
  }
  return out;
}

struct Affine {
  Rational constant;
  std::map<std::size_t, Rational> linear;
};
using Substitution = std::map<std::size_t, Affine>;

Poly substitute(const Poly& x, const Substitution& s) {
  Poly out{x.degree, {}};
  for (const auto& [params, v] : x.terms) {
    std::vector<std::pair<Params, Rational>> acc{{Params{}, Rational(1)}};
    for (std::size_t id : params) {
      auto it = s.find(id);
      if (it == s.end()) {
        for (auto& [p, c] : acc) p.push_back(id);
        continue;
      }
      std::vector<std::pair<Params, Rational>> next;
      for (const auto& [p, c] : acc) {
        if (it->second.constant != 0) next.emplace_back(p, c * it->second.constant);
        for (const auto& [f, coef] : it->second.linear) {
          Params q = p;
          q.push_back(f);
          next.emplace_back(std::move(q), c * coef);
        }
      }
      acc = std::move(next);
    }
    for (auto& [p, c] : acc) {
      std::sort(p.begin(), p.end());
      add_into(out.terms, p, v, c);
    }
  }
  return out;
}

int bar_sign(int degree) { return degree % 2 == 0 ? 1 : -1; }

// Solves sum_p lambda_p L_p = -c0 for the parameters in `linear`. Returns
// the substitution for pivot parameters; throws NotDefined when inconsistent.
Substitution solve_constraints(const std::map<std::size_t, Vector>& linear, const Vector& c0, std::size_t rows) {
  std::vector<std::size_t> ids;
  for (const auto& [id, v] : linear) ids.push_back(id);
  const std::size_t n = ids.size();
  RationalMatrix m(rows, n + 1);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t r = 0; r < rows; ++r)
      if (linear.at(ids[q])[r] != 0) m.set(r, q, linear.at(ids[q])[r]);
  for (std::size_t r = 0; r < rows; ++r)
    if (c0[r] != 0) m.set(r, n, -c0[r]);
  const Echelon e = reduced_row_echelon(m);
  Substitution out;
  for (std::size_t k = 0; k < e.rank(); ++k) {
    if (e.pivots[k] == n) throw Error(ErrorCode::NotDefined, "no defining system exists");
    Affine a;
    for (const auto& [col, val] : e.rows[k]) {
      if (col == e.pivots[k]) continue;
      if (col == n) a.constant = val;
      else a.linear[ids[col]] = -val;
    }
    out[ids[e.pivots[k]]] = std::move(a);
  }
  return out;
}

}  // namespace

MasseyResult massey_product(const GradedAlgebra& alg, const std::vector<std::pair<int, Vector>>& classes) {
  const std::size_t t = classes.size();
  if (t < 3) throw Error(ErrorCode::NotDefined, "a Massey product needs at least three classes");
  MasseyResult result;
  for (const auto& [p, v] : classes) {
    if (v.size() != alg.dimension(p)) throw Error(ErrorCode::DimensionMismatch, "class vector has the wrong length");
    alg.class_of(p, v);  // throws NotClosed
    result.degrees.push_back(p);
  }
  result.degree = std::accumulate(result.degrees.begin(), result.degrees.end(), 0) - static_cast<int>(t - 2);

  // a[i][j] for i <= j; a[0][t-1] is never built.
  std::vector<std::vector<Poly>> a(t, std::vector<Poly>(t));
  std::vector<std::vector<bool>> built(t, std::vector<bool>(t, false));
  for (std::size_t i = 0; i < t; ++i) {
    a[i][i].degree = classes[i].first;
    add_into(a[i][i].terms, {}, classes[i].second, 1);
    built[i][i] = true;
  }
  std::size_t next_param = 0;
  Poly rep;

  for (std::size_t len = 2; len <= t; ++len) {
    for (std::size_t i = 0; i + len <= t; ++i) {
      const std::size_t j = i + len - 1;
      int deg = -static_cast<int>(len - 1);
      for (std::size_t k = i; k <= j; ++k) deg += result.degrees[k];

      Poly rhs{deg + 1, {}};
      for (std::size_t k = i; k < j; ++k) {
        Poly term = product(alg, a[i][k], a[k + 1][j], bar_sign(a[i][k].degree));
        for (const auto& [p, v] : term.terms) add_into(rhs.terms, p, v, 1);
      }
      if (len == t) {
        rep = std::move(rhs);
        continue;
      }

      const auto& h = alg.cohomology(deg + 1);
      Vector c0 = zero_vector(h.dim());
      std::map<std::size_t, Vector> linear;
      for (const auto& [p, v] : rhs.terms) {
        Vector c = h.class_of(v);
        if (is_zero(c)) continue;
        if (p.empty()) c0 = c;
        else if (p.size() == 1) linear[p[0]] = c;
        else {
          result.verdict = MasseyVerdict::Inconclusive;
          result.affine = false;
          result.parameters = next_param;
          result.note = "the defining system has a quadratic obstruction at a_" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1);
          return result;
        }
      }
      if (!linear.empty() || !is_zero(c0)) {
        const Substitution sub = solve_constraints(linear, c0, h.dim());
        for (std::size_t x = 0; x < t; ++x)
          for (std::size_t y = x; y < t; ++y)
            if (built[x][y]) a[x][y] = substitute(a[x][y], sub);
        rhs = substitute(rhs, sub);
      }

      Poly sol{deg, {}};
      const RationalMatrix d = alg.differential_matrix(deg);
      for (const auto& [p, v] : rhs.terms) {
        auto x = solve(d, v);
        if (!x) throw Error(ErrorCode::NotDefined, "internal: a constrained defining equation has no solution");
        add_into(sol.terms, p, *x, 1);
      }
      for (const auto& r : alg.cohomology(deg).representatives()) add_into(sol.terms, {next_param++}, r, 1);
      a[i][j] = std::move(sol);
      built[i][j] = true;
    }
  }

  const auto& h = alg.cohomology(rep.degree);
  result.parameters = next_param;
  result.representative = zero_vector(h.dim());
  std::map<std::size_t, Vector> linear;
  std::vector<Vector> family;
  std::set<std::size_t> in_products;
  for (const auto& [p, v] : rep.terms) {
    Vector c = h.class_of(v);
    if (is_zero(c)) continue;  // these terms never move the class
    if (p.empty()) {
      result.representative = c;
      continue;
    }
    family.push_back(c);
    if (p.size() == 1) linear[p[0]] = c;
    else {
      result.affine = false;
      in_products.insert(p.begin(), p.end());
    }
  }
  result.indeterminacy = Subspace::span(h.dim(), family);
  std::vector<Vector> free_linear;
  for (const auto& [id, c] : linear)
    if (!in_products.count(id)) free_linear.push_back(c);

  if (!result.indeterminacy.contains(result.representative)) {
    result.verdict = MasseyVerdict::Nonvanishing;
  } else if (Subspace::span(h.dim(), free_linear).contains(result.representative)) {
    result.verdict = MasseyVerdict::Vanishes;
  } else {
    result.verdict = MasseyVerdict::Inconclusive;
    result.note = "the representative reaches zero only through products of parameters";
  }
  return result;
}

namespace {

std::vector<std::pair<int, Vector>> as_classes(const FreeCDGA& a, const std::vector<Element>& xs) {
  std::vector<std::pair<int, Vector>> out;
  for (const auto& x : xs) {
    const int p = homogeneous_degree(x, a.generators());
    out.emplace_back(p, a.coordinates(x, p));
  }
  return out;
}

}  // namespace

MasseyResult massey_triple(const FreeCDGA& a, const Element& a1, const Element& a2, const Element& a3) {
  return massey_product(a, as_classes(a, {a1, a2, a3}));
}

MasseyResult massey_higher(const FreeCDGA& a, const std::vector<Element>& classes) {
  return massey_product(a, as_classes(a, classes));
}

Subspace triple_indeterminacy(const FreeCDGA& a, const Element& a1, const Element& a2, const Element& a3) {
  const auto& g = a.generators();
  const int p1 = homogeneous_degree(a1, g);
  const int p2 = homogeneous_degree(a2, g);
  const int p3 = homogeneous_degree(a3, g);
  const int top = p1 + p2 + p3 - 1;
  std::vector<Vector> classes;
  for (const auto& r : a.cohomology_representatives(p2 + p3 - 1))
    classes.push_back(a.class_coordinates(a.multiply(a1, r), top));
  for (const auto& r : a.cohomology_representatives(p1 + p2 - 1))
    classes.push_back(a.class_coordinates(a.multiply(r, a3), top));
  return Subspace::span(a.cohomology(top).dim(), classes);
}

bool within_windows(const std::vector<int>& degrees, int s) {
  const int t = static_cast<int>(degrees.size());
  if (t < 3) return false;
  const int total = std::accumulate(degrees.begin(), degrees.end(), 0);
  return total - degrees.back() <= s + t - 2 && total - degrees.front() <= s + t - 2;
}

MasseyScan massey_obstruction_scan(const FreeCDGA& a, int s, int max_length, MasseyScanOptions options) {
  MasseyScan scan;
  const auto truncated = a.complete_through();
  bool done = false;

  for (int t = 3; t <= max_length && !done; ++t) {
    // Both windows force every p_i <= s.
    std::vector<int> degrees(static_cast<std::size_t>(t), 1);
    std::function<void(std::size_t)> degree_vectors = [&](std::size_t pos) {
      if (done) return;
      if (pos == degrees.size()) {
        if (!within_windows(degrees, s)) return;
        const int total = std::accumulate(degrees.begin(), degrees.end(), 0) - (t - 2);
        if (truncated && total > *truncated + 1) return;
        std::vector<std::size_t> idx(degrees.size(), 0);
        std::function<void(std::size_t)> tuples = [&](std::size_t k) {
          if (done) return;
          if (k == idx.size()) {
            if (scan.evaluated >= options.evaluation_cap) {
              scan.capped = true;
              done = true;
              return;
            }
            ++scan.evaluated;
            std::vector<std::pair<int, Vector>> classes;
            for (std::size_t q = 0; q < idx.size(); ++q)
              classes.emplace_back(degrees[q], a.cohomology(degrees[q]).representatives()[idx[q]]);
            try {
              MasseyResult r = massey_product(a, classes);
              if (r.verdict == MasseyVerdict::Nonvanishing) {
                scan.hits.push_back({degrees, idx, std::move(r)});
                if (options.stop_at_first) done = true;
              }
            } catch (const Error& e) {
              if (e.code() != ErrorCode::NotDefined) throw;
            }
            return;
          }
          const std::size_t n = a.cohomology(degrees[k]).dim();
          for (std::size_t r = 0; r < n && !done; ++r) {
            idx[k] = r;
            tuples(k + 1);
          }
        };
        tuples(0);
        return;
      }
      for (int p = 1; p <= std::max(s, 1) && !done; ++p) {
        degrees[pos] = p;
        degree_vectors(pos + 1);
      }
    };
    degree_vectors(0);
  }
  return scan;
}

}  // namespace cdga
