#include "cdga/lefschetz.hpp"

#include <algorithm>

#include "cdga/error.hpp"

namespace cdga {

namespace {

int half_dimension(const FreeCDGA& a) {
  if (!a.formal_dim()) throw Error(ErrorCode::MissingDimension, "the algebra has no declared dimension");
  if (*a.formal_dim() % 2 != 0)
    throw Error(ErrorCode::OddDimension, "dimension " + std::to_string(*a.formal_dim()) + " is odd");
  return *a.formal_dim() / 2;
}

const Element& symplectic_class(const FreeCDGA& a) {
  if (!a.omega() || a.omega()->is_zero()) throw Error(ErrorCode::NoSymplecticClass, "no omega declared");
  const Element& w = *a.omega();
  if (w.degree(a.generators()) != 2) throw Error(ErrorCode::NoSymplecticClass, "omega does not have degree 2");
  if (!a.d(w).is_zero()) throw Error(ErrorCode::NoSymplecticClass, "omega is not closed");
  return w;
}

std::size_t lefschetz_rank(const FreeCDGA& a, int n, int i) {
  const Element c = power(symplectic_class(a), static_cast<unsigned>(n - i), a.generators());
  return rank(a.cup_product_map(c, i));
}

}  // namespace

LefschetzReport s_lefschetz(const FreeCDGA& a, int s) {
  const Element& w = symplectic_class(a);
  LefschetzReport report;
  report.n = half_dimension(a);
  report.s = s;
  if (s < 0) throw Error(ErrorCode::DegreeOutOfRange, "s must be non-negative");
  const int top = std::min(s, report.n - 1);
  report.passes = true;
  for (int i = 0; i <= top; ++i) {
    const Element c = power(w, static_cast<unsigned>(report.n - i), a.generators());
    const RationalMatrix m = a.cup_product_map(c, i);
    LefschetzDegree d;
    d.i = i;
    d.rank = rank(m);
    d.source_dim = a.cohomology(i).dim();
    d.target_dim = a.cohomology(2 * report.n - i).dim();
    d.iso = d.rank == d.source_dim && d.rank == d.target_dim;
    const Subspace kernel = kernel_basis(m);
    for (const auto& v : kernel.basis()) d.killers.push_back(a.class_representative(i, v));
    if (!d.iso && report.passes) {
      report.passes = false;
      report.first_failure = i;
    }
    report.degrees.push_back(std::move(d));
  }
  report.parity = parity_obstruction(a);
  return report;
}

std::vector<std::pair<int, std::size_t>> parity_obstruction(const FreeCDGA& a) {
  const int n = half_dimension(a);
  std::vector<std::pair<int, std::size_t>> out;
  for (int k = 1; k <= n; k += 2) {
    const std::size_t b = a.cohomology(k).dim();
    if (b % 2 == 1) out.emplace_back(k, b);
  }
  return out;
}

Subspace restriction_kernel(const FreeCDGA& a, int p) {
  const Element& w = symplectic_class(a);
  const int n = half_dimension(a);
  if (p < 0 || p > 2 * n - 2)
    throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(p) + " is outside 0.." + std::to_string(2 * n - 2));
  return kernel_basis(a.cup_product_map(w, p));
}

std::string to_string(ZStatus s) {
  switch (s) {
    case ZStatus::Exact: return "exact";
    case ZStatus::LowerBound: return "lower_bound";
    case ZStatus::Unknown: return "unknown";
  }
  return "unknown";
}

DonaldsonReport donaldson_quotient(const FreeCDGA& a, std::optional<int> s, bool strict) {
  symplectic_class(a);
  DonaldsonReport report;
  report.n = half_dimension(a);
  const int n = report.n;
  report.s = s.value_or(n - 2);
  if (report.s < 0 || report.s > n - 2)
    throw Error(ErrorCode::DegreeOutOfRange, "s must lie in 0.." + std::to_string(n - 2));

  for (int i = 0; i <= report.s; ++i) {
    QuotientDegree q;
    q.i = i;
    q.p = 2 * (n - 1) - i;
    q.kernel = restriction_kernel(a, q.p);
    const std::size_t bp = a.cohomology(q.p).dim();
    const QuotientBasis quotient(Subspace::full(bp), q.kernel);
    q.dim = quotient.dim();
    for (const auto& v : quotient.complement()) q.basis.push_back(a.class_representative(q.p, v));
    const std::size_t bi = a.cohomology(i).dim();
    q.lefschetz = lefschetz_rank(a, n, i) == bi && bi == a.cohomology(2 * n - i).dim();
    if (strict && !q.lefschetz)
      throw Error(ErrorCode::NotSLefschetz, "M is not Lefschetz in degree " + std::to_string(i));
    report.quotients.push_back(std::move(q));
  }

  for (int k = 0; k <= 2 * n - 2; ++k) {
    ZDegree z;
    z.degree = k;
    if (k <= n - 2) {
      z.dim = a.cohomology(k).dim();
      z.status = ZStatus::Exact;
      z.source = "H^k(Z) = H^k(M) below the middle degree";
    } else if (k == n - 1) {
      z.dim = a.cohomology(k).dim();
      z.status = ZStatus::LowerBound;
      z.source = "H^k(M) injects into H^k(Z)";
    } else {
      auto it = std::find_if(report.quotients.begin(), report.quotients.end(),
                             [&](const QuotientDegree& q) { return q.p == k; });
      if (it != report.quotients.end()) {
        z.dim = a.cohomology(it->i).dim();
        z.status = ZStatus::Exact;
        z.source = it->lefschetz ? "H^p(M)/ker([omega]); equals b_i by duality on Z"
                                 : "b_i by duality on Z; the M-side quotient has dimension " + std::to_string(it->dim);
      } else {
        z.status = ZStatus::Unknown;
        z.source = "outside the computed range";
      }
    }
    report.z.push_back(std::move(z));
  }
  report.note = "classes of Z outside the image of H*(M) are not computed";
  return report;
}

std::string transport_formality(const FormalityVerdict& m_verdict, int s, int n) {
  if (s > n - 2) return "no conclusion: s must be at most n-2 = " + std::to_string(n - 2);
  if (m_verdict.status != FormalityStatus::SFormal || m_verdict.s < s)
    return "no conclusion for Z from the formality of M at s=" + std::to_string(s);
  if (s == n - 2) return "Donaldson submanifold Z is formal";
  return "Donaldson submanifold Z is " + std::to_string(s) + "-formal";
}

}  // namespace cdga
