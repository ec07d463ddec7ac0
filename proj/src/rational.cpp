#include "cdga/rational.hpp"

#include <algorithm>
#include <cctype>

#include "cdga/error.hpp"

namespace cdga {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Membership: return "MembershipError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GeneratorMismatch: return "GeneratorMismatch";
    case ErrorCode::InvalidGenerators: return "InvalidGenerators";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::MissingDimension: return "MissingDimension";
    case ErrorCode::TopClassNotLine: return "TopClassNotLine";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::JacobiFailure: return "JacobiFailure";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NonNilpotent: return "NonNilpotentDegreeOne";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::NotDefined: return "NotDefined";
    case ErrorCode::NoSymplecticClass: return "NoSymplecticClass";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotSLefschetz: return "NotSLefschetz";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::DuplicateGenerator: return "DuplicateGenerator";
  }
  return "Error";
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) ++i;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_int(num, true) || (slash != std::string_view::npos && !valid_int(den, false)))
    throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  mpz_class p(n, 10);
  mpz_class q(1);
  if (slash != std::string_view::npos) q = mpz_class(std::string(den), 10);
  if (q == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::size_t bit_length(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

}  // namespace cdga
