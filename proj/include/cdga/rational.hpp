#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cdga {

/// Arbitrary-precision rational; always kept canonical (gcd-reduced, positive denominator).
using Rational = mpq_class;
using Vector = std::vector<Rational>;

std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q". Throws cdga::Error(Parse) on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Sum of the bit lengths of numerator and denominator; the pivot cost used by elimination.
std::size_t bit_length(const Rational& q);

bool is_zero(const Vector& v);

Vector zero_vector(std::size_t n);

}  // namespace cdga
