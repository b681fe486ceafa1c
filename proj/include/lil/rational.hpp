#ifndef LIL_RATIONAL_HPP
#define LIL_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace lil {

/// Exact scalar used by every structural computation. GMP keeps values
/// canonical (gcd(|num|, den) = 1, den >= 1) as long as inputs are canonical;
/// parsing goes through rational_from_string which canonicalizes explicitly.
using Rational = mpq_class;

/// Parses "p" or "p/q" (arbitrary precision, optional sign). Rejects anything
/// else, including q = 0.
Rational rational_from_string(const std::string& text);

/// Renders "p/q", or "p" when the denominator is 1.
std::string rational_to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

} // namespace lil

#endif
