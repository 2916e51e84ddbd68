#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace oac {

/// Exact scalar used everywhere in the calculus.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q > 0). Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

inline Rational abs_value(const Rational& q) { return Rational(abs(q)); }

inline const Rational& max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline const Rational& min_of(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace oac
