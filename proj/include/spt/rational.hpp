#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace spt {

// Exact rational scalar. mpq_class keeps values in canonical form
// (positive denominator, gcd(|num|, den) = 1) after every operation.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// -1, 0, +1
inline int sgn(const Rational& r) { return mpq_sgn(r.get_mpq_t()); }

inline Rational abs(const Rational& r) { return ::abs(r); }

// Accepts "p" or "p/q" with q > 0 after canonicalization.
Rational parse_rational(const std::string& s);

// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& r);

}  // namespace spt
