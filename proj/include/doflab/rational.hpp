#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace doflab {

// Exact arithmetic scalars. All ranks, regions and scheme coefficients in
// this library are computed over the rationals; nothing is ever rounded.
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Safe two-integer constructor: canonicalizes sign and reduces to lowest
// terms (the raw (long, long) constructor mishandles negative denominators).
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rational(num, den);
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline Integer num(const Rational& q) { return numerator(q); }
inline Integer den(const Rational& q) { return denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// "p/q" formatting used by all machine-readable outputs; integers print bare.
inline std::string to_fraction_string(const Rational& q) {
    return q.str();
}

inline Rational rational_from_string(const std::string& s) {
    try {
        Rational q(s);
        return q;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

// 2^e for e >= 0.
inline Rational pow2(unsigned e) {
    Integer v = Integer(1) << e;
    return Rational(v);
}

}  // namespace doflab
