#ifndef SPECDET_RATIONAL_HPP
#define SPECDET_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "specdet/errors.hpp"

namespace specdet {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Parses "p", "p/q" or "-p/q". Whitespace around tokens is not accepted;
// the CLI keeps rationals as strings end-to-end so exact paths never see floats.
inline Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw ParseError("empty rational literal");
    try {
        Rational r(text);
        return r;
    } catch (const std::exception&) {
        throw ParseError("not a rational literal: '" + text + "'");
    }
}

inline std::string rational_str(const Rational& r) {
    return r.str();
}

inline bool is_integer(const Rational& r) {
    return denominator(r) == 1;
}

inline Integer to_integer(const Rational& r) {
    if (!is_integer(r))
        throw Error("rational " + r.str() + " is not an integer");
    return numerator(r);
}

inline Rational pow_rational(const Rational& base, int e) {
    if (e >= 0) {
        Rational out(1);
        for (int i = 0; i < e; ++i) out *= base;
        return out;
    }
    if (base == 0)
        throw Error("0 raised to negative power");
    return Rational(1) / pow_rational(base, -e);
}

inline Integer ipow(const Integer& base, int e) {
    Integer out(1);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

// True when r = (a/b)^2 for some rational a/b; used by the exact quadratic path.
inline bool rational_sqrt(const Rational& r, Rational& out) {
    if (r < 0) return false;
    Integer num = numerator(r), den = denominator(r);
    Integer sn = sqrt(num), sd = sqrt(den);
    if (sn * sn == num && sd * sd == den) {
        out = Rational(sn) / Rational(sd);
        return true;
    }
    return false;
}

} // namespace specdet

#endif // SPECDET_RATIONAL_HPP
