#ifndef SPECDET_NUMERIC_HPP
#define SPECDET_NUMERIC_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <optional>
#include <string>

#include "specdet/rational.hpp"

namespace specdet {

// Arbitrary-precision real. Precision is a runtime property: every value is
// created at the precision installed by the innermost PrecisionScope.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>>;

inline unsigned bits_to_digits(int bits) {
    // ceil(bits * log10(2)) plus guard digits
    return static_cast<unsigned>(bits * 0.3010299956639812) + 4;
}

// RAII working-precision switch (bits of mantissa).
class PrecisionScope {
public:
    explicit PrecisionScope(int bits)
        : previous_(Real::default_precision()) {
        Real::default_precision(bits_to_digits(bits));
    }
    ~PrecisionScope() { Real::default_precision(previous_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned previous_;
};

inline Real to_real(const Rational& r) { return Real(r); }

// 2^-k at the current precision, as comparison thresholds.
inline Real pow2(int k) {
    Real one(1);
    return boost::multiprecision::ldexp(one, k);
}

// std::max/abs trip over Boost expression templates; these force evaluation.
inline Real rmax(const Real& a, const Real& b) { return a > b ? a : b; }
inline Real rabs(const Real& a) { return a < 0 ? Real(-a) : a; }

// Minimal complex value over Real; only the operations the root finder and
// the zeta evaluations need.
struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(const Real& r) : re(r), im(0) {}
    explicit Complex(const Rational& r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }

    Complex operator-() const { return {-re, -im}; }
    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
    Complex operator*(const Complex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Complex operator*(const Real& s) const { return {re * s, im * s}; }
    Complex operator/(const Complex& o) const {
        Real d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    Real norm2() const { return re * re + im * im; }
    Real abs() const { return boost::multiprecision::sqrt(norm2()); }
};

inline Complex exp(const Complex& z) {
    using boost::multiprecision::exp;
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

// base^(-s) for base > 0 and complex s; principal power of a positive real,
// the only complex power the zeta sums require.
inline Complex pow_positive(const Real& base, const Complex& minus_s) {
    if (base <= 0)
        throw Error("pow_positive: base must be positive");
    Real lg = boost::multiprecision::log(base);
    return exp(Complex{minus_s.re * lg, minus_s.im * lg});
}

// An eigenvalue-like quantity: exact rational whenever the algebra allows,
// always carrying a high-precision approximation.
struct NumericValue {
    std::optional<Rational> exact;
    Real approx;

    NumericValue() : approx(0) {}
    explicit NumericValue(const Rational& r) : exact(r), approx(r) {}
    explicit NumericValue(Real x) : approx(std::move(x)) {}

    bool is_exact() const { return exact.has_value(); }

    // Interval-style identity test at half working precision.
    bool same_value(const NumericValue& o, int bits) const {
        if (exact && o.exact) return *exact == *o.exact;
        Real scale = rmax(Real(1), rabs(approx));
        return rabs(approx - o.approx) < pow2(-bits / 2) * scale;
    }

    NumericValue negated() const {
        NumericValue out;
        if (exact) out.exact = -*exact;
        out.approx = -approx;
        return out;
    }
};

inline std::string real_str(const Real& x, unsigned digits = 30) {
    return x.str(digits);
}

} // namespace specdet

#endif // SPECDET_NUMERIC_HPP
