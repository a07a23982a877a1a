#ifndef SPECDET_LOGSPACE_HPP
#define SPECDET_LOGSPACE_HPP

#include <map>
#include <string>

#include "specdet/numeric.hpp"
#include "specdet/rational.hpp"

namespace specdet {

/**
 * Exact linear combination of logarithms of primes with rational coefficients.
 *
 * Every determinant closed form in this project is a rational combination of
 * log(positive rational) values; factoring each base into primes yields a
 * canonical coordinate vector (logs of distinct primes are linearly
 * independent over Q), so identities between closed forms can be decided
 * exactly, before any floating evaluation.
 */
class LogCombination {
public:
    LogCombination() = default;

    // log(r) for a positive rational r, scaled by coeff.
    static LogCombination log_of(const Rational& r, const Rational& coeff = Rational(1));

    LogCombination& operator+=(const LogCombination& o);
    LogCombination& operator-=(const LogCombination& o);
    LogCombination operator+(const LogCombination& o) const;
    LogCombination operator-(const LogCombination& o) const;
    LogCombination operator*(const Rational& s) const;
    LogCombination operator-() const;

    bool operator==(const LogCombination& o) const { return coeff_ == o.coeff_; }
    bool is_zero() const { return coeff_.empty(); }

    // Numeric value at the current working precision.
    Real value() const;

    // Rational coefficient of log(prime); 0 when absent.
    Rational coefficient(const Integer& prime) const;

    const std::map<Integer, Rational>& coefficients() const { return coeff_; }

    // e.g. "3*log(2) + 1/2*log(3) - 1/2*log(5)"
    std::string str() const;

private:
    std::map<Integer, Rational> coeff_;
    void add_term(const Integer& prime, const Rational& c);
};

// Prime factorization by trial division. Cofactors that survive division up
// to 10^6 are accepted only when provably prime (below 10^12); beyond that we
// refuse rather than risk a non-canonical basis.
std::map<Integer, int> factor_integer(Integer n);

} // namespace specdet

#endif // SPECDET_LOGSPACE_HPP
