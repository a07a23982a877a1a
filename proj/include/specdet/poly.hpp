#ifndef SPECDET_POLY_HPP
#define SPECDET_POLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "specdet/numeric.hpp"
#include "specdet/rational.hpp"

namespace specdet {

/// Univariate polynomial with exact rational coefficients, constant term first.
class Polynomial {
public:
    explicit Polynomial(std::vector<Rational> ascending_coefficients);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    const Rational& leading() const { return coeffs_.back(); }
    const Rational& constant_term() const { return coeffs_.front(); }

    Rational operator()(const Rational& z) const;
    Real operator()(const Real& z) const;
    Complex operator()(const Complex& z) const;

    Polynomial derivative() const;

    // p(z) - w with exact coefficients.
    Polynomial shifted(const Rational& w) const;

    // p(z)/z, defined when the constant term vanishes.
    Polynomial divided_by_z() const;

    // R(0) = 0 and R'(0) > 1, the shape required of a decimation polynomial.
    bool is_decimation_polynomial() const;

    std::string str(const std::string& var = "z") const;

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<Rational> coeffs_;
};

struct Root {
    Complex value;
    int multiplicity = 1;
    bool is_real = false;
    std::optional<Rational> exact;

    NumericValue numeric() const {
        NumericValue v;
        if (exact) v.exact = *exact;
        v.approx = value.re;
        return v;
    }
};

/// All roots of one polynomial, with certified multiplicities.
struct RootSet {
    std::vector<Root> roots;
    int precision_bits = 0;

    int total_multiplicity() const {
        int t = 0;
        for (const auto& r : roots) t += r.multiplicity;
        return t;
    }
    bool all_real() const {
        for (const auto& r : roots)
            if (!r.is_real) return false;
        return true;
    }
};

/// Roots of p, exact rational fast paths for degree <= 2 (and rational-root
/// deflation above that), Aberth-Ehrlich simultaneous iteration otherwise.
RootSet find_roots(const Polynomial& p, int precision_bits);

/// Numeric path only: Aberth iteration regardless of degree, no exact
/// shortcuts. Exposed so tests can cross-check the iteration against Vieta.
RootSet find_roots_numeric(const Polynomial& p, int precision_bits);

/// All d solutions of p(z) = w counted with multiplicity.
RootSet preimages(const Polynomial& p, const Rational& w, int precision_bits);
RootSet preimages(const Polynomial& p, const NumericValue& w, int precision_bits);

/// Product of the nonzero roots of a polynomial with p(0) = 0 and 0 simple,
/// straight from the coefficient ratio: (-1)^(d-1) * a_1 / a_d.
Rational nonzero_root_product(const Polynomial& p);

} // namespace specdet

#endif // SPECDET_POLY_HPP
