#include "specdet/poly.hpp"

#include <algorithm>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "specdet/errors.hpp"
#include "specdet/logspace.hpp"

namespace specdet {

namespace {

using boost::multiprecision::sqrt;

// ---------------------------------------------------------------- utilities

std::vector<Integer> divisors_of(const Integer& n) {
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : factor_integer(n)) {
        std::size_t base = divs.size();
        Integer q = 1;
        for (int k = 1; k <= e; ++k) {
            q *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * q);
        }
    }
    return divs;
}

// Exact synthetic division of p by (z - r); remainder must vanish.
std::vector<Rational> deflate(const std::vector<Rational>& coeffs, const Rational& r) {
    const std::size_t d = coeffs.size() - 1;
    std::vector<Rational> q(d);
    Rational carry = coeffs[d];
    for (std::size_t k = d; k-- > 0;) {
        q[k] = carry;
        carry = coeffs[k] + carry * r;
    }
    if (carry != 0)
        throw Error("deflate: remainder nonzero");
    return q;
}

// ------------------------------------------------------- Aberth-Ehrlich core

Complex horner(const std::vector<Complex>& coeffs, const Complex& z) {
    Complex acc = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
}

// Backward-error scale sum_k |a_k| |z|^k.
Real horner_scale(const std::vector<Complex>& coeffs, const Complex& z) {
    Real az = z.abs();
    Real acc = coeffs.back().abs();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * az + coeffs[k].abs();
    return acc;
}

std::vector<Complex> derivative_coeffs(const std::vector<Complex>& coeffs) {
    std::vector<Complex> out;
    out.reserve(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        out.push_back(coeffs[k] * Real(static_cast<long>(k)));
    return out;
}

// Simultaneous iteration on all roots of a complex-coefficient polynomial.
// Leading coefficient must be nonzero; no zero constant term handling here.
std::vector<Complex> aberth(const std::vector<Complex>& coeffs, int bits) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d < 1)
        throw Error("aberth: degree must be >= 1");

    // Cauchy-style inclusion radius.
    Real bound(0);
    Real lead = coeffs.back().abs();
    for (int k = 0; k < d; ++k) bound = rmax(bound, coeffs[k].abs() / lead);
    bound += 1;

    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    const Real pi = boost::math::constants::pi<Real>();

    std::vector<Complex> z(d);
    for (int i = 0; i < d; ++i) {
        Real theta = (2 * pi * i) / d + Real(7) / 20;  // offset breaks symmetry
        Real radius = bound * (Real(1) / 2 + Real(i % 3 + 1) / 6);
        z[i] = {radius * cos(theta), radius * sin(theta)};
    }

    const auto deriv = derivative_coeffs(coeffs);
    const Real eps = pow2(-(bits - 4));
    const int max_iterations = 600;
    std::vector<bool> settled(d, false);

    for (int iter = 0; iter < max_iterations; ++iter) {
        bool all_settled = true;
        for (int i = 0; i < d; ++i) {
            Complex pz = horner(coeffs, z[i]);
            if (pz.abs() <= eps * horner_scale(coeffs, z[i])) {
                settled[i] = true;
                continue;
            }
            all_settled = false;
            settled[i] = false;
            Complex dz = horner(deriv, z[i]);
            Complex newton = dz.is_zero() ? Complex(Real(0)) : pz / dz;
            Complex repel{Real(0), Real(0)};
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                Complex diff = z[i] - z[j];
                if (diff.is_zero()) {
                    // nudge coincident iterates apart
                    diff = {pow2(-bits / 3), pow2(-bits / 3)};
                }
                repel += Complex(Real(1)) / diff;
            }
            Complex denom = Complex(Real(1)) - newton * repel;
            Complex step = denom.is_zero() ? newton : newton / denom;
            if (dz.is_zero() && denom.is_zero()) {
                // escape a stationary configuration
                step = {pow2(-2), pow2(-3)};
            }
            z[i] = z[i] - step;
        }
        if (all_settled) return z;
    }
    throw NonConvergence("aberth: no convergence after max iterations (degree " +
                         std::to_string(d) + ")");
}

Root make_real_root(const Rational& r) {
    Root root;
    root.value = Complex(Real(r));
    root.is_real = true;
    root.exact = r;
    return root;
}

// Group numerically coincident roots, certify real ones, zero their
// imaginary parts. A root of multiplicity r is only attainable to within
// eps^(1/r), so the cluster radius is 2^(-bits/3) (covers r <= 3); the
// cluster centroid cancels the symmetric error and is certified real at
// 2^(-bits/2) per the working-precision contract.
RootSet cluster_roots(std::vector<Complex> raw, int bits) {
    RootSet out;
    out.precision_bits = bits;
    const Real tol = pow2(-bits / 3);

    std::sort(raw.begin(), raw.end(), [](const Complex& a, const Complex& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });

    std::vector<bool> used(raw.size(), false);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        Complex sum = raw[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            if (used[j]) continue;
            if ((raw[j] - raw[i]).abs() <= tol * rmax(Real(1), raw[i].abs())) {
                sum += raw[j];
                ++count;
                used[j] = true;
            }
        }
        Root root;
        root.value = {sum.re / count, sum.im / count};
        root.multiplicity = count;
        const Real real_tol = pow2(-bits / 2);
        if (rabs(root.value.im) < real_tol * rmax(Real(1), rabs(root.value.re))) {
            root.is_real = true;
            root.value.im = 0;
        }
        out.roots.push_back(std::move(root));
    }
    return out;
}

RootSet solve_quadratic_real(const Real& a, const Real& b, const Real& c, int bits) {
    RootSet out;
    out.precision_bits = bits;
    Real disc = b * b - 4 * a * c;
    const Real tol = pow2(-bits / 2);
    Real scale = rmax(Real(1), rmax(rabs(b * b), rabs(4 * a * c)));
    if (rabs(disc) <= tol * tol * scale) {
        Root r;
        r.value = Complex(-b / (2 * a));
        r.is_real = true;
        r.multiplicity = 2;
        out.roots.push_back(r);
    } else if (disc > 0) {
        Real sq = sqrt(disc);
        Real q = (b >= 0) ? Real((-b - sq) / 2) : Real((-b + sq) / 2);
        Root r1, r2;
        r1.value = Complex(q / a);
        r2.value = Complex(q == 0 ? Real(0) : c / q);
        r1.is_real = r2.is_real = true;
        out.roots.push_back(r1);
        out.roots.push_back(r2);
    } else {
        Real re = -b / (2 * a), im = sqrt(-disc) / (2 * a);
        out.roots.push_back({{re, im}, 1, false, std::nullopt});
        out.roots.push_back({{re, -im}, 1, false, std::nullopt});
    }
    return out;
}

// Exact treatment of a rational-coefficient quadratic.
RootSet solve_quadratic_exact(const Rational& a, const Rational& b, const Rational& c,
                              int bits) {
    RootSet out;
    out.precision_bits = bits;
    Rational disc = b * b - 4 * a * c;
    if (disc == 0) {
        Root r = make_real_root(-b / (2 * a));
        r.multiplicity = 2;
        out.roots.push_back(r);
        return out;
    }
    Rational sq;
    if (disc > 0 && rational_sqrt(disc, sq)) {
        out.roots.push_back(make_real_root((-b + sq) / (2 * a)));
        out.roots.push_back(make_real_root((-b - sq) / (2 * a)));
        return out;
    }
    return solve_quadratic_real(Real(a), Real(b), Real(c), bits);
}

// Strips roots at 0 (exact) and splits off rational roots of higher-degree
// polynomials before any numeric work.
RootSet find_roots_exact_first(std::vector<Rational> coeffs, int bits);

RootSet solve_numeric(const std::vector<Rational>& coeffs, int bits) {
    std::vector<Complex> cc;
    cc.reserve(coeffs.size());
    for (const auto& c : coeffs) cc.push_back(Complex(Real(c)));
    return cluster_roots(aberth(cc, bits), bits);
}

void append(RootSet& dst, const RootSet& src) {
    for (const auto& r : src.roots) dst.roots.push_back(r);
}

RootSet find_roots_exact_first(std::vector<Rational> coeffs, int bits) {
    RootSet out;
    out.precision_bits = bits;

    // roots at the origin come off exactly
    int zero_mult = 0;
    while (coeffs.size() > 1 && coeffs.front() == 0) {
        ++zero_mult;
        coeffs.erase(coeffs.begin());
    }
    if (zero_mult > 0) {
        Root zero = make_real_root(Rational(0));
        zero.multiplicity = zero_mult;
        out.roots.push_back(zero);
    }

    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d == 0) return out;
    if (d == 1) {
        out.roots.push_back(make_real_root(-coeffs[0] / coeffs[1]));
        return out;
    }
    if (d == 2) {
        append(out, solve_quadratic_exact(coeffs[2], coeffs[1], coeffs[0], bits));
        return out;
    }

    // rational-root scan on the denominator-cleared polynomial
    Integer den_lcm = 1;
    for (const auto& c : coeffs) den_lcm = lcm(den_lcm, denominator(c));
    std::vector<Integer> ic;
    ic.reserve(coeffs.size());
    for (const auto& c : coeffs) ic.push_back(to_integer(c * Rational(den_lcm)));

    const Integer factor_cap("1000000000000");
    if (abs(ic.front()) < factor_cap && abs(ic.back()) < factor_cap) {
        for (const Integer& u : divisors_of(abs(ic.front()))) {
            for (const Integer& v : divisors_of(abs(ic.back()))) {
                if (gcd(u, v) != 1) continue;
                for (int sign : {1, -1}) {
                    Rational candidate = Rational(sign * u) / Rational(v);
                    Rational val = 0;
                    for (std::size_t k = coeffs.size(); k-- > 0;)
                        val = val * candidate + coeffs[k];
                    if (val == 0) {
                        out.roots.push_back(make_real_root(candidate));
                        auto quotient = deflate(coeffs, candidate);
                        append(out, find_roots_exact_first(std::move(quotient), bits));
                        return out;
                    }
                }
            }
        }
    }

    append(out, solve_numeric(coeffs, bits));
    return out;
}

// Merge duplicate exact roots produced by repeated deflation.
RootSet merge_exact_duplicates(RootSet rs) {
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        if (!rs.roots[i].exact) continue;
        for (std::size_t j = rs.roots.size(); j-- > i + 1;) {
            if (rs.roots[j].exact && *rs.roots[j].exact == *rs.roots[i].exact) {
                rs.roots[i].multiplicity += rs.roots[j].multiplicity;
                rs.roots.erase(rs.roots.begin() + static_cast<long>(j));
            }
        }
    }
    return rs;
}

} // namespace

// ------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<Rational> ascending_coefficients)
    : coeffs_(std::move(ascending_coefficients)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty() || (coeffs_.size() == 1 && coeffs_[0] == 0))
        throw Error("Polynomial: zero polynomial not supported");
}

Rational Polynomial::operator()(const Rational& z) const {
    Rational acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
}

Real Polynomial::operator()(const Real& z) const {
    Real acc(coeffs_.back());
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + Real(coeffs_[k]);
    return acc;
}

Complex Polynomial::operator()(const Complex& z) const {
    Complex acc{Real(coeffs_.back()), Real(0)};
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;)
        acc = acc * z + Complex(Real(coeffs_[k]), Real(0));
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) throw Error("derivative of a constant is zero");
    std::vector<Rational> out;
    out.reserve(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        out.push_back(coeffs_[k] * Rational(static_cast<long>(k)));
    return Polynomial(std::move(out));
}

Polynomial Polynomial::shifted(const Rational& w) const {
    std::vector<Rational> out = coeffs_;
    out[0] -= w;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::divided_by_z() const {
    if (constant_term() != 0)
        throw Error("divided_by_z: constant term is nonzero");
    std::vector<Rational> out(coeffs_.begin() + 1, coeffs_.end());
    return Polynomial(std::move(out));
}

bool Polynomial::is_decimation_polynomial() const {
    return degree() >= 2 && constant_term() == 0 && coeff(1) > 1;
}

std::string Polynomial::str(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeff(k);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (a != 1 || k == 0) os << a.str();
        if (k >= 1) {
            if (a != 1) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    if (first) os << "0";
    return os.str();
}

// ------------------------------------------------------------ root finding

RootSet find_roots(const Polynomial& p, int precision_bits) {
    PrecisionScope scope(precision_bits);
    if (p.degree() < 1)
        throw Error("find_roots: degree must be >= 1");
    RootSet rs = merge_exact_duplicates(
        find_roots_exact_first(p.coefficients(), precision_bits));
    if (rs.total_multiplicity() != p.degree())
        throw NonConvergence("find_roots: multiplicities sum to " +
                             std::to_string(rs.total_multiplicity()) + ", expected " +
                             std::to_string(p.degree()));
    return rs;
}

RootSet find_roots_numeric(const Polynomial& p, int precision_bits) {
    PrecisionScope scope(precision_bits);
    if (p.degree() < 1)
        throw Error("find_roots_numeric: degree must be >= 1");
    std::vector<Complex> cc;
    for (const auto& c : p.coefficients()) cc.push_back(Complex(Real(c)));
    return cluster_roots(aberth(cc, precision_bits), precision_bits);
}

RootSet preimages(const Polynomial& p, const Rational& w, int precision_bits) {
    if (p.degree() < 2)
        throw Error("preimages: polynomial degree must be >= 2");
    return find_roots(p.shifted(w), precision_bits);
}

RootSet preimages(const Polynomial& p, const NumericValue& w, int precision_bits) {
    if (w.is_exact()) return preimages(p, *w.exact, precision_bits);
    if (p.degree() < 2)
        throw Error("preimages: polynomial degree must be >= 2");
    PrecisionScope scope(precision_bits);
    const auto& coeffs = p.coefficients();
    if (p.degree() == 2) {
        return solve_quadratic_real(Real(coeffs[2]), Real(coeffs[1]),
                                    Real(coeffs[0]) - w.approx, precision_bits);
    }
    std::vector<Complex> cc;
    cc.reserve(coeffs.size());
    for (const auto& c : coeffs) cc.push_back(Complex(Real(c)));
    cc[0] = cc[0] - Complex(w.approx);
    return cluster_roots(aberth(cc, precision_bits), precision_bits);
}

Rational nonzero_root_product(const Polynomial& p) {
    if (p.constant_term() != 0)
        throw Error("nonzero_root_product: 0 is not a root");
    if (p.degree() < 1 || p.coeff(1) == 0)
        throw ZeroNotSimpleRoot("nonzero_root_product: 0 is not a simple root");
    Rational ratio = p.coeff(1) / p.leading();
    return (p.degree() % 2 == 0) ? -ratio : ratio;
}

} // namespace specdet
