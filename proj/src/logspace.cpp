#include "specdet/logspace.hpp"

#include <sstream>

namespace specdet {

std::map<Integer, int> factor_integer(Integer n) {
    if (n <= 0)
        throw Error("factor_integer: argument must be positive");
    std::map<Integer, int> out;
    if (n == 1) return out;
    const Integer trial_limit = 1000000;
    for (Integer p = 2; p <= trial_limit && p * p <= n; p == 2 ? p = 3 : p += 2) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) {
        // no factor <= 10^6 survived, so n is prime whenever n < 10^12
        if (n >= Integer("1000000000000"))
            throw Error("factor_integer: cofactor " + n.str() +
                        " too large to certify prime");
        ++out[n];
    }
    return out;
}

void LogCombination::add_term(const Integer& prime, const Rational& c) {
    if (c == 0) return;
    auto it = coeff_.find(prime);
    if (it == coeff_.end()) {
        coeff_.emplace(prime, c);
    } else {
        it->second += c;
        if (it->second == 0) coeff_.erase(it);
    }
}

LogCombination LogCombination::log_of(const Rational& r, const Rational& coeff) {
    if (r <= 0)
        throw Error("LogCombination::log_of: base must be positive, got " + r.str());
    LogCombination out;
    if (coeff == 0 || r == 1) return out;
    for (const auto& [p, e] : factor_integer(numerator(r)))
        out.add_term(p, coeff * e);
    for (const auto& [p, e] : factor_integer(denominator(r)))
        out.add_term(p, -coeff * e);
    return out;
}

LogCombination& LogCombination::operator+=(const LogCombination& o) {
    for (const auto& [p, c] : o.coeff_) add_term(p, c);
    return *this;
}

LogCombination& LogCombination::operator-=(const LogCombination& o) {
    for (const auto& [p, c] : o.coeff_) add_term(p, -c);
    return *this;
}

LogCombination LogCombination::operator+(const LogCombination& o) const {
    LogCombination out(*this);
    out += o;
    return out;
}

LogCombination LogCombination::operator-(const LogCombination& o) const {
    LogCombination out(*this);
    out -= o;
    return out;
}

LogCombination LogCombination::operator*(const Rational& s) const {
    LogCombination out;
    if (s == 0) return out;
    for (const auto& [p, c] : coeff_) out.coeff_.emplace(p, c * s);
    return out;
}

LogCombination LogCombination::operator-() const {
    return *this * Rational(-1);
}

Real LogCombination::value() const {
    Real out(0);
    for (const auto& [p, c] : coeff_)
        out += Real(c) * boost::multiprecision::log(Real(p));
    return out;
}

Rational LogCombination::coefficient(const Integer& prime) const {
    auto it = coeff_.find(prime);
    return it == coeff_.end() ? Rational(0) : it->second;
}

std::string LogCombination::str() const {
    if (coeff_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : coeff_) {
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (a != 1) os << a.str() << "*";
        os << "log(" << p.str() << ")";
    }
    return os.str();
}

} // namespace specdet
