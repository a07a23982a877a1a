#include "doctest.h"

#include <random>

#include "specdet/errors.hpp"
#include "specdet/poly.hpp"

using namespace specdet;

namespace {

Polynomial make_poly(std::initializer_list<const char*> ascending) {
    std::vector<Rational> c;
    for (const char* s : ascending) c.emplace_back(s);
    return Polynomial(std::move(c));
}

// circle / SG3 / basilica(1/2) decimation polynomials
const Polynomial circle_R = make_poly({"0", "4", "2"});     // 2z^2 + 4z
const Polynomial sg3_R = make_poly({"0", "5", "4"});        // 4z^2 + 5z
const Polynomial cubic_R = make_poly({"0", "9", "12", "4"});

bool contains_root(const RootSet& rs, const Rational& r, int mult) {
    for (const auto& root : rs.roots)
        if (root.exact && *root.exact == r && root.multiplicity == mult) return true;
    return false;
}

} // namespace

TEST_CASE("polynomial evaluation") {
    CHECK(circle_R(Rational(-1)) == Rational(-2));
    CHECK(circle_R(Rational(0)) == Rational(0));
    CHECK(sg3_R(Rational("-5/4")) == Rational(0));
    CHECK(make_poly({"7", "1"})(Rational(0)) == Rational(7));

    PrecisionScope scope(128);
    Real x = circle_R(Real(-1));
    CHECK(rabs(x + 2) < pow2(-100));
}

TEST_CASE("polynomial helpers") {
    CHECK(circle_R.degree() == 2);
    CHECK(circle_R.leading() == 2);
    CHECK(circle_R.is_decimation_polynomial());
    CHECK(circle_R.derivative()(Rational(0)) == Rational(4));
    CHECK(circle_R.divided_by_z().degree() == 1);
    CHECK(circle_R.str() == "2*z^2 + 4*z");
    CHECK_FALSE(make_poly({"1", "1"}).is_decimation_polynomial());
}

TEST_CASE("preimages with exact rational fast path") {
    auto rs0 = preimages(circle_R, Rational(0), 128);
    CHECK(rs0.total_multiplicity() == 2);
    CHECK(contains_root(rs0, Rational(0), 1));
    CHECK(contains_root(rs0, Rational(-2), 1));

    // 2z^2 + 4z + 2 = 2(z+1)^2
    auto rs2 = preimages(circle_R, Rational(-2), 128);
    REQUIRE(rs2.roots.size() == 1);
    CHECK(contains_root(rs2, Rational(-1), 2));

    auto rs_sg = preimages(sg3_R, Rational(0), 128);
    CHECK(contains_root(rs_sg, Rational("-5/4"), 1));
    CHECK(contains_root(rs_sg, Rational(0), 1));
}

TEST_CASE("preimages with irrational roots stay real and refined") {
    PrecisionScope scope(256);
    // 4z^2 + 5z + 5/4; roots (-5 +- sqrt(5)) / 8
    auto rs = preimages(sg3_R, Rational("-5/4"), 256);
    REQUIRE(rs.roots.size() == 2);
    Real sqrt5 = boost::multiprecision::sqrt(Real(5));
    for (const auto& r : rs.roots) {
        CHECK(r.is_real);
        Real lo = (-5 - sqrt5) / 8, hi = (-5 + sqrt5) / 8;
        bool matches_lo = rabs(r.value.re - lo) < pow2(-200);
        bool matches_hi = rabs(r.value.re - hi) < pow2(-200);
        CHECK((matches_lo || matches_hi));
    }
}

TEST_CASE("preimages of a numeric (non-rational) level value") {
    PrecisionScope scope(256);
    NumericValue w(Real(boost::multiprecision::sqrt(Real(2)) - 3));  // in [-3, 0]
    auto rs = preimages(circle_R, w, 256);
    CHECK(rs.total_multiplicity() == 2);
    for (const auto& r : rs.roots) {
        Real img = circle_R(r.value.re);
        CHECK(rabs(img - w.approx) < pow2(-220));
    }
}

TEST_CASE("preimage multiset cardinality equals degree (randomized)") {
    PrecisionScope scope(192);
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> dist(-3.0, 0.0);
    for (const Polynomial* p : {&circle_R, &sg3_R, &cubic_R}) {
        for (int trial = 0; trial < 25; ++trial) {
            Real z0(dist(rng));
            NumericValue w(p->operator()(z0));
            auto rs = preimages(*p, w, 192);
            CHECK(rs.total_multiplicity() == p->degree());
            // p(z0) = w, so z0 must appear among the preimages
            bool found = false;
            for (const auto& r : rs.roots)
                if (r.is_real && rabs(r.value.re - z0) < pow2(-90)) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("nonzero_root_product from Vieta") {
    CHECK(nonzero_root_product(circle_R) == Rational(-2));
    CHECK(nonzero_root_product(sg3_R) == Rational("-5/4"));
    CHECK(nonzero_root_product(make_poly({"0", "4", "0", "1"})) == Rational(4));
    CHECK_THROWS_AS(nonzero_root_product(make_poly({"0", "0", "1"})), ZeroNotSimpleRoot);
    CHECK_THROWS_AS(nonzero_root_product(make_poly({"1", "1"})), Error);
}

TEST_CASE("Vieta product matches numerically found roots") {
    PrecisionScope scope(256);
    for (const Polynomial* p : {&circle_R, &sg3_R, &cubic_R}) {
        auto rs = find_roots_numeric(*p, 256);
        Real prod(1);
        int nonzero = 0;
        for (const auto& r : rs.roots) {
            for (int k = 0; k < r.multiplicity; ++k) {
                if (r.value.abs() < pow2(-128)) continue;
                prod *= r.value.re;
                ++nonzero;
            }
        }
        CHECK(nonzero == p->degree() - 1);
        CHECK(rabs(prod - Real(nonzero_root_product(*p))) < Real("1e-30"));
    }
}

TEST_CASE("aberth handles higher degree and complex pairs") {
    // (z-1)(z-2)(z+3)(z^2+z+1) = z^5+z^4-6z^3-z^2-z+6
    auto p = make_poly({"6", "-1", "-1", "-6", "1", "1"});
    auto rs = find_roots_numeric(p, 256);
    CHECK(rs.total_multiplicity() == 5);
    int real_count = 0, complex_count = 0;
    for (const auto& r : rs.roots) {
        if (r.is_real) real_count += r.multiplicity;
        else complex_count += r.multiplicity;
        Complex residual = p(r.value);
        CHECK(residual.abs() < Real("1e-60"));
    }
    CHECK(real_count == 3);
    CHECK(complex_count == 2);

    // exact path also finds them by rational deflation
    auto exact = find_roots(p, 256);
    CHECK(contains_root(exact, Rational(1), 1));
    CHECK(contains_root(exact, Rational(2), 1));
    CHECK(contains_root(exact, Rational(-3), 1));
}

TEST_CASE("numeric double roots cluster with multiplicity") {
    PrecisionScope scope(256);
    // (z^2-2)^2 = z^4 - 4z^2 + 4
    auto p = make_poly({"4", "0", "-4", "0", "1"});
    auto rs = find_roots_numeric(p, 256);
    CHECK(rs.total_multiplicity() == 4);
    REQUIRE(rs.roots.size() == 2);
    for (const auto& r : rs.roots) {
        CHECK(r.multiplicity == 2);
        CHECK(r.is_real);
        // attainable accuracy for a double root is eps^(1/2) ~ 2^-126
        CHECK(rabs(rabs(r.value.re) - boost::multiprecision::sqrt(Real(2))) < Real("1e-35"));
    }
}
