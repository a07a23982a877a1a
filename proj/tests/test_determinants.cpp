#include "doctest.h"

#include <sstream>

#include "specdet/determinants.hpp"

using namespace specdet;

namespace {

std::vector<Rational> b_seeds(const DecimationSystem& system) {
    std::vector<Rational> seeds;
    for (const auto& [w, rule] : system.set_B1()) seeds.push_back(w);
    for (const auto& w : system.b0_values())
        if (std::find(seeds.begin(), seeds.end(), w) == seeds.end()) seeds.push_back(w);
    return seeds;
}

std::vector<FamilyDescriptor> catalog_grid() {
    std::vector<FamilyDescriptor> grid;
    grid.push_back(circle());
    for (int N : {3, 4, 5, 6}) grid.push_back(double_sg(N));
    for (const Rational& p : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
        grid.push_back(basilica(p));
        grid.push_back(double_pq(p));
    }
    return grid;
}

} // namespace

TEST_CASE("geometric sums against the spec examples") {
    auto bas = basilica(Rational(1, 2)).system;
    // w = -2p = -1, n = 2: 0 + 2 + (2/3)(27 - 9)/2 = 8
    auto s = geometric_sums(bas, Rational(-1), 2);
    CHECK(s.sum_mult == 8);

    auto sg = double_sg(3).system;
    // B0 seed -5/4, n = 1: (1/3)(9 - 3)/2 + 1 = 2
    auto b0 = geometric_sums(sg, Rational(-5, 4), 1);
    CHECK(b0.sum_mult == 2);

    // all-zero rule sums to zero
    auto data = double_sg(3).system.data();
    MultiplicityRule zero_rule;
    zero_rule.kind = SeedKind::SetB1;
    data.set_B1.emplace_back(Rational(-7, 8), zero_rule);
    DecimationSystem extended(std::move(data));
    CHECK(geometric_sums(extended, Rational(-7, 8), 4).sum_mult == 0);
    CHECK(geometric_sums(extended, Rational(-7, 8), 4).sum_mult_weighted == 0);

    CHECK_THROWS_AS(geometric_sums(sg, Rational(-9, 7), 3), UnknownEigenvalue);
    CHECK_THROWS_AS(geometric_sums(double_pq(Rational(1, 2)).system, Rational(-3, 2), 2),
                    DegenerateCase);
}

TEST_CASE("Lemma-3 closed forms equal direct summation (exact, n <= 8)") {
    for (const auto& family : catalog_grid()) {
        if (family.system.one_dimensional()) continue;
        for (const Rational& w : b_seeds(family.system)) {
            for (int n = 1; n <= 8; ++n) {
                auto closed = geometric_sums(family.system, w, n);
                auto direct = geometric_sums_direct(family.system, w, n);
                CHECK(closed.sum_mult == direct.sum_mult);
                CHECK(closed.sum_mult_weighted == direct.sum_mult_weighted);
            }
        }
    }
}

TEST_CASE("discrete log-determinants of the circle") {
    auto sys = circle().system;
    CHECK(logdet_discrete_onedim(sys, 1) == LogCombination::log_of(Rational(2)));
    // 8-cycle: product 64/2^7 = 1/2
    CHECK(logdet_discrete_onedim(sys, 2) == LogCombination::log_of(Rational(1, 2)));
    // matches the cycle closed form N^2/2^(N-1) for all tested levels
    for (int n = 0; n <= 6; ++n) {
        Integer N = ipow(Integer(2), n + 1);
        Rational cycle_product = Rational(N * N) / Rational(ipow(Integer(2), int(N.convert_to<long>()) - 1));
        CHECK(logdet_discrete_closed(sys, n) == LogCombination::log_of(cycle_product));
    }
}

TEST_CASE("discrete log-determinant of double SG3 equals the graph oracle") {
    auto sys = double_sg(3).system;
    // hand value at n = 1: (3/2)^3 (5/4)^2 (1/2) (3/4)^2 = 6075/4096
    CHECK(logdet_discrete_closed(sys, 1) == LogCombination::log_of(Rational(6075, 4096)));
    for (int n = 0; n <= 2; ++n) {
        auto oracle = oracle_logdet(build_double_sg(3, n), LaplacianKind::Probabilistic, 256);
        CHECK(logdet_discrete_closed(sys, n) == LogCombination::log_of(oracle.exact));
    }
}

TEST_CASE("pq determinants at p = 1/2") {
    auto sys = double_pq(Rational(1, 2)).system;
    // log(pq) 3 + log 9 + log 8 = -3 log 2 + 2 log 3 = log(9/8)
    CHECK(logdet_discrete_onedim(sys, 1) == LogCombination::log_of(Rational(9, 8)));
    CHECK_THROWS_AS(logdet_discrete_onedim(double_sg(3).system, 1), DegenerateCase);
}

TEST_CASE("complexity constants match the published forms") {
    for (const auto& family : catalog_grid()) {
        CAPTURE(family.name);
        CHECK(complexity_constant(family.system) == *family.closed_forms.c_constant);
    }
    // basilica: c = log(2 p^2)
    for (const Rational& p : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
        CHECK(complexity_constant(basilica(p).system) ==
              LogCombination::log_of(2 * p * p));
    }
    // circle: coefficient of 2^n is -2 log 2
    CHECK(complexity_constant(circle().system) ==
          LogCombination::log_of(Rational(2), Rational(-2)));
}

TEST_CASE("regularized determinants match the published forms") {
    for (const auto& family : catalog_grid()) {
        CAPTURE(family.name);
        CHECK(regularized_logdet(family.system) ==
              *family.closed_forms.log_det_regularized);
    }
    for (const Rational& p : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
        Rational q = 1 - p;
        CHECK(regularized_logdet(basilica(p).system) ==
              LogCombination::log_of(q / (p * p)));
    }
    CHECK(regularized_logdet(circle().system) == LogCombination::log_of(Rational(8)));
}

TEST_CASE("pole cancellation residual vanishes exactly; mutations break it") {
    for (int N : {3, 4, 5, 6})
        CHECK(pole_cancellation_residual(double_sg(N).system) == 0);
    for (const Rational& p :
         {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3)})
        CHECK(pole_cancellation_residual(basilica(p).system) == 0);

    // perturbing j to 2 shifts the residual by exactly 1
    auto data = double_sg(3).system.data();
    data.b0_rule.j = 2;
    CHECK(pole_cancellation_residual(DecimationSystem(std::move(data))) == 1);

    CHECK_THROWS_AS(pole_cancellation_residual(circle().system), DegenerateCase);
}

TEST_CASE("theorem identity holds exactly for n >= 2 on the whole grid") {
    for (const auto& family : catalog_grid()) {
        CAPTURE(family.name);
        const auto& sys = family.system;
        LogCombination c = complexity_constant(sys);
        LogCombination log_lambda = LogCombination::log_of(sys.lambda());
        LogCombination regdet = regularized_logdet(sys);
        int j = sys.one_dimensional() ? 1 : sys.b0_rule().j;
        for (int n = 2; n <= 6; ++n) {
            LogCombination closed = logdet_discrete_closed(sys, n);
            LogCombination prediction = c * pow_rational(Rational(sys.m()), n);
            prediction += log_lambda * Rational(n * j);
            prediction += regdet;
            CHECK(closed == prediction);
        }
    }
}

TEST_CASE("verify_identity: circle with oracle") {
    auto report = verify_identity(circle(), 1, 6, true, LaplacianKind::Probabilistic, 256);
    CHECK(report.passed());
    CHECK(report.rows.size() == 6);
    for (const auto& row : report.rows) {
        CHECK(row.exact_closed_eq_prediction);
        REQUIRE(row.exact_oracle_eq_closed.has_value());
        CHECK(*row.exact_oracle_eq_closed);
        CHECK(*row.residual_oracle_vs_closed < Real("1e-30"));
    }
}

TEST_CASE("verify_identity: double SG3 with oracle at 256 bits") {
    auto report = verify_identity(double_sg(3), 1, 2, true, LaplacianKind::Probabilistic, 256);
    CHECK(report.passed());
    CHECK(report.pole_residual.has_value());
    CHECK(*report.pole_residual == 0);
    for (const auto& row : report.rows) {
        CHECK(*row.residual_oracle_vs_closed < Real("1e-20"));
        CHECK(*row.exact_oracle_eq_closed);
    }
}

TEST_CASE("verify_identity: basilica is analytic-only") {
    auto report =
        verify_identity(basilica(Rational(1, 3)), 2, 6, false, LaplacianKind::Probabilistic, 256);
    CHECK(report.passed());
    for (const auto& row : report.rows) {
        CHECK(row.exact_closed_eq_prediction);
        CHECK_FALSE(row.logdet_oracle.has_value());
    }
    CHECK_THROWS_AS(
        verify_identity(basilica(Rational(1, 3)), 1, 3, true, LaplacianKind::Probabilistic, 128),
        OracleInfeasible);
}

TEST_CASE("verify_identity: combinatorial variant and the complexity constant") {
    auto report = verify_identity(double_sg(3), 1, 2, true, LaplacianKind::Combinatorial, 256);
    CHECK(report.passed());
    REQUIRE(report.c_asymptotic.has_value());
    // c/N + log(2N-2) at N = 3
    LogCombination expected = complexity_constant(double_sg(3).system) * Rational(1, 3);
    expected += LogCombination::log_of(Rational(4));
    CHECK(*report.c_asymptotic == expected);

    // log tau / |V_n| approaches the constant from the exact tau values
    PrecisionScope scope(256);
    REQUIRE(report.rows.back().log_tau_per_vertex.has_value());
    Real diff1 = rabs(*report.rows.front().log_tau_per_vertex - expected.value());
    Real diff2 = rabs(*report.rows.back().log_tau_per_vertex - expected.value());
    CHECK(diff2 < diff1);

    // combinatorial needs a regular family
    CHECK_THROWS_AS(
        verify_identity(basilica(Rational(1, 2)), 1, 2, false, LaplacianKind::Combinatorial, 128),
        InvalidSystem);
}

TEST_CASE("verify_identity rejects oversized oracle graphs") {
    CHECK_THROWS_AS(
        verify_identity(circle(), 1, 10, true, LaplacianKind::Probabilistic, 128, 100),
        OracleInfeasible);
}

TEST_CASE("report serialization is deterministic") {
    auto report = verify_identity(circle(), 1, 3, true, LaplacianKind::Probabilistic, 128);
    std::ostringstream csv1, csv2, json1, json2;
    report_to_csv(report, csv1);
    report_to_csv(report, csv2);
    report_to_json(report, json1);
    report_to_json(report, json2);
    CHECK(csv1.str() == csv2.str());
    CHECK(json1.str() == json2.str());
    CHECK(csv1.str().find("n,logdet_closed") == 0);
    CHECK(json1.str().find("\"schema_version\"") != std::string::npos);
    CHECK(json1.str().find("\"passed\": true") != std::string::npos);

    // one row per level
    int newlines = 0;
    for (char ch : csv1.str())
        if (ch == '\n') ++newlines;
    CHECK(newlines == 4);  // header + 3 levels
}
