#include "doctest.h"

#include "specdet/graphs.hpp"

#include <sstream>

using namespace specdet;

namespace {

FractalGraph triangle() {
    FractalGraph g;
    g.name = "K3";
    g.vertex_count = 3;
    g.edges = {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 2, Rational(1)}};
    g.boundary = {0, 1, 2};
    return g;
}

Rational exp_as_rational(const OracleLogDet& d) { return d.exact; }

} // namespace

TEST_CASE("bareiss determinant") {
    CHECK(bareiss_determinant({{Integer(1), Integer(2)}, {Integer(3), Integer(4)}}) ==
          Integer(-2));
    CHECK(bareiss_determinant({{Integer(2), Integer(4)}, {Integer(1), Integer(2)}}) ==
          Integer(0));
    CHECK(bareiss_determinant({{Integer(0), Integer(1), Integer(2)},
                               {Integer(1), Integer(0), Integer(3)},
                               {Integer(4), Integer(5), Integer(0)}}) == Integer(22));
}

TEST_CASE("charpoly of small matrices") {
    auto chi = charpoly({{Rational(2), Rational(1)}, {Rational(1), Rational(2)}});
    REQUIRE(chi.size() == 3);
    CHECK(chi[0] == 3);
    CHECK(chi[1] == -4);
    CHECK(chi[2] == 1);

    auto chi2 = charpoly({{Rational("1/2"), Rational(0)}, {Rational(0), Rational("1/3")}});
    CHECK(chi2[0] == Rational("1/6"));
    CHECK(chi2[1] == Rational("-5/6"));
    CHECK(chi2[2] == 1);

    // 60x60 circulant-ish case exercises the CRT path
    FractalGraph big = build_cycle_double_interval(5);
    auto chi3 = charpoly(laplacian_matrix(big, LaplacianKind::Combinatorial));
    CHECK(chi3[0] == 0);
    // product of nonzero eigenvalues of a cycle's combinatorial Laplacian = N^2
    CHECK(abs(chi3[1]) == Rational(64 * 64));
}

TEST_CASE("cycle builder") {
    auto g0 = build_cycle_double_interval(0);
    CHECK(g0.vertex_count == 2);
    CHECK(g0.edges.size() == 2);

    auto g1 = build_cycle_double_interval(1);
    CHECK(g1.vertex_count == 4);
    CHECK(g1.edges.size() == 4);

    auto g3 = build_cycle_double_interval(3);
    CHECK(g3.vertex_count == 16);
    CHECK(g3.is_connected());
}

TEST_CASE("double SG builder") {
    auto g0 = build_double_sg(3, 0);
    CHECK(g0.vertex_count == 3);
    CHECK(g0.edges.size() == 6);
    for (const auto& d : g0.weighted_degrees()) CHECK(d == 4);

    auto g1 = build_double_sg(3, 1);
    CHECK(g1.vertex_count == 9);
    CHECK(g1.is_connected());
    for (const auto& d : g1.weighted_degrees()) CHECK(d == 4);

    CHECK(build_double_sg(4, 1).vertex_count == 16);
    CHECK(build_double_sg(3, 2).vertex_count == 27);
    CHECK(build_double_sg(5, 2).vertex_count == 125);

    // 2(N-1)-regularity on a grid
    for (int N : {3, 4, 5}) {
        auto g = build_double_sg(N, 2);
        for (const auto& d : g.weighted_degrees()) CHECK(d == 2 * (N - 1));
    }

    CHECK_THROWS_AS(build_double_sg(2, 1), ParameterOutOfRange);
}

TEST_CASE("laplacian matrices") {
    auto g0 = build_cycle_double_interval(0);
    auto prob = laplacian_matrix(g0, LaplacianKind::Probabilistic);
    CHECK(prob[0][0] == 1);
    CHECK(prob[0][1] == -1);
    CHECK(prob[1][0] == -1);
    CHECK(prob[1][1] == 1);

    auto comb = laplacian_matrix(triangle(), LaplacianKind::Combinatorial);
    CHECK(comb[0][0] == 2);
    CHECK(comb[0][1] == -1);
    // row sums vanish
    for (const auto& row : comb) {
        Rational s(0);
        for (const auto& x : row) s += x;
        CHECK(s == 0);
    }
}

TEST_CASE("oracle logdet on known graphs") {
    // 4-cycle probabilistic: spectrum {0,1,1,2}, product 2
    auto d4 = oracle_logdet(build_cycle_double_interval(1), LaplacianKind::Probabilistic, 128);
    CHECK(exp_as_rational(d4) == 2);

    // 16-cycle probabilistic: product N^2 / 2^(N-1) = 256/32768
    auto d16 = oracle_logdet(build_cycle_double_interval(3), LaplacianKind::Probabilistic, 128);
    CHECK(exp_as_rational(d16) == Rational(256, 32768));

    // K3 combinatorial: eigenvalues {0,3,3}
    auto dk3 = oracle_logdet(triangle(), LaplacianKind::Combinatorial, 128);
    CHECK(exp_as_rational(dk3) == 9);

    PrecisionScope scope(128);
    CHECK(rabs(d4.log_value - boost::multiprecision::log(Real(2))) < pow2(-110));

    FractalGraph disconnected;
    disconnected.vertex_count = 4;
    disconnected.edges = {{0, 1, Rational(1)}, {2, 3, Rational(1)}};
    CHECK_THROWS_AS(oracle_logdet(disconnected, LaplacianKind::Combinatorial, 128),
                    SingularBeyondKernel);
}

TEST_CASE("spanning tree counts") {
    CHECK(spanning_tree_count(triangle()) == 3);
    CHECK(spanning_tree_count(build_cycle_double_interval(3)) == 16);
    CHECK(spanning_tree_count(build_cycle_double_interval(0)) == 2);
    CHECK(spanning_tree_count(build_double_sg(3, 1)) == 10800);
}

TEST_CASE("matrix-tree and degree-bridge identities") {
    for (int n : {0, 1, 2, 3}) {
        auto g = build_cycle_double_interval(n);
        auto comb = oracle_logdet(g, LaplacianKind::Combinatorial, 128);
        auto prob = oracle_logdet(g, LaplacianKind::Probabilistic, 128);
        Integer tau = spanning_tree_count(g);
        CHECK(comb.exact == Rational(g.vertex_count) * Rational(tau));

        Rational sum_deg(0), prod_deg(1);
        for (const auto& d : g.weighted_degrees()) {
            sum_deg += d;
            prod_deg *= d;
        }
        CHECK(prob.exact == Rational(tau) * sum_deg / prod_deg);
    }
    auto g = build_double_sg(3, 1);
    auto comb = oracle_logdet(g, LaplacianKind::Combinatorial, 128);
    CHECK(comb.exact == Rational(9) * Rational(spanning_tree_count(g)));
}

TEST_CASE("oracle spectrum") {
    PrecisionScope scope(128);
    auto eig = oracle_spectrum(build_cycle_double_interval(1), LaplacianKind::Probabilistic, 128);
    REQUIRE(eig.size() == 4);
    CHECK(rabs(eig[0] - 0) < Real("1e-12"));
    CHECK(rabs(eig[1] - 1) < Real("1e-12"));
    CHECK(rabs(eig[2] - 1) < Real("1e-12"));
    CHECK(rabs(eig[3] - 2) < Real("1e-12"));

    auto eig0 = oracle_spectrum(build_cycle_double_interval(0), LaplacianKind::Probabilistic, 128);
    CHECK(rabs(eig0[0] - 0) < Real("1e-12"));
    CHECK(rabs(eig0[1] - 2) < Real("1e-12"));

    auto eigk3 = oracle_spectrum(triangle(), LaplacianKind::Combinatorial, 128);
    CHECK(rabs(eigk3[2] - 3) < Real("1e-12"));
}

TEST_CASE("edge list export") {
    std::ostringstream os;
    export_edge_list(build_cycle_double_interval(0), LaplacianKind::Probabilistic, os);
    const std::string text = os.str();
    CHECK(text.find("vertices 2") != std::string::npos);
    CHECK(text.find("kind probabilistic") != std::string::npos);
    CHECK(text.find("0 1 1") != std::string::npos);
}
