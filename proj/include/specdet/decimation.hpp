#ifndef SPECDET_DECIMATION_HPP
#define SPECDET_DECIMATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specdet/poly.hpp"

namespace specdet {

enum class SeedKind { SetA, SetB1, SetB0 };
enum class DecimationCase { Generic, OneDimensional };

/**
 * Multiplicity law of one eigenvalue seed.
 *
 * SetA / SetB1: mult_n = low_level[n] for n < 2, mult_n = c * m^n for n >= 2.
 * SetB0:        mult_0 = 0,            mult_n = c * m^n + j for n >= 1,
 * with j in {0,1,2}. Every produced value must be a nonnegative integer.
 */
struct MultiplicityRule {
    SeedKind kind = SeedKind::SetB1;
    Rational c = Rational(0);
    std::map<int, Integer> low_level;  // keys 0 and 1
    int j = 0;                         // SetB0 only

    Integer mult(int n, const Integer& m) const;
    Integer override_at(int n) const;  // low_level[n], 0 when absent
};

/// Closed-form vertex count |V_n| = K * base^n + plus, with optional
/// small-level overrides.
struct VertexCountLaw {
    Rational K = Rational(0);
    Integer base = Integer(1);
    Rational plus = Rational(0);
    std::map<int, Integer> overrides;

    Integer operator()(int n) const;
};

/**
 * Full spectral data of one decimation family: the polynomial R (R(0) = 0,
 * R'(0) = lambda > 1), the replication factor m, the seed sets A / B0 / B1
 * with their multiplicity rules, and the case split (generic d != m versus
 * one-dimensional d = m, where the spectrum is generated by 0 and g0 alone).
 *
 * Eigenvalues are kept in the w < 0 sign convention throughout; the graph
 * Laplacian eigenvalue is -w.
 */
class DecimationSystem {
public:
    struct Data {
        Polynomial R = Polynomial({Rational(1)});  // placeholder until assigned
        Rational lambda;
        int m = 0;
        std::vector<std::pair<Rational, MultiplicityRule>> set_A;
        std::vector<std::pair<Rational, MultiplicityRule>> set_B1;
        std::vector<Rational> b0_values;  // multiset R^{-1}(0) \ {0}
        MultiplicityRule b0_rule;
        DecimationCase kind = DecimationCase::Generic;
        std::optional<Rational> g0;
        VertexCountLaw vertex_count;
    };

    explicit DecimationSystem(Data data);

    const Polynomial& R() const { return data_.R; }
    const Rational& lambda() const { return data_.lambda; }
    Rational a_d() const { return data_.R.leading(); }
    int degree() const { return data_.R.degree(); }
    const Integer& m() const { return m_; }
    int m_int() const { return data_.m; }
    DecimationCase case_kind() const { return data_.kind; }
    bool one_dimensional() const { return data_.kind == DecimationCase::OneDimensional; }
    const std::optional<Rational>& g0() const { return data_.g0; }
    const std::vector<std::pair<Rational, MultiplicityRule>>& set_A() const {
        return data_.set_A;
    }
    const std::vector<std::pair<Rational, MultiplicityRule>>& set_B1() const {
        return data_.set_B1;
    }
    const std::vector<Rational>& b0_values() const { return data_.b0_values; }
    const MultiplicityRule& b0_rule() const { return data_.b0_rule; }
    const VertexCountLaw& vertex_count_law() const { return data_.vertex_count; }
    Integer vertex_count(int n) const { return data_.vertex_count(n); }

    const Data& data() const { return data_; }

private:
    Data data_;
    Integer m_;
};

struct Violation {
    std::string clause;
    std::string detail;
};

/// Structural validation; returns (never throws) the violated clauses.
std::vector<Violation> validate(const DecimationSystem& system);

/// mult_n(w) for w a seed or any level-k preiterate of one (then
/// mult_n^k(w) = mult_{n-k}(seed), found by forward iteration of R).
Integer multiplicity(const DecimationSystem& system, const NumericValue& w, int n);
Integer multiplicity(const DecimationSystem& system, const Rational& w, int n);

struct SpectrumEntry {
    NumericValue eigenvalue;  // -w >= 0
    Integer multiplicity;
};

struct SpectrumLevel {
    int n = 0;
    std::vector<SpectrumEntry> entries;  // ascending by eigenvalue

    Integer total_multiplicity() const;
};

/// Exact multiset of eigenvalues of Delta_n.
SpectrumLevel spectrum(const DecimationSystem& system, int n, int precision_bits);

/**
 * Preimage multisets R^{-k}(seed) for k = 0..depth, values merged per level.
 * The shared branch bookkeeping behind spectrum() and the zeta partial sums:
 * multiplicities multiply along repeated roots of R(z) - v.
 */
std::vector<std::vector<std::pair<NumericValue, Integer>>> preimage_levels(
    const Polynomial& R, const NumericValue& seed, int depth, int precision_bits);

/**
 * Renormalized decimation limit -lambda^n z_n along the contracting branch
 * (smallest-magnitude preimage at every step); the branch converges to the
 * fixed point 0 and the renormalized values must be Cauchy with ratio about
 * 1/lambda, else BranchDivergence.
 */
Real fractal_eigenvalue(const DecimationSystem& system, const Rational& w,
                        int branch_depth, int precision_bits);

} // namespace specdet

#endif // SPECDET_DECIMATION_HPP
