#ifndef SPECDET_DETERMINANTS_HPP
#define SPECDET_DETERMINANTS_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "specdet/catalog.hpp"
#include "specdet/decimation.hpp"
#include "specdet/graphs.hpp"
#include "specdet/logspace.hpp"

namespace specdet {

/// Oracle infeasible (graph too large for the exact path).
struct OracleInfeasible : Error {
    explicit OracleInfeasible(const std::string& msg) : Error(msg) {}
};

/**
 * The two geometric sums of one seed at level n:
 *   sum_mult          = sum_{k=0..n} mult_n^k(w)
 *   sum_mult_weighted = sum_{k=0..n} mult_n^k(w) (d^k-1)/(d-1)   for w in B1
 *                       sum_{k=0..n} mult_n^k(w) d^k             for w in B0
 * in the closed forms, exact. Valid for n >= 1 (at n = 0 the B1 closed form
 * provably differs from the direct sum).
 */
struct GeometricSums {
    Rational sum_mult;
    Rational sum_mult_weighted;
    int n = 0;
    Rational w;
};

GeometricSums geometric_sums(const DecimationSystem& system, const Rational& w, int n);

/// Same sums by direct summation of the rule table; the independent oracle
/// for the closed forms.
GeometricSums geometric_sums_direct(const DecimationSystem& system, const Rational& w,
                                    int n);

/// log det Delta_n through the decomposed discrete-determinant formula
/// (A-term + B1 sums + the Vieta-collapsed B0 term), exact in log space.
LogCombination logdet_discrete_closed(const DecimationSystem& system, int n);

/// d = m case: log det Delta_n = -(2 log a_d/(d-1)) d^n + n log lambda
///             + log det Delta.
LogCombination logdet_discrete_onedim(const DecimationSystem& system, int n);

/// Coefficient c of m^n in the discrete-determinant asymptotics.
LogCombination complexity_constant(const DecimationSystem& system);

/// log of the zeta-regularized determinant of the fractal Laplacian.
LogCombination regularized_logdet(const DecimationSystem& system);

/// Exact value of the pole-cancellation sum; 0 for every correct generic
/// system description.
Rational pole_cancellation_residual(const DecimationSystem& system);

struct LevelRow {
    int n = 0;
    Real logdet_closed;
    LogCombination logdet_closed_exact;
    Real prediction;
    LogCombination prediction_exact;
    Real residual_closed_vs_prediction;
    bool exact_closed_eq_prediction = false;

    std::optional<Real> logdet_oracle;
    std::optional<Rational> oracle_exact;  // the determinant itself
    std::optional<Real> residual_oracle_vs_closed;
    std::optional<bool> exact_oracle_eq_closed;

    std::optional<Integer> spanning_trees;      // combinatorial + oracle runs
    std::optional<Real> log_tau_per_vertex;     // log tau(G_n) / |V_n|
};

struct DeterminantReport {
    std::string family;
    std::map<std::string, Rational> parameters;
    LaplacianKind kind = LaplacianKind::Probabilistic;
    int precision_bits = 0;
    bool with_oracle = false;

    LogCombination c_constant;
    int j = 0;
    LogCombination log_lambda;
    LogCombination logdet_regularized;
    std::optional<Rational> pole_residual;          // generic systems
    std::optional<LogCombination> c_asymptotic;     // combinatorial variant
    std::vector<std::string> notes;
    std::vector<LevelRow> rows;

    Real tolerance;          // 10^-(precision/4), the n >= 2 gate
    bool passed() const;     // all rows with n >= 2 within tolerance
};

/**
 * Runs the theorem identity log det Delta_n = c m^n + n j log lambda
 * + log det Delta across a level range, optionally against the exact graph
 * oracle, and assembles the full report. The oracle path refuses graphs
 * beyond `oracle_vertex_cap` vertices.
 */
DeterminantReport verify_identity(const FamilyDescriptor& family, int n_min, int n_max,
                                  bool with_oracle, LaplacianKind kind, int precision_bits,
                                  std::size_t oracle_vertex_cap = 30000);

void report_to_csv(const DeterminantReport& report, std::ostream& os);
void report_to_json(const DeterminantReport& report, std::ostream& os);

} // namespace specdet

#endif // SPECDET_DETERMINANTS_HPP
