#include "specdet/determinants.hpp"

#include <ostream>
#include <sstream>

#include "json.hpp"

namespace specdet {

namespace {

const MultiplicityRule* find_b1_rule(const DecimationSystem& system, const Rational& w) {
    for (const auto& [seed, rule] : system.set_B1())
        if (seed == w) return &rule;
    return nullptr;
}

bool in_b0(const DecimationSystem& system, const Rational& w) {
    for (const auto& b : system.b0_values())
        if (b == w) return true;
    return false;
}

void require_generic(const DecimationSystem& system, const char* what) {
    if (system.degree() == system.m_int())
        throw DegenerateCase(std::string(what) +
                             ": d = m; use the one-dimensional formulas");
}

} // namespace

GeometricSums geometric_sums(const DecimationSystem& system, const Rational& w, int n) {
    if (n < 1) throw Error("geometric_sums: closed forms require n >= 1");
    const Rational d(system.degree());
    const Rational m(system.m());

    if (const MultiplicityRule* rule = find_b1_rule(system, w)) {
        require_generic(system, "geometric_sums");
        const Rational c0(rule->override_at(0));
        const Rational c1(rule->override_at(1));
        const Rational& c = rule->c;
        const Rational mn1 = pow_rational(m, n + 1);
        const Rational dn = pow_rational(d, n);

        GeometricSums out;
        out.n = n;
        out.w = w;
        out.sum_mult = c0 + c1 + c * (mn1 - m * m) / (m - 1);
        out.sum_mult_weighted =
            c / (d - 1) * ((m * m * dn - d * mn1) / (d * (d - m)) + (m * m - mn1) / (m - 1)) +
            c1 * (dn / d - 1) / (d - 1) + c0 * (dn - 1) / (d - 1);
        return out;
    }
    if (in_b0(system, w)) {
        require_generic(system, "geometric_sums");
        const Rational& c0 = system.b0_rule().c;
        const Rational j(system.b0_rule().j);
        const Rational mn1 = pow_rational(m, n + 1);
        const Rational dn = pow_rational(d, n);
        const Rational mn = pow_rational(m, n);

        GeometricSums out;
        out.n = n;
        out.w = w;
        out.sum_mult = c0 * (mn1 - m) / (m - 1) + j * n;
        out.sum_mult_weighted = c0 * m * (dn - mn) / (d - m) + j * (dn - 1) / (d - 1);
        return out;
    }
    throw UnknownEigenvalue("geometric_sums: " + w.str() + " is not a B0/B1 seed");
}

GeometricSums geometric_sums_direct(const DecimationSystem& system, const Rational& w,
                                    int n) {
    if (n < 0) throw Error("geometric_sums_direct: n must be >= 0");
    const MultiplicityRule* rule = find_b1_rule(system, w);
    bool b0 = false;
    if (!rule) {
        if (!in_b0(system, w))
            throw UnknownEigenvalue("geometric_sums_direct: " + w.str() +
                                    " is not a B0/B1 seed");
        rule = &system.b0_rule();
        b0 = true;
    }
    const Rational d(system.degree());
    GeometricSums out;
    out.n = n;
    out.w = w;
    out.sum_mult = 0;
    out.sum_mult_weighted = 0;
    for (int k = 0; k <= n; ++k) {
        const Rational mult(rule->mult(n - k, system.m()));
        out.sum_mult += mult;
        const Rational dk = pow_rational(d, k);
        out.sum_mult_weighted += b0 ? Rational(mult * dk) : Rational(mult * (dk - 1) / (d - 1));
    }
    return out;
}

LogCombination logdet_discrete_onedim(const DecimationSystem& system, int n) {
    if (!system.one_dimensional())
        throw DegenerateCase("logdet_discrete_onedim: system is generic (d != m)");
    const Rational d(system.degree());
    const Rational a = abs(system.a_d());
    LogCombination out = LogCombination::log_of(a, Rational(-2) / (d - 1) * pow_rational(d, n));
    out += LogCombination::log_of(system.lambda(), Rational(n));
    out += regularized_logdet(system);
    return out;
}

LogCombination logdet_discrete_closed(const DecimationSystem& system, int n) {
    if (n < 0) throw Error("logdet_discrete_closed: n must be >= 0");
    if (system.one_dimensional()) return logdet_discrete_onedim(system, n);
    require_generic(system, "logdet_discrete_closed");

    const Rational a = abs(system.a_d());
    LogCombination out;

    for (const auto& [w, rule] : system.set_A()) {
        Integer mult = rule.mult(n, system.m());
        if (mult != 0) out += LogCombination::log_of(-w, Rational(mult));
    }
    for (const auto& [w, rule] : system.set_B1()) {
        GeometricSums sums =
            n >= 1 ? geometric_sums(system, w, n) : geometric_sums_direct(system, w, n);
        out += LogCombination::log_of(-w, sums.sum_mult);
        out -= LogCombination::log_of(a, sums.sum_mult_weighted);
    }
    if (!system.b0_values().empty()) {
        // Vieta collapse of the B0 product: lambda^{sum} a_d^{-sum d^k}
        const Rational& w0 = system.b0_values().front();
        GeometricSums sums =
            n >= 1 ? geometric_sums(system, w0, n) : geometric_sums_direct(system, w0, n);
        out += LogCombination::log_of(system.lambda(), sums.sum_mult);
        out -= LogCombination::log_of(a, sums.sum_mult_weighted);
    }
    return out;
}

LogCombination complexity_constant(const DecimationSystem& system) {
    const Rational a = abs(system.a_d());
    const Rational d(system.degree());
    if (system.one_dimensional())
        return LogCombination::log_of(a, Rational(-2) / (d - 1));

    require_generic(system, "complexity_constant");
    const Rational m(system.m());
    LogCombination out;
    for (const auto& [w, rule] : system.set_A())
        out += LogCombination::log_of(-w, rule.c);
    for (const auto& [w, rule] : system.set_B1()) {
        const Rational factor = rule.c * m / (m - 1);
        out += LogCombination::log_of(-w, factor);
        out += LogCombination::log_of(a, factor / (d - m));
    }
    const Rational& c0 = system.b0_rule().c;
    out += LogCombination::log_of(system.lambda(), c0 * m / (m - 1));
    out += LogCombination::log_of(a, c0 * m / (d - m));
    return out;
}

LogCombination regularized_logdet(const DecimationSystem& system) {
    const Rational a = abs(system.a_d());
    const Rational d(system.degree());
    if (system.one_dimensional()) {
        LogCombination out = LogCombination::log_of(*system.g0());
        out += LogCombination::log_of(a, Rational(2) / (d - 1));
        return out;
    }
    require_generic(system, "regularized_logdet");
    const Rational m(system.m());
    LogCombination out;
    for (const auto& [w, rule] : system.set_B1()) {
        const Rational factor =
            Rational(rule.override_at(0)) + Rational(rule.override_at(1)) -
            rule.c * m * m / (m - 1);
        out += LogCombination::log_of(-w, factor);
        out += LogCombination::log_of(a, factor / (d - 1));
    }
    const Rational& c0 = system.b0_rule().c;
    out -= LogCombination::log_of(system.lambda(), c0 * m / (m - 1));
    out += LogCombination::log_of(a, Rational(system.b0_rule().j) / (d - 1));
    return out;
}

Rational pole_cancellation_residual(const DecimationSystem& system) {
    require_generic(system, "pole_cancellation_residual");
    const Rational d(system.degree());
    const Rational m(system.m());
    Rational acc(0);
    for (const auto& [w, rule] : system.set_B1()) {
        acc += Rational(rule.override_at(0)) + Rational(rule.override_at(1)) / d +
               rule.c * m * m / (d * (d - m));
    }
    acc += system.b0_rule().c * m * (d - 1) / (d - m);
    acc += system.b0_rule().j;
    return acc;
}

// ------------------------------------------------------------ verification

bool DeterminantReport::passed() const {
    for (const auto& row : rows) {
        if (row.n < 2) continue;  // the theorem holds for n > 1
        if (row.residual_closed_vs_prediction > tolerance) return false;
        if (row.residual_oracle_vs_closed && *row.residual_oracle_vs_closed > tolerance)
            return false;
    }
    return !rows.empty();
}

DeterminantReport verify_identity(const FamilyDescriptor& family, int n_min, int n_max,
                                  bool with_oracle, LaplacianKind kind, int precision_bits,
                                  std::size_t oracle_vertex_cap) {
    if (n_min < 0 || n_max < n_min) throw Error("verify_identity: bad level range");
    PrecisionScope scope(precision_bits);
    const DecimationSystem& system = family.system;

    DeterminantReport report;
    report.family = family.name;
    report.parameters = family.parameters;
    report.kind = kind;
    report.precision_bits = precision_bits;
    report.with_oracle = with_oracle;
    report.notes = family.notes;
    report.tolerance = boost::multiprecision::pow(Real(10), -precision_bits / 4);

    report.c_constant = complexity_constant(system);
    report.j = system.one_dimensional() ? 1 : system.b0_rule().j;
    report.log_lambda = LogCombination::log_of(system.lambda());
    report.logdet_regularized = regularized_logdet(system);
    if (!system.one_dimensional())
        report.pole_residual = pole_cancellation_residual(system);

    std::optional<int> regular_k;
    if (kind == LaplacianKind::Combinatorial) {
        if (!family.regular_degree)
            throw InvalidSystem(
                "combinatorial variant requires a k-regular graph family (circle or "
                "double_sg)");
        regular_k = family.regular_degree;
        // adjusted constant: with |V_n| = K m^n, log tau(G_n)/|V_n| tends to
        // c/K + log k (the asymptotic complexity constant)
        const VertexCountLaw& law = system.vertex_count_law();
        if (law.plus == 0) {
            LogCombination adj = report.c_constant * (1 / law.K);
            adj += LogCombination::log_of(Rational(*regular_k));
            report.c_asymptotic = adj;
        }
    }

    if (with_oracle && !family.graph_builder)
        throw OracleInfeasible("family '" + family.name +
                               "' has no explicit graph construction; run without "
                               "--oracle (verified analytically)");

    for (int n = n_min; n <= n_max; ++n) {
        LevelRow row;
        row.n = n;

        LogCombination closed = logdet_discrete_closed(system, n);
        LogCombination prediction = report.c_constant * pow_rational(Rational(system.m()), n);
        prediction += report.log_lambda * Rational(n * report.j);
        prediction += report.logdet_regularized;

        if (regular_k) {
            // each of the |V_n| - 1 nonzero eigenvalues scales by k
            LogCombination shift = LogCombination::log_of(
                Rational(*regular_k), Rational(system.vertex_count(n) - 1));
            closed += shift;
            prediction += shift;
        }

        row.logdet_closed_exact = closed;
        row.prediction_exact = prediction;
        row.logdet_closed = closed.value();
        row.prediction = prediction.value();
        row.exact_closed_eq_prediction = closed == prediction;
        row.residual_closed_vs_prediction = rabs(row.logdet_closed - row.prediction);

        if (with_oracle) {
            FractalGraph graph = family.graph_builder(n);
            if (graph.vertex_count > oracle_vertex_cap)
                throw OracleInfeasible("level " + std::to_string(n) + " graph has " +
                                       std::to_string(graph.vertex_count) +
                                       " vertices, beyond the exact-oracle cap of " +
                                       std::to_string(oracle_vertex_cap));
            OracleLogDet oracle = oracle_logdet(graph, kind, precision_bits);
            row.logdet_oracle = oracle.log_value;
            row.oracle_exact = oracle.exact;
            row.residual_oracle_vs_closed = rabs(oracle.log_value - row.logdet_closed);
            try {
                row.exact_oracle_eq_closed = LogCombination::log_of(oracle.exact) == closed;
            } catch (const Error&) {
                row.exact_oracle_eq_closed = std::nullopt;  // unfactorable determinant
            }
            if (kind == LaplacianKind::Combinatorial) {
                Integer tau = spanning_tree_count(graph);
                row.spanning_trees = tau;
                using boost::multiprecision::log;
                row.log_tau_per_vertex =
                    Real(log(Real(tau)) / Real(system.vertex_count(n)));
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ------------------------------------------------------------ serialization

namespace {

std::string real30(const Real& x) { return x.str(30); }

nlohmann::ordered_json logcomb_json(const LogCombination& v) {
    nlohmann::ordered_json out;
    out["value"] = real30(v.value());
    nlohmann::ordered_json coeffs;
    for (const auto& [prime, coeff] : v.coefficients())
        coeffs[prime.str()] = coeff.str();
    out["log_coefficients"] = coeffs;
    return out;
}

} // namespace

void report_to_csv(const DeterminantReport& report, std::ostream& os) {
    os << "n,logdet_closed,logdet_oracle,prediction,residual_closed_vs_prediction,"
          "residual_oracle_vs_closed,exact_closed_eq_prediction,exact_oracle_eq_closed\n";
    for (const auto& row : report.rows) {
        os << row.n << ',' << real30(row.logdet_closed) << ',';
        if (row.logdet_oracle) os << real30(*row.logdet_oracle);
        os << ',' << real30(row.prediction) << ','
           << real30(row.residual_closed_vs_prediction) << ',';
        if (row.residual_oracle_vs_closed) os << real30(*row.residual_oracle_vs_closed);
        os << ',' << (row.exact_closed_eq_prediction ? "true" : "false") << ',';
        if (row.exact_oracle_eq_closed)
            os << (*row.exact_oracle_eq_closed ? "true" : "false");
        os << '\n';
    }
}

void report_to_json(const DeterminantReport& report, std::ostream& os) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["schema_version"] = "1";
    doc["family"] = report.family;
    json params;
    for (const auto& [key, value] : report.parameters) params[key] = value.str();
    doc["parameters"] = params;
    doc["laplacian"] = to_string(report.kind);
    doc["precision_bits"] = report.precision_bits;
    doc["with_oracle"] = report.with_oracle;
    doc["tolerance"] = real30(report.tolerance);

    json constants;
    constants["c"] = logcomb_json(report.c_constant);
    constants["j"] = report.j;
    constants["log_lambda"] = logcomb_json(report.log_lambda);
    constants["logdet_regularized"] = logcomb_json(report.logdet_regularized);
    if (report.pole_residual) constants["pole_residual"] = report.pole_residual->str();
    if (report.c_asymptotic)
        constants["asymptotic_complexity_constant"] = logcomb_json(*report.c_asymptotic);
    doc["constants"] = constants;

    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["n"] = row.n;
        r["logdet_closed"] = real30(row.logdet_closed);
        r["logdet_closed_exact"] = logcomb_json(row.logdet_closed_exact);
        r["prediction"] = real30(row.prediction);
        r["prediction_exact"] = logcomb_json(row.prediction_exact);
        r["residual_closed_vs_prediction"] = real30(row.residual_closed_vs_prediction);
        r["exact_closed_eq_prediction"] = row.exact_closed_eq_prediction;
        if (row.logdet_oracle) {
            r["logdet_oracle"] = real30(*row.logdet_oracle);
            r["oracle_determinant"] = row.oracle_exact->str();
            r["residual_oracle_vs_closed"] = real30(*row.residual_oracle_vs_closed);
            if (row.exact_oracle_eq_closed)
                r["exact_oracle_eq_closed"] = *row.exact_oracle_eq_closed;
        }
        if (row.spanning_trees) {
            r["spanning_trees"] = row.spanning_trees->str();
            r["log_tau_per_vertex"] = real30(*row.log_tau_per_vertex);
        }
        rows.push_back(r);
    }
    doc["levels"] = rows;
    doc["notes"] = report.notes;
    doc["passed"] = report.passed();
    os << doc.dump(2) << "\n";
}

} // namespace specdet
