#include "specdet/decimation.hpp"

#include <algorithm>
#include <sstream>

#include "specdet/errors.hpp"

namespace specdet {

namespace {

Integer rational_to_count(const Rational& r, const std::string& what) {
    if (!is_integer(r) || r < 0)
        throw InvalidSystem(what + " is not a nonnegative integer: " + r.str());
    return numerator(r);
}

} // namespace

// --------------------------------------------------------- MultiplicityRule

Integer MultiplicityRule::override_at(int n) const {
    auto it = low_level.find(n);
    return it == low_level.end() ? Integer(0) : it->second;
}

Integer MultiplicityRule::mult(int n, const Integer& m) const {
    if (n < 0) return Integer(0);
    if (kind == SeedKind::SetB0) {
        if (n == 0) return Integer(0);
        Rational value = c * Rational(ipow(m, n)) + j;
        return rational_to_count(value, "B0 multiplicity at level " + std::to_string(n));
    }
    if (n < 2) return override_at(n);
    Rational value = c * Rational(ipow(m, n));
    return rational_to_count(value, "multiplicity at level " + std::to_string(n));
}

// ----------------------------------------------------------- VertexCountLaw

Integer VertexCountLaw::operator()(int n) const {
    auto it = overrides.find(n);
    if (it != overrides.end()) return it->second;
    Rational value = K * Rational(ipow(base, n)) + plus;
    return rational_to_count(value, "vertex count at level " + std::to_string(n));
}

// --------------------------------------------------------- DecimationSystem

DecimationSystem::DecimationSystem(Data data) : data_(std::move(data)), m_(data_.m) {
    if (data_.m < 2) throw InvalidSystem("replication factor m must be >= 2");
    if (data_.R.degree() < 2) throw InvalidSystem("decimation polynomial degree must be >= 2");
    std::sort(data_.b0_values.begin(), data_.b0_values.end());
}

// ------------------------------------------------------------------ validate

std::vector<Violation> validate(const DecimationSystem& system) {
    std::vector<Violation> out;
    auto violate = [&out](std::string clause, std::string detail) {
        out.push_back({std::move(clause), std::move(detail)});
    };

    const Polynomial& R = system.R();
    const int d = system.degree();

    if (R.constant_term() != 0)
        violate("R(0) = 0", "constant term is " + R.constant_term().str());
    if (R.coeff(1) != system.lambda())
        violate("R'(0) = lambda", "R'(0) = " + R.coeff(1).str() + ", declared lambda = " +
                                      system.lambda().str());
    if (system.lambda() <= 1)
        violate("lambda > 1", "R'(0) must exceed 1, got " + system.lambda().str());

    // B0 must be exactly the multiset R^{-1}(0) \ {0}
    if (R.constant_term() == 0) {
        if (static_cast<int>(system.b0_values().size()) != d - 1) {
            violate("B0 = R^{-1}(0) \\ {0}",
                    "B0 holds " + std::to_string(system.b0_values().size()) +
                        " values, expected d - 1 = " + std::to_string(d - 1));
        } else {
            Polynomial reduced = R.divided_by_z();
            std::vector<Rational> declared = system.b0_values();
            std::sort(declared.begin(), declared.end());
            for (std::size_t i = 0; i < declared.size(); ++i) {
                const Rational& b = declared[i];
                if (reduced(b) != 0) {
                    violate("B0 = R^{-1}(0) \\ {0}",
                            "declared value " + b.str() + " is not a root of R(z)/z");
                    continue;
                }
                int copies = 1;
                while (i + 1 < declared.size() && declared[i + 1] == b) {
                    ++copies;
                    ++i;
                }
                // verify root multiplicity via exact derivatives
                Polynomial q = reduced;
                int mult = 1;
                while (q.degree() >= 1) {
                    q = q.derivative();
                    if (q(b) != 0) break;
                    ++mult;
                }
                if (mult != copies)
                    violate("B0 = R^{-1}(0) \\ {0}",
                            "value " + b.str() + " declared " + std::to_string(copies) +
                                " times but has root multiplicity " + std::to_string(mult));
            }
        }
    }

    // disjointness of the seed sets; a value shared by B0 and a B1 seed is
    // tolerated when that B1 seed has no geometric part (c = 0): its
    // generating function is a polynomial, contributions stay additive and
    // the pole bookkeeping is unaffected (basilica degenerates this way at
    // p = 1/4, where 2q = 2p + 1)
    auto contains = [](const std::vector<Rational>& values, const Rational& x) {
        return std::find(values.begin(), values.end(), x) != values.end();
    };
    std::vector<Rational> b1_values;
    for (const auto& [w, rule] : system.set_B1()) b1_values.push_back(w);
    for (const auto& [w, rule] : system.set_B1()) {
        if (contains(system.b0_values(), w) && rule.c != 0)
            violate("B0 and B1 disjoint",
                    "value " + w.str() + " lies in B0 and carries a geometric B1 rule");
    }
    for (const auto& [w, rule] : system.set_A()) {
        if (contains(b1_values, w) || contains(system.b0_values(), w))
            violate("A disjoint from B0 and B1", "value " + w.str() + " appears in both");
    }

    // case split and the spectral-dimension inequality log d <= log m
    const int m = system.m_int();
    if (system.one_dimensional()) {
        if (d != m)
            violate("one-dimensional case has d = m",
                    "d = " + std::to_string(d) + ", m = " + std::to_string(m));
        if (!system.g0())
            violate("one-dimensional case requires g0", "g0 absent");
        else if (*system.g0() <= 0)
            violate("g0 > 0", "g0 = " + system.g0()->str());
    } else {
        if (d == m)
            violate("generic case has d != m", "d = m = " + std::to_string(d));
        if (d > m)
            violate("log d / log lambda <= d_S / 2",
                    "d = " + std::to_string(d) + " exceeds m = " + std::to_string(m));
    }

    // multiplicity integrality
    auto check_rule = [&](const Rational& w, const MultiplicityRule& rule,
                          const std::string& set_name) {
        const std::string where = set_name + " seed " + w.str();
        if (rule.kind == SeedKind::SetB0) {
            if (rule.j < 0 || rule.j > 2)
                violate("j in {0,1,2}", where + " has j = " + std::to_string(rule.j));
            Rational c0m = rule.c * m;
            if (!is_integer(c0m) || c0m < 0)
                violate("B0 multiplicities are nonnegative integers",
                        where + ": c0 * m = " + c0m.str());
        } else {
            Rational cm2 = rule.c * m * m;
            if (!is_integer(cm2) || cm2 < 0)
                violate("c_w * m^n integral for n >= 2", where + ": c_w * m^2 = " + cm2.str());
        }
    };
    for (const auto& [w, rule] : system.set_A()) check_rule(w, rule, "A");
    for (const auto& [w, rule] : system.set_B1()) check_rule(w, rule, "B1");
    if (!system.one_dimensional() && !system.b0_values().empty())
        check_rule(system.b0_values().front(), system.b0_rule(), "B0");

    // counting identity against the vertex count law (no root finding:
    // level-k preiterates contribute d^k values with multiplicity)
    for (int n = 0; n <= 2; ++n) {
        Integer total(1);  // eigenvalue 0
        bool computable = true;
        try {
            if (system.one_dimensional()) {
                for (int k = 0; k <= n; ++k) total += ipow(Integer(d), k);
            } else {
                for (const auto& [w, rule] : system.set_A()) total += rule.mult(n, system.m());
                for (const auto& [w, rule] : system.set_B1())
                    for (int k = 0; k <= n; ++k)
                        total += ipow(Integer(d), k) * rule.mult(n - k, system.m());
                for (int k = 0; k <= n; ++k)
                    total += Integer(d - 1) * ipow(Integer(d), k) *
                             system.b0_rule().mult(n - k, system.m());
            }
        } catch (const InvalidSystem&) {
            computable = false;  // integrality violation already reported
        }
        if (computable && total != system.vertex_count(n))
            violate("multiplicity totals match |V_n|",
                    "level " + std::to_string(n) + ": total " + total.str() + " vs |V_n| = " +
                        system.vertex_count(n).str());
    }

    return out;
}

// -------------------------------------------------------------- multiplicity

namespace {

constexpr int kMatchBits = 192;

bool matches(const NumericValue& w, const Rational& seed) {
    if (w.is_exact()) return *w.exact == seed;
    NumericValue s(seed);
    return w.same_value(s, kMatchBits);
}

// Root multiplicity of v in R(z) - R(v): 1 plus the vanishing order of R'
// at v. Exact along rational orbits, interval test otherwise.
Integer branch_order(const Polynomial& R, const NumericValue& v) {
    Polynomial deriv = R.derivative();
    Integer order(1);
    while (true) {
        bool vanishes;
        if (v.is_exact()) {
            vanishes = deriv(*v.exact) == 0;
        } else {
            Real dv = deriv(v.approx);
            vanishes = rabs(dv) < pow2(-kMatchBits / 2) * rmax(Real(1), rabs(v.approx));
        }
        if (!vanishes) return order;
        ++order;
        if (deriv.degree() == 0) return order;
        deriv = deriv.derivative();
    }
}

} // namespace

/*
 * mult_n(w) as the spectrum assembly sees it: the sum over every seed tree
 * in which w occurs. Forward iteration v -> R(v) walks the unique chain of
 * images; at step k the value v may coincide with several seeds (the seed
 * values degenerate, e.g. basilica at p = 1/2 where -2p = -2q), each
 * contributing mult_{n-k}(seed) times the accumulated branch multiplicity
 * (repeated roots of R(z) - R(v) multiply occurrences).
 */
Integer multiplicity(const DecimationSystem& system, const NumericValue& w, int n) {
    if (n < 0) throw Error("multiplicity: level must be >= 0");
    PrecisionScope scope(kMatchBits);
    if (matches(w, Rational(0))) return Integer(1);

    Integer total(0);
    Integer branch_mult(1);
    bool reachable = false;
    NumericValue v = w;
    for (int k = 0; k <= n; ++k) {
        if (system.one_dimensional()) {
            // keep walking: g0 may be a fixed point of R (the pq cubic) and
            // then recurs at every level of its own tree
            if (matches(v, -*system.g0())) {
                total += branch_mult;
                reachable = true;
            }
        } else {
            bool dead_end = false;
            for (const auto& [seed, rule] : system.set_A()) {
                if (matches(v, seed)) {
                    if (k == 0) {
                        total += rule.mult(n, system.m());
                        reachable = true;
                    }
                    dead_end = true;  // A-elements take no preiterates
                }
            }
            for (const auto& [seed, rule] : system.set_B1()) {
                if (matches(v, seed)) {
                    total += branch_mult * rule.mult(n - k, system.m());
                    reachable = true;
                }
            }
            for (const auto& seed : system.b0_values()) {
                if (matches(v, seed)) {
                    total += branch_mult * system.b0_rule().mult(n - k, system.m());
                    reachable = true;
                }
            }
            if (dead_end) break;
        }
        if (k == n) break;
        branch_mult *= branch_order(system.R(), v);
        if (v.is_exact()) {
            v = NumericValue(system.R()(*v.exact));
        } else {
            v = NumericValue(system.R()(v.approx));
        }
        if (matches(v, Rational(0))) break;  // beyond B0 only the zero chain remains
    }
    if (!reachable)
        throw UnknownEigenvalue("eigenvalue is not reachable within " + std::to_string(n) +
                                " preimage steps");
    return total;
}

Integer multiplicity(const DecimationSystem& system, const Rational& w, int n) {
    return multiplicity(system, NumericValue(w), n);
}

// ---------------------------------------------------------- preimage levels

std::vector<std::vector<std::pair<NumericValue, Integer>>> preimage_levels(
    const Polynomial& R, const NumericValue& seed, int depth, int precision_bits) {
    PrecisionScope scope(precision_bits);
    std::vector<std::vector<std::pair<NumericValue, Integer>>> levels;
    levels.reserve(static_cast<std::size_t>(depth) + 1);
    levels.push_back({{seed, Integer(1)}});
    for (int k = 1; k <= depth; ++k) {
        std::vector<std::pair<NumericValue, Integer>> next;
        for (const auto& [value, count] : levels.back()) {
            RootSet rs = preimages(R, value, precision_bits);
            for (const auto& root : rs.roots) {
                if (!root.is_real)
                    throw NonConvergence(
                        "complex preimage encountered; precision failure or invalid "
                        "system (value " +
                        value.approx.str(12) + ")");
                NumericValue z = root.numeric();
                Integer mult = count * root.multiplicity;
                bool merged = false;
                for (auto& [existing, total] : next) {
                    if (existing.same_value(z, precision_bits)) {
                        total += mult;
                        if (!existing.is_exact() && z.is_exact()) existing = z;
                        merged = true;
                        break;
                    }
                }
                if (!merged) next.emplace_back(z, mult);
            }
        }
        levels.push_back(std::move(next));
    }
    return levels;
}

// ------------------------------------------------------------------ spectrum

Integer SpectrumLevel::total_multiplicity() const {
    Integer t(0);
    for (const auto& e : entries) t += e.multiplicity;
    return t;
}

SpectrumLevel spectrum(const DecimationSystem& system, int n, int precision_bits) {
    if (n < 0) throw Error("spectrum: level must be >= 0");
    PrecisionScope scope(precision_bits);

    std::vector<SpectrumEntry> raw;
    raw.push_back({NumericValue(Rational(0)), Integer(1)});

    auto add_seed_tree = [&](const Rational& seed, const MultiplicityRule& rule) {
        int depth = -1;
        for (int k = 0; k <= n; ++k)
            if (rule.mult(n - k, system.m()) > 0) depth = k;
        if (depth < 0) return;
        auto levels = preimage_levels(system.R(), NumericValue(seed), depth, precision_bits);
        for (int k = 0; k <= depth; ++k) {
            Integer mu = rule.mult(n - k, system.m());
            if (mu == 0) continue;
            for (const auto& [value, root_count] : levels[static_cast<std::size_t>(k)])
                raw.push_back({value.negated(), mu * root_count});
        }
    };

    if (system.one_dimensional()) {
        // every level-k preiterate of g0 carries constant multiplicity 1
        auto levels =
            preimage_levels(system.R(), NumericValue(-*system.g0()), n, precision_bits);
        for (int k = 0; k <= n; ++k)
            for (const auto& [value, root_count] : levels[static_cast<std::size_t>(k)])
                raw.push_back({value.negated(), root_count});
    } else {
        for (const auto& [w, rule] : system.set_A()) {
            Integer mu = rule.mult(n, system.m());
            if (mu > 0) raw.push_back({NumericValue(-w), mu});
        }
        for (const auto& [w, rule] : system.set_B1()) add_seed_tree(w, rule);
        for (const auto& w : system.b0_values()) add_seed_tree(w, system.b0_rule());
    }

    // merge coincident eigenvalues
    SpectrumLevel out;
    out.n = n;
    for (const auto& entry : raw) {
        bool merged = false;
        for (auto& existing : out.entries) {
            if (existing.eigenvalue.same_value(entry.eigenvalue, precision_bits)) {
                existing.multiplicity += entry.multiplicity;
                if (!existing.eigenvalue.is_exact() && entry.eigenvalue.is_exact())
                    existing.eigenvalue = entry.eigenvalue;
                merged = true;
                break;
            }
        }
        if (!merged) out.entries.push_back(entry);
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) {
                  return a.eigenvalue.approx < b.eigenvalue.approx;
              });

    // structural checks: range, simple zero, total count
    const Real slack = pow2(-precision_bits / 2);
    for (const auto& e : out.entries) {
        if (e.eigenvalue.approx < -slack || e.eigenvalue.approx > Real(2) + slack)
            throw InvalidSystem("eigenvalue " + e.eigenvalue.approx.str(12) +
                                " outside [0, 2] at level " + std::to_string(n));
    }
    Integer zero_mult(0);
    for (const auto& e : out.entries)
        if (e.eigenvalue.same_value(NumericValue(Rational(0)), precision_bits))
            zero_mult += e.multiplicity;
    if (zero_mult != 1)
        throw MultiplicityMismatch("eigenvalue 0 has multiplicity " + zero_mult.str() +
                                   ", expected 1");

    const Integer expected = system.vertex_count(n);
    const Integer total = out.total_multiplicity();
    if (total != expected)
        throw MultiplicityMismatch("spectrum at level " + std::to_string(n) + " totals " +
                                   total.str() + " eigenvalues, |V_n| = " + expected.str());
    return out;
}

// -------------------------------------------------------- fractal eigenvalue

Real fractal_eigenvalue(const DecimationSystem& system, const Rational& w,
                        int branch_depth, int precision_bits) {
    PrecisionScope scope(precision_bits);
    if (w == 0) return Real(0);
    if (w > 0) throw Error("fractal_eigenvalue: seed must be <= 0 (paper convention)");
    if (branch_depth < 1) throw Error("fractal_eigenvalue: branch depth must be >= 1");

    const Real lambda_r(system.lambda());
    NumericValue v(w);
    Real lambda_pow(1);
    Real renorm = -Real(w);
    Real prev_diff(-1);

    for (int k = 1; k <= branch_depth; ++k) {
        RootSet rs = preimages(system.R(), v, precision_bits);
        const Root* smallest = nullptr;
        for (const auto& root : rs.roots) {
            if (!root.is_real) continue;
            if (!smallest || root.value.abs() < smallest->value.abs()) smallest = &root;
        }
        if (!smallest)
            throw BranchDivergence("no real preimage branch at step " + std::to_string(k));
        v = smallest->numeric();
        lambda_pow *= lambda_r;
        Real next = -lambda_pow * v.approx;
        Real diff = rabs(next - renorm);
        if (k > 4 && prev_diff > 0) {
            // geometric contraction with ratio about 1/lambda; generous slack
            Real allowed = prev_diff * rmax(Real(2) / lambda_r, Real(3) / 4);
            if (diff > allowed && diff > pow2(-precision_bits / 2))
                throw BranchDivergence("renormalized iterates stopped contracting at step " +
                                       std::to_string(k));
        }
        prev_diff = diff;
        renorm = next;
    }
    return renorm;
}

} // namespace specdet
