#include "specdet/catalog.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "specdet/errors.hpp"

namespace specdet {

namespace {

MultiplicityRule rule_a_b1(SeedKind kind, Rational c, Integer mult0, Integer mult1) {
    MultiplicityRule r;
    r.kind = kind;
    r.c = std::move(c);
    r.low_level[0] = std::move(mult0);
    r.low_level[1] = std::move(mult1);
    return r;
}

MultiplicityRule rule_b0(Rational c0, int j) {
    MultiplicityRule r;
    r.kind = SeedKind::SetB0;
    r.c = std::move(c0);
    r.j = j;
    return r;
}

void require_validated(const DecimationSystem& system, const std::string& name) {
    auto violations = validate(system);
    if (!violations.empty()) {
        std::ostringstream os;
        os << name << ": system fails validation:";
        for (const auto& v : violations) os << "\n  [" << v.clause << "] " << v.detail;
        throw ValidationError(os.str());
    }
}

} // namespace

FamilyDescriptor circle() {
    DecimationSystem::Data d;
    d.R = Polynomial({Rational(0), Rational(4), Rational(2)});
    d.lambda = 4;
    d.m = 2;
    d.kind = DecimationCase::OneDimensional;
    d.g0 = 2;
    d.b0_values = {Rational(-2)};
    d.b0_rule = rule_b0(Rational(0), 0);
    d.vertex_count = {Rational(2), Integer(2), Rational(0), {}};

    FamilyDescriptor f{
        "circle", {}, DecimationSystem(std::move(d)), {}, 2, true, {}};
    f.closed_forms.log_det_regularized = LogCombination::log_of(Rational(8));
    f.closed_forms.c_constant = LogCombination::log_of(Rational(2), Rational(-2));
    f.closed_forms.lambda = 4;
    f.closed_forms.j = 1;
    f.notes.push_back(
        "discrete determinants follow log det D_n = -(2 log 2) 2^n + n log 4 + log 8; "
        "the 2^n coefficient carries the log 2 factor (cycle product N^2 / 2^(N-1)).");
    f.graph_builder = [](int level) { return build_cycle_double_interval(level); };
    require_validated(f.system, f.name);
    return f;
}

FamilyDescriptor double_pq(const Rational& p) {
    if (p <= 0 || p >= 1)
        throw ParameterOutOfRange("double_pq: p must lie in (0, 1), got " + p.str());
    const Rational q = 1 - p;
    const Rational pq = p * q;

    DecimationSystem::Data d;
    // z (z^2 + 3 z + 2 + pq) / pq
    d.R = Polynomial({Rational(0), (2 + pq) / pq, 3 / pq, 1 / pq});
    d.lambda = (2 + pq) / pq;
    d.m = 3;
    d.kind = DecimationCase::OneDimensional;
    d.g0 = 2;
    // roots of z^2 + 3z + (2 + pq): discriminant (2p-1)^2 is always square
    d.b0_values = {p - 2, -1 - p};
    d.b0_rule = rule_b0(Rational(0), 0);
    d.vertex_count = {Rational(3, 2), Integer(3), Rational(1, 2), {}};

    FamilyDescriptor f{
        "double_pq", {{"p", p}}, DecimationSystem(std::move(d)), {}, std::nullopt, false, {}};
    f.closed_forms.log_det_regularized = LogCombination::log_of(2 / pq);
    f.closed_forms.c_constant = LogCombination::log_of(pq);
    f.closed_forms.lambda = 1 + 2 / pq;
    f.closed_forms.j = 1;
    f.notes.push_back(
        "modeled with the cubic decimation polynomial z(z^2+3z+2+pq)/(pq), the unique "
        "normalization with R(0)=0, R'(0)=lambda, d=m=3 reproducing the closed forms "
        "log det D = log(2/(pq)) and discrete coefficient log(pq) 3^n; the spectrum "
        "enumeration and vertex law (3^(n+1)+1)/2 are the formal objects of that "
        "normalization, not the physical double pq graphs.");
    require_validated(f.system, f.name);
    return f;
}

FamilyDescriptor double_sg(int N) {
    if (N < 3) throw ParameterOutOfRange("double_sg: N must be >= 3, got " + std::to_string(N));
    const Rational Nr(N);

    DecimationSystem::Data d;
    d.R = Polynomial({Rational(0), Nr + 2, 2 * Nr - 2});
    d.lambda = Nr + 2;
    d.m = N;
    d.kind = DecimationCase::Generic;
    d.set_A.emplace_back(-Nr / (Nr - 1),
                         rule_a_b1(SeedKind::SetA, Nr - 2, Integer(N - 1),
                                   Integer(N) * Integer(N - 2)));
    d.set_B1.emplace_back(Rational(-1) / (Nr - 1),
                          rule_a_b1(SeedKind::SetB1, Rational(0), Integer(0), Integer(1)));
    d.set_B1.emplace_back(-Nr / (2 * Nr - 2),
                          rule_a_b1(SeedKind::SetB1, (Nr - 2) / Nr, Integer(0),
                                    Integer(N - 1)));
    d.b0_values = {-(Nr + 2) / (2 * Nr - 2)};
    d.b0_rule = rule_b0((Nr - 2) / Nr, 1);
    d.vertex_count = {Nr, Integer(N), Rational(0), {}};

    FamilyDescriptor f{"double_sg",
                       {{"N", Rational(N)}},
                       DecimationSystem(std::move(d)),
                       {},
                       2 * (N - 1),
                       true,
                       {}};
    LogCombination regdet = LogCombination::log_of(Rational(4));
    regdet += LogCombination::log_of(Nr, Rational(1) / (Nr - 1));
    regdet += LogCombination::log_of(Nr + 2, -(Nr - 2) / (Nr - 1));
    regdet += LogCombination::log_of(Nr - 1);
    f.closed_forms.log_det_regularized = regdet;

    LogCombination c = LogCombination::log_of(Rational(2), Rational(-2));
    c += LogCombination::log_of(Nr, Nr * (Nr - 2) / (Nr - 1));
    c += LogCombination::log_of(Nr - 1, -Nr);
    c += LogCombination::log_of(Nr + 2, (Nr - 2) / (Nr - 1));
    f.closed_forms.c_constant = c;
    f.closed_forms.lambda = Nr + 2;
    f.closed_forms.j = 1;
    f.graph_builder = [N](int level) { return build_double_sg(N, level); };
    require_validated(f.system, f.name);
    return f;
}

FamilyDescriptor basilica(const Rational& p) {
    if (p <= 0 || p >= 1)
        throw ParameterOutOfRange("basilica: p must lie in (0, 1), got " + p.str());
    const Rational q = 1 - p;
    const Rational lambda = (2 * p + 1) / p;

    DecimationSystem::Data d;
    d.R = Polynomial({Rational(0), lambda, 1 / p});
    d.lambda = lambda;
    d.m = 3;
    d.kind = DecimationCase::Generic;
    d.set_B1.emplace_back(-2 * q,
                          rule_a_b1(SeedKind::SetB1, Rational(0), Integer(1), Integer(0)));
    d.set_B1.emplace_back(-2 * p,
                          rule_a_b1(SeedKind::SetB1, Rational(2, 3), Integer(0), Integer(2)));
    d.b0_values = {-(2 * p + 1)};
    d.b0_rule = rule_b0(Rational(0), 1);
    d.vertex_count = {Rational(2), Integer(3), Rational(0), {}};

    FamilyDescriptor f{
        "basilica", {{"p", p}}, DecimationSystem(std::move(d)), {}, std::nullopt, false, {}};
    f.closed_forms.log_det_regularized = LogCombination::log_of(q / (p * p));
    f.closed_forms.c_constant = LogCombination::log_of(2 * p * p);
    f.closed_forms.lambda = lambda;
    f.closed_forms.j = 1;
    f.notes.push_back(
        "m = 3 is taken purely as the vertex-growth base |V_n| = 2*3^n.");
    if (p > Rational(1, 2))
        f.notes.push_back(
            "for p > 1/2 the seed 2p+1 exceeds 2 and its preimages leave the real "
            "line, so spectrum enumeration is unavailable; rational identities "
            "(validation, pole cancellation) remain exact.");
    require_validated(f.system, f.name);
    return f;
}

std::vector<std::string> family_names() {
    return {"circle", "double_pq", "double_sg", "basilica"};
}

FamilyDescriptor make_family(const std::string& name,
                             const std::map<std::string, Rational>& params) {
    auto need = [&](const char* key) -> const Rational& {
        auto it = params.find(key);
        if (it == params.end())
            throw ParameterOutOfRange("family '" + name + "' requires parameter " + key);
        return it->second;
    };
    if (name == "circle") return circle();
    if (name == "double_pq") return double_pq(need("p"));
    if (name == "double_sg") {
        const Rational& N = need("N");
        if (!is_integer(N))
            throw ParameterOutOfRange("double_sg: N must be an integer, got " + N.str());
        return double_sg(static_cast<int>(to_integer(N)));
    }
    if (name == "basilica") return basilica(need("p"));
    throw ParameterOutOfRange("unknown family '" + name + "'");
}

// ----------------------------------------------------------- config loading

namespace {

using json = nlohmann::ordered_json;

Rational field_rational(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ParseError("missing field '" + field + "'");
    const auto& v = j.at(field);
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw ParseError("field '" + field + "' must be a \"p/q\" string or integer");
}

Integer field_integer(const json& j, const std::string& field) {
    Rational r = field_rational(j, field);
    if (!is_integer(r)) throw ParseError("field '" + field + "' must be an integer");
    return numerator(r);
}

MultiplicityRule parse_seed_rule(const json& j, SeedKind kind) {
    MultiplicityRule rule;
    rule.kind = kind;
    rule.c = field_rational(j, "c");
    rule.low_level[0] = field_integer(j, "c0_override");
    rule.low_level[1] = field_integer(j, "c1_override");
    return rule;
}

} // namespace

FamilyDescriptor parse_family(std::istream& in, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }

    try {
        DecimationSystem::Data d;
        if (!doc.contains("name") || !doc.at("name").is_string())
            throw ParseError("missing string field 'name'");
        const std::string name = doc.at("name").get<std::string>();

        if (!doc.contains("polynomial") || !doc.at("polynomial").is_array())
            throw ParseError("missing array field 'polynomial'");
        std::vector<Rational> coeffs;
        for (const auto& c : doc.at("polynomial")) {
            if (c.is_number_integer()) coeffs.push_back(Rational(c.get<long long>()));
            else if (c.is_string()) coeffs.push_back(parse_rational(c.get<std::string>()));
            else throw ParseError("polynomial coefficients must be \"p/q\" strings");
        }
        d.R = Polynomial(std::move(coeffs));
        d.lambda = d.R.degree() >= 1 ? d.R.coeff(1) : Rational(0);
        d.m = static_cast<int>(field_integer(doc, "m"));

        const std::string case_name = doc.contains("case")
                                          ? doc.at("case").get<std::string>()
                                          : std::string("generic");
        if (case_name == "generic") d.kind = DecimationCase::Generic;
        else if (case_name == "one_dimensional") d.kind = DecimationCase::OneDimensional;
        else throw ParseError("field 'case' must be 'generic' or 'one_dimensional'");
        if (doc.contains("g0")) d.g0 = field_rational(doc, "g0");

        if (!doc.contains("vertex_count")) throw ParseError("missing field 'vertex_count'");
        const json& vc = doc.at("vertex_count");
        d.vertex_count.K = field_rational(vc, "K");
        d.vertex_count.base = field_integer(vc, "base");
        d.vertex_count.plus = vc.contains("plus") ? field_rational(vc, "plus") : Rational(0);
        if (vc.contains("overrides")) {
            for (const auto& [key, value] : vc.at("overrides").items()) {
                Rational level = parse_rational(key);
                if (!is_integer(level)) throw ParseError("override level must be an integer");
                d.vertex_count.overrides[static_cast<int>(to_integer(level))] =
                    Integer(value.get<long long>());
            }
        }

        for (const auto& entry : doc.value("A", json::array()))
            d.set_A.emplace_back(field_rational(entry, "w"),
                                 parse_seed_rule(entry, SeedKind::SetA));
        for (const auto& entry : doc.value("B1", json::array()))
            d.set_B1.emplace_back(field_rational(entry, "w"),
                                  parse_seed_rule(entry, SeedKind::SetB1));

        // B0 values are not declared: they are R^{-1}(0) \ {0}, which must be
        // exact rationals for a declarative config
        if (d.R.constant_term() != 0)
            throw ParseError("polynomial must satisfy R(0) = 0");
        RootSet b0_roots = find_roots(d.R.divided_by_z(), 128);
        for (const auto& root : b0_roots.roots) {
            if (!root.exact)
                throw ParseError(
                    "R(z)/z has irrational roots; B0 is not expressible in a config");
            for (int i = 0; i < root.multiplicity; ++i) d.b0_values.push_back(*root.exact);
        }
        if (doc.contains("B0")) {
            d.b0_rule = rule_b0(field_rational(doc.at("B0"), "c0"),
                                static_cast<int>(field_integer(doc.at("B0"), "j")));
        }

        FamilyDescriptor f{name, {}, DecimationSystem(std::move(d)),
                           {},   {}, false,
                           {}};
        if (doc.contains("regular_degree"))
            f.regular_degree = static_cast<int>(field_integer(doc, "regular_degree"));
        if (doc.contains("notes"))
            for (const auto& note : doc.at("notes")) f.notes.push_back(note.get<std::string>());
        require_validated(f.system, name + " (" + origin + ")");
        return f;
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

FamilyDescriptor load_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    return parse_family(in, path);
}

void save_family(const FamilyDescriptor& family, std::ostream& os) {
    json doc;
    doc["name"] = family.name;
    json coeffs = json::array();
    for (const auto& c : family.system.R().coefficients()) coeffs.push_back(c.str());
    doc["polynomial"] = coeffs;
    doc["m"] = family.system.m_int();
    doc["case"] = family.system.one_dimensional() ? "one_dimensional" : "generic";
    if (family.system.g0()) doc["g0"] = family.system.g0()->str();

    json vc;
    vc["K"] = family.system.vertex_count_law().K.str();
    vc["base"] = family.system.vertex_count_law().base.str();
    vc["plus"] = family.system.vertex_count_law().plus.str();
    if (!family.system.vertex_count_law().overrides.empty()) {
        json ov;
        for (const auto& [n, count] : family.system.vertex_count_law().overrides)
            ov[std::to_string(n)] = count.convert_to<long long>();
        vc["overrides"] = ov;
    }
    doc["vertex_count"] = vc;

    auto seed_array = [](const std::vector<std::pair<Rational, MultiplicityRule>>& seeds) {
        json arr = json::array();
        for (const auto& [w, rule] : seeds) {
            json entry;
            entry["w"] = w.str();
            entry["c"] = rule.c.str();
            entry["c0_override"] = rule.override_at(0).str();
            entry["c1_override"] = rule.override_at(1).str();
            arr.push_back(entry);
        }
        return arr;
    };
    doc["A"] = seed_array(family.system.set_A());
    doc["B1"] = seed_array(family.system.set_B1());
    json b0;
    b0["c0"] = family.system.b0_rule().c.str();
    b0["j"] = family.system.b0_rule().j;
    doc["B0"] = b0;
    if (family.regular_degree) doc["regular_degree"] = *family.regular_degree;
    if (!family.notes.empty()) doc["notes"] = family.notes;
    os << doc.dump(2) << "\n";
}

} // namespace specdet
