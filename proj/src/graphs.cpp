#include "specdet/graphs.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <queue>

#include "specdet/errors.hpp"

namespace specdet {

std::string to_string(LaplacianKind kind) {
    return kind == LaplacianKind::Probabilistic ? "probabilistic" : "combinatorial";
}

std::vector<Rational> FractalGraph::weighted_degrees() const {
    std::vector<Rational> deg(vertex_count, Rational(0));
    for (const auto& e : edges) {
        deg[e.u] += e.weight;
        deg[e.v] += e.weight;
    }
    return deg;
}

bool FractalGraph::is_connected() const {
    if (vertex_count == 0) return false;
    std::vector<std::vector<std::size_t>> adj(vertex_count);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<bool> seen(vertex_count, false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t visited = 1;
    while (!frontier.empty()) {
        std::size_t v = frontier.front();
        frontier.pop();
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++visited;
                frontier.push(w);
            }
        }
    }
    return visited == vertex_count;
}

bool FractalGraph::unit_weights() const {
    for (const auto& e : edges)
        if (e.weight != 1) return false;
    return true;
}

FractalGraph build_cycle_double_interval(int n) {
    if (n < 0) throw ParameterOutOfRange("cycle level must be >= 0");
    FractalGraph g;
    g.name = "double_interval";
    g.level = n;
    if (n == 0) {
        g.vertex_count = 2;
        g.edges = {{0, 1, Rational(1)}, {0, 1, Rational(1)}};
        g.boundary = {0, 1};
        return g;
    }
    const std::size_t count = std::size_t(1) << (n + 1);
    g.vertex_count = count;
    g.edges.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        g.edges.push_back({i, (i + 1) % count, Rational(1)});
    g.boundary = {0, count / 2};  // the two gluing points of the intervals
    return g;
}

namespace {

// Vertex key of a gasket corner: copy id plus exact barycentric numerators
// over denominator 2^n. F_w(q_c) = sum_j 2^(n-j) e_{w_j} + e_c.
struct SgKey {
    int copy;
    std::vector<long long> coords;
    bool operator<(const SgKey& o) const {
        if (copy != o.copy) return copy < o.copy;
        return coords < o.coords;
    }
    bool operator==(const SgKey& o) const { return copy == o.copy && coords == o.coords; }
};

} // namespace

FractalGraph build_double_sg(int N, int n) {
    if (N < 3) throw ParameterOutOfRange("double SG requires N >= 3");
    if (n < 0) throw ParameterOutOfRange("level must be >= 0");
    if (n > 20) throw ParameterOutOfRange("level too large for explicit construction");

    FractalGraph g;
    g.name = "double_sg_" + std::to_string(N);
    g.level = n;

    const long long cells = [&] {
        long long c = 1;
        for (int i = 0; i < n; ++i) c *= N;
        return c;
    }();
    const long long scale = 1LL << n;

    auto corner_key = [&](int copy, const std::vector<int>& word, int corner) {
        SgKey key;
        key.coords.assign(static_cast<std::size_t>(N), 0);
        long long weight = scale;
        for (int letter : word) {
            weight /= 2;
            key.coords[static_cast<std::size_t>(letter)] += weight;
        }
        key.coords[static_cast<std::size_t>(corner)] += 1;
        // boundary corners (coords = scale * e_c) are shared by both copies
        bool is_boundary = false;
        for (int c = 0; c < N; ++c)
            if (key.coords[static_cast<std::size_t>(c)] == scale) is_boundary = true;
        key.copy = is_boundary ? 0 : copy;
        return key;
    };

    // first pass: collect keys, assign lexicographic indices
    std::map<SgKey, std::size_t> index;
    std::vector<int> word(static_cast<std::size_t>(n), 0);
    for (int copy = 0; copy < 2; ++copy) {
        std::fill(word.begin(), word.end(), 0);
        for (long long cell = 0; cell < cells; ++cell) {
            for (int corner = 0; corner < N; ++corner)
                index.emplace(corner_key(copy, word, corner), 0);
            for (std::size_t pos = word.size(); pos-- > 0;) {
                if (++word[pos] < N) break;
                word[pos] = 0;
            }
        }
    }
    std::size_t next = 0;
    for (auto& [key, idx] : index) idx = next++;

    g.vertex_count = index.size();
    for (int copy = 0; copy < 2; ++copy) {
        std::fill(word.begin(), word.end(), 0);
        for (long long cell = 0; cell < cells; ++cell) {
            for (int a = 0; a < N; ++a) {
                for (int b = a + 1; b < N; ++b) {
                    std::size_t u = index.at(corner_key(copy, word, a));
                    std::size_t v = index.at(corner_key(copy, word, b));
                    g.edges.push_back({u, v, Rational(1)});
                }
            }
            for (std::size_t pos = word.size(); pos-- > 0;) {
                if (++word[pos] < N) break;
                word[pos] = 0;
            }
        }
    }
    for (int c = 0; c < N; ++c) {
        std::vector<int> top(static_cast<std::size_t>(n), c);
        g.boundary.push_back(index.at(corner_key(0, top, c)));
    }
    std::sort(g.boundary.begin(), g.boundary.end());
    return g;
}

RatMatrix laplacian_matrix(const FractalGraph& g, LaplacianKind kind) {
    const std::size_t n = g.vertex_count;
    RatMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (const auto& e : g.edges) {
        if (e.u == e.v) throw InvalidSystem("laplacian_matrix: loop edge");
        m[e.u][e.v] -= e.weight;
        m[e.v][e.u] -= e.weight;
        m[e.u][e.u] += e.weight;
        m[e.v][e.v] += e.weight;
    }
    if (kind == LaplacianKind::Probabilistic) {
        const auto deg = g.weighted_degrees();
        for (std::size_t i = 0; i < n; ++i) {
            if (deg[i] <= 0) throw InvalidSystem("laplacian_matrix: isolated vertex");
            for (std::size_t j = 0; j < n; ++j) m[i][j] /= deg[i];
        }
    }
    return m;
}

OracleLogDet oracle_logdet(const FractalGraph& g, LaplacianKind kind, int precision_bits) {
    if (!g.is_connected())
        throw SingularBeyondKernel("oracle_logdet: graph is disconnected");
    const auto chi = charpoly(laplacian_matrix(g, kind));
    if (chi[0] != 0)
        throw Error("oracle_logdet: Laplacian kernel is empty (bad matrix)");
    if (chi[1] == 0)
        throw SingularBeyondKernel("oracle_logdet: kernel dimension exceeds 1");

    OracleLogDet out;
    out.exact = abs(chi[1]);
    PrecisionScope scope(precision_bits);
    using boost::multiprecision::log;
    out.log_value = log(Real(numerator(out.exact))) - log(Real(denominator(out.exact)));
    return out;
}

std::vector<Real> oracle_spectrum(const FractalGraph& g, LaplacianKind kind,
                                  int precision_bits) {
    PrecisionScope scope(precision_bits);
    const std::size_t n = g.vertex_count;
    const auto deg = g.weighted_degrees();
    using boost::multiprecision::sqrt;

    std::vector<std::vector<Real>> s(n, std::vector<Real>(n, Real(0)));
    for (const auto& e : g.edges) {
        Real w(e.weight);
        if (kind == LaplacianKind::Probabilistic)
            w /= sqrt(Real(deg[e.u]) * Real(deg[e.v]));
        s[e.u][e.v] -= w;
        s[e.v][e.u] -= w;
    }
    for (std::size_t i = 0; i < n; ++i)
        s[i][i] = kind == LaplacianKind::Probabilistic ? Real(1) : Real(deg[i]);
    return jacobi_eigenvalues(std::move(s), precision_bits);
}

Integer spanning_tree_count(const FractalGraph& g) {
    if (!g.is_connected()) return Integer(0);
    const std::size_t n = g.vertex_count;
    if (n == 1) return Integer(1);
    IntMatrix minor(n - 1, std::vector<Integer>(n - 1, Integer(0)));
    for (const auto& e : g.edges) {
        if (!is_integer(e.weight))
            throw Error("spanning_tree_count: weights must be integers");
        const Integer w = to_integer(e.weight);
        if (e.u > 0 && e.v > 0) {
            minor[e.u - 1][e.v - 1] -= w;
            minor[e.v - 1][e.u - 1] -= w;
        }
        if (e.u > 0) minor[e.u - 1][e.u - 1] += w;
        if (e.v > 0) minor[e.v - 1][e.v - 1] += w;
    }
    return abs(bareiss_determinant(std::move(minor)));
}

void export_edge_list(const FractalGraph& g, LaplacianKind kind, std::ostream& os) {
    os << "# graph " << g.name << "\n";
    os << "n " << g.level << "\n";
    os << "vertices " << g.vertex_count << "\n";
    os << "kind " << to_string(kind) << "\n";
    os << "boundary";
    for (std::size_t b : g.boundary) os << " " << b;
    os << "\n";
    for (const auto& e : g.edges)
        os << e.u << " " << e.v << " " << e.weight.str() << "\n";
}

} // namespace specdet
