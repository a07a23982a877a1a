#ifndef SPECDET_GRAPHS_HPP
#define SPECDET_GRAPHS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "specdet/exactlinalg.hpp"
#include "specdet/logspace.hpp"
#include "specdet/numeric.hpp"
#include "specdet/rational.hpp"

namespace specdet {

enum class LaplacianKind { Probabilistic, Combinatorial };

std::string to_string(LaplacianKind kind);

/// Explicit level-n approximation graph. Parallel edges are listed
/// separately; weights are positive rationals (1 for the unweighted families).
struct FractalGraph {
    std::string name;
    int level = 0;
    std::size_t vertex_count = 0;
    struct Edge {
        std::size_t u, v;
        Rational weight;
    };
    std::vector<Edge> edges;
    std::vector<std::size_t> boundary;

    std::vector<Rational> weighted_degrees() const;
    bool is_connected() const;
    bool unit_weights() const;
};

/// Cycle on 2^(n+1) vertices; n = 0 degenerates to two vertices joined by a
/// double edge (two intervals glued at both endpoints).
FractalGraph build_cycle_double_interval(int n);

/// Two level-n Sierpinski gasket graphs on N boundary points, glued at the
/// N corners. Vertex identification is address-based via exact barycentric
/// coordinates, vertex order is lexicographic, so output is reproducible
/// bit-exactly. N^(n+1) vertices, 2(N-1)-regular.
FractalGraph build_double_sg(int N, int n);

/// L = D - W (combinatorial) or D^{-1}(D - W) (probabilistic), exact.
RatMatrix laplacian_matrix(const FractalGraph& g, LaplacianKind kind);

/// Product of the nonzero Laplacian eigenvalues, from the exact
/// characteristic polynomial: for a one-dimensional kernel it equals |c_1|.
struct OracleLogDet {
    Rational exact;     // the product itself, an exact rational
    Real log_value;     // its log at the working precision
};
OracleLogDet oracle_logdet(const FractalGraph& g, LaplacianKind kind, int precision_bits);

/// Full numeric spectrum through the symmetrized form D^{-1/2} L D^{-1/2},
/// sorted ascending.
std::vector<Real> oracle_spectrum(const FractalGraph& g, LaplacianKind kind,
                                  int precision_bits);

/// Kirchhoff count: any cofactor of the combinatorial Laplacian, exact.
Integer spanning_tree_count(const FractalGraph& g);

/// Edge-list text format (header: n, |V|, kind; lines: u v weight).
void export_edge_list(const FractalGraph& g, LaplacianKind kind, std::ostream& os);

} // namespace specdet

#endif // SPECDET_GRAPHS_HPP
