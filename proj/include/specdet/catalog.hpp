#ifndef SPECDET_CATALOG_HPP
#define SPECDET_CATALOG_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specdet/decimation.hpp"
#include "specdet/graphs.hpp"
#include "specdet/logspace.hpp"

namespace specdet {

/// Published constants of a family, kept as exact log combinations so the
/// determinant pipeline can be checked against them symbolically.
struct ClosedForms {
    std::optional<LogCombination> log_det_regularized;
    std::optional<LogCombination> c_constant;
    std::optional<Rational> lambda;
    std::optional<int> j;
};

struct FamilyDescriptor {
    std::string name;
    std::map<std::string, Rational> parameters;
    DecimationSystem system;
    ClosedForms closed_forms;
    std::optional<int> regular_degree;  // k when level graphs are k-regular
    bool has_graph_oracle = false;
    std::vector<std::string> notes;
    // explicit level-graph construction, present for circle and double_sg
    std::function<FractalGraph(int level)> graph_builder;
};

/// Double unit interval (circle). R = 2z(2+z), one-dimensional, g0 = 2.
FamilyDescriptor circle();

/// Double pq-model, 0 < p < 1, q = 1 - p, normalized with the cubic
/// R = z(z^2 + 3z + 2 + pq)/(pq) so that R(0) = 0 and d = m = 3.
FamilyDescriptor double_pq(const Rational& p);

/// Double (N-1)-dimensional Sierpinski gasket, N >= 3. R = z(N+2+(2N-2)z).
FamilyDescriptor double_sg(int N);

/// Basilica Julia set graphs, 0 < p < 1, q = 1 - p. R = z((2p+1)/p + z/p),
/// m = 3. Spectrum enumeration requires p <= 1/2.
FamilyDescriptor basilica(const Rational& p);

std::vector<std::string> family_names();

/// Dispatch by name with named rational parameters ("N", "p").
FamilyDescriptor make_family(const std::string& name,
                             const std::map<std::string, Rational>& params);

/// Declarative family config (JSON with "p/q" rational strings; see README).
FamilyDescriptor load_family(const std::string& path);
FamilyDescriptor parse_family(std::istream& in, const std::string& origin);
void save_family(const FamilyDescriptor& family, std::ostream& os);

} // namespace specdet

#endif // SPECDET_CATALOG_HPP
