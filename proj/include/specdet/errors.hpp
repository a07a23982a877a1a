#ifndef SPECDET_ERRORS_HPP
#define SPECDET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace specdet {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Root refinement failed to reach tolerance within the iteration budget.
struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

// nonzero_root_product requires 0 to be a simple root (linear coefficient != 0).
struct ZeroNotSimpleRoot : Error {
    explicit ZeroNotSimpleRoot(const std::string& msg) : Error(msg) {}
};

// Renormalized preimage branch failed the contraction test.
struct BranchDivergence : Error {
    explicit BranchDivergence(const std::string& msg) : Error(msg) {}
};

// Eigenvalue not reachable from the system's seed sets.
struct UnknownEigenvalue : Error {
    explicit UnknownEigenvalue(const std::string& msg) : Error(msg) {}
};

// Assembled spectrum cardinality disagrees with the vertex count law.
struct MultiplicityMismatch : Error {
    explicit MultiplicityMismatch(const std::string& msg) : Error(msg) {}
};

// Generic-case formula evaluated on a d == m system (or vice versa).
struct DegenerateCase : Error {
    explicit DegenerateCase(const std::string& msg) : Error(msg) {}
};

struct OutOfConvergenceRegion : Error {
    explicit OutOfConvergenceRegion(const std::string& msg) : Error(msg) {}
};

struct GeometricPole : Error {
    explicit GeometricPole(const std::string& msg) : Error(msg) {}
};

struct ParameterOutOfRange : Error {
    explicit ParameterOutOfRange(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Carries the violations reported by decimation validate().
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Laplacian kernel has dimension > 1 (disconnected graph).
struct SingularBeyondKernel : Error {
    explicit SingularBeyondKernel(const std::string& msg) : Error(msg) {}
};

// Catch-all for structurally inconsistent systems detected at use time.
struct InvalidSystem : Error {
    explicit InvalidSystem(const std::string& msg) : Error(msg) {}
};

} // namespace specdet

#endif // SPECDET_ERRORS_HPP
