#ifndef SPECDET_EXACTLINALG_HPP
#define SPECDET_EXACTLINALG_HPP

#include <vector>

#include "specdet/numeric.hpp"
#include "specdet/rational.hpp"

namespace specdet {

using IntMatrix = std::vector<std::vector<Integer>>;
using RatMatrix = std::vector<std::vector<Rational>>;

/// Exact determinant of an integer matrix by fraction-free (Bareiss)
/// elimination with column pivoting.
Integer bareiss_determinant(IntMatrix m);

/**
 * Monic characteristic polynomial det(zI - M) of a square rational matrix,
 * ascending coefficients, exact.
 *
 * The matrix is scaled to integers, the integer characteristic polynomial is
 * computed modulo enough 31-bit primes (Hessenberg reduction + the standard
 * Hessenberg determinant recurrence, O(n^3) per prime) and reconstructed by
 * CRT against a rigorous Hadamard-style coefficient bound, then rescaled.
 */
std::vector<Rational> charpoly(const RatMatrix& M);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps at the given
/// working precision, sorted ascending.
std::vector<Real> jacobi_eigenvalues(std::vector<std::vector<Real>> S, int precision_bits);

} // namespace specdet

#endif // SPECDET_EXACTLINALG_HPP
