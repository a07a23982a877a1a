#include "specdet/exactlinalg.hpp"

#include <algorithm>
#include <cstdint>

#include "specdet/errors.hpp"

namespace specdet {

namespace {

// ------------------------------------------------------------ mod-p helpers

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return a * b % p; }  // p < 2^31, no overflow

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mm = [n](unsigned __int128 a, unsigned __int128 b) { return (u64)(a * b % n); };
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = 1, base = a % n, e = d;
        while (e) {
            if (e & 1) x = mm(x, base);
            base = mm(base, base);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mm(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> primes_31bit(std::size_t count) {
    static std::vector<u64> cache;
    u64 candidate = cache.empty() ? ((1ULL << 31) - 1) : cache.back() - 2;
    while (cache.size() < count) {
        if (is_prime_u64(candidate)) cache.push_back(candidate);
        candidate -= 2;
    }
    return {cache.begin(), cache.begin() + static_cast<long>(count)};
}

u64 mod_of(const Integer& x, u64 p) {
    Integer r = x % Integer(p);
    if (r < 0) r += Integer(p);
    return r.convert_to<u64>();
}

// --------------------------------------------- char poly of int matrix mod p

// In-place similarity reduction to upper Hessenberg form over Z_p.
void hessenberg_mod(std::vector<std::vector<u64>>& a, u64 p) {
    const std::size_t n = a.size();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::size_t pivot = 0;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (a[r][k] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == 0) continue;  // column already reduced
        if (pivot != k + 1) {
            std::swap(a[pivot], a[k + 1]);
            for (std::size_t r = 0; r < n; ++r) std::swap(a[r][pivot], a[r][k + 1]);
        }
        const u64 inv = invmod(a[k + 1][k], p);
        for (std::size_t i = k + 2; i < n; ++i) {
            if (a[i][k] == 0) continue;
            const u64 f = mulmod(a[i][k], inv, p);
            const u64 neg = p - f;
            for (std::size_t j = k; j < n; ++j)
                a[i][j] = (a[i][j] + mulmod(neg, a[k + 1][j], p)) % p;
            for (std::size_t r = 0; r < n; ++r)
                a[r][k + 1] = (a[r][k + 1] + mulmod(f, a[r][i], p)) % p;
        }
    }
}

// det(zI - H) for upper Hessenberg H via the leading-minor recurrence;
// returns ascending coefficients mod p (monic, degree n).
std::vector<u64> hessenberg_charpoly_mod(const std::vector<std::vector<u64>>& h, u64 p) {
    const std::size_t n = h.size();
    std::vector<std::vector<u64>> q(n + 1);
    q[0] = {1};
    for (std::size_t k = 1; k <= n; ++k) {
        // (z - h[k-1][k-1]) * q[k-1]
        std::vector<u64> poly(k + 1, 0);
        const u64 diag = h[k - 1][k - 1];
        for (std::size_t t = 0; t < k; ++t) {
            poly[t + 1] = (poly[t + 1] + q[k - 1][t]) % p;
            poly[t] = (poly[t] + mulmod(p - diag, q[k - 1][t], p)) % p;
        }
        // - sum over i of h[k-1-i][k-1] * prod_subdiag * q[k-1-i]
        u64 subprod = 1;
        for (std::size_t i = 1; i < k; ++i) {
            subprod = mulmod(subprod, h[k - i][k - i - 1], p);
            if (subprod == 0) break;
            const u64 factor = mulmod(h[k - 1 - i][k - 1], subprod, p);
            if (factor == 0) continue;
            const u64 neg = p - factor;
            const auto& qi = q[k - 1 - i];
            for (std::size_t t = 0; t < qi.size(); ++t)
                poly[t] = (poly[t] + mulmod(neg, qi[t], p)) % p;
        }
        q[k] = std::move(poly);
    }
    return q[n];
}

std::vector<u64> charpoly_mod(const IntMatrix& b, u64 p) {
    const std::size_t n = b.size();
    std::vector<std::vector<u64>> a(n, std::vector<u64>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = mod_of(b[i][j], p);
    hessenberg_mod(a, p);
    return hessenberg_charpoly_mod(a, p);
}

// Bound max_k |coefficient of z^(n-k)| <= C(n,k) * (product of k largest row
// 2-norm upper bounds); uses ceil(norm^2)^(1/2) conservatively via norm^2.
Integer charpoly_coeff_bound(const IntMatrix& b) {
    const std::size_t n = b.size();
    std::vector<Integer> row_norm2(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) row_norm2[i] += b[i][j] * b[i][j];
    std::sort(row_norm2.begin(), row_norm2.end(), std::greater<Integer>());

    Integer best(1);
    Integer binom(1), norm_prod2(1);
    for (std::size_t k = 1; k <= n; ++k) {
        binom = binom * Integer(n - k + 1) / Integer(k);
        norm_prod2 *= row_norm2[k - 1] + 1;  // +1 covers the sqrt ceiling
        Integer bound = binom * (sqrt(norm_prod2) + 1);
        best = std::max(best, bound);
    }
    return best;
}

} // namespace

// --------------------------------------------------------------- public API

Integer bareiss_determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return Integer(1);
    for (const auto& row : m)
        if (row.size() != n) throw Error("bareiss_determinant: matrix not square");

    Integer prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t pivot = 0;
            for (std::size_t r = k + 1; r < n; ++r) {
                if (m[r][k] != 0) {
                    pivot = r;
                    break;
                }
            }
            if (pivot == 0) return Integer(0);
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

std::vector<Rational> charpoly(const RatMatrix& M) {
    const std::size_t n = M.size();
    if (n == 0) return {Rational(1)};
    for (const auto& row : M)
        if (row.size() != n) throw Error("charpoly: matrix not square");

    Integer q(1);
    for (const auto& row : M)
        for (const auto& x : row) q = lcm(q, denominator(x));

    IntMatrix b(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i][j] = to_integer(M[i][j] * Rational(q));

    // enough primes so the CRT modulus exceeds twice the coefficient bound
    const Integer bound = 2 * charpoly_coeff_bound(b) + 1;
    std::size_t prime_count = 1;
    {
        Integer acc(1);
        std::vector<u64> ps = primes_31bit(1);
        while (acc <= bound) {
            ps = primes_31bit(prime_count);
            acc *= Integer(ps.back());
            ++prime_count;
        }
        prime_count = ps.size();
    }
    const std::vector<u64> primes = primes_31bit(prime_count);

    std::vector<Integer> coeff(n + 1, Integer(0));
    Integer modulus(1);
    for (u64 p : primes) {
        const auto cp = charpoly_mod(b, p);
        if (modulus == 1) {
            for (std::size_t t = 0; t <= n; ++t) coeff[t] = Integer(cp[t]);
        } else {
            const u64 minv = invmod(mod_of(modulus, p), p);
            for (std::size_t t = 0; t <= n; ++t) {
                u64 cur = mod_of(coeff[t], p);
                u64 delta = mulmod((cp[t] + p - cur) % p, minv, p);
                coeff[t] += modulus * Integer(delta);
            }
        }
        modulus *= Integer(p);
    }
    for (auto& c : coeff)
        if (c * 2 > modulus) c -= modulus;

    // char poly of B = qM is sum c_t y^t; substitute y = qz and renormalize
    std::vector<Rational> out(n + 1);
    for (std::size_t t = 0; t <= n; ++t)
        out[t] = Rational(coeff[t]) / Rational(ipow(q, static_cast<int>(n - t)));
    if (out[n] != 1) throw Error("charpoly: reconstruction lost monicity");
    return out;
}

std::vector<Real> jacobi_eigenvalues(std::vector<std::vector<Real>> s, int precision_bits) {
    PrecisionScope scope(precision_bits);
    const std::size_t n = s.size();
    if (n == 0) return {};
    using boost::multiprecision::sqrt;

    Real frob(0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) frob += s[i][j] * s[i][j];
    frob = sqrt(frob);
    if (frob == 0) return std::vector<Real>(n, Real(0));
    const Real stop = frob * pow2(-precision_bits + 8);

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        Real off(0);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += s[p][q] * s[p][q];
        if (sqrt(off) <= stop) {
            std::vector<Real> eig(n);
            for (std::size_t i = 0; i < n; ++i) eig[i] = s[i][i];
            std::sort(eig.begin(), eig.end());
            return eig;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (rabs(s[p][q]) <= frob * pow2(-precision_bits - 8)) continue;
                const Real tau = (s[q][q] - s[p][p]) / (2 * s[p][q]);
                Real t = Real(1) / (rabs(tau) + sqrt(1 + tau * tau));
                if (tau < 0) t = -t;
                const Real c = Real(1) / sqrt(1 + t * t);
                const Real sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const Real skp = s[k][p], skq = s[k][q];
                    s[k][p] = c * skp - sn * skq;
                    s[k][q] = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Real spk = s[p][k], sqk = s[q][k];
                    s[p][k] = c * spk - sn * sqk;
                    s[q][k] = sn * spk + c * sqk;
                }
            }
        }
    }
    throw NonConvergence("jacobi_eigenvalues: off-diagonal norm did not reach tolerance");
}

} // namespace specdet
