#ifndef QRPOLY_NUMTHY_HPP
#define QRPOLY_NUMTHY_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qrpoly/errors.hpp"

namespace qrpoly {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return acc;
}

} // namespace detail

/**
 * Deterministic Miller-Rabin primality test.
 *
 * The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to be
 * exact for every n < 3.3e24, which covers the full uint64 range.
 * Throws input_error for n < 2.
 */
inline bool is_prime(std::uint64_t n) {
    if (n < 2) throw input_error("is_prime: n must be >= 2");
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

/** Ascending list of primes in [lo, hi]. */
inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

/**
 * Jacobi symbol (a/n) for odd n >= 1, by the binary reciprocity algorithm.
 * Negative a is reduced modulo n first (valid since n is odd and the symbol
 * is completely multiplicative with period n).
 */
inline int jacobi(long long a, std::uint64_t n) {
    if (n == 0 || (n & 1) == 0) throw input_error("jacobi: modulus must be odd and positive");
    std::uint64_t ua = static_cast<std::uint64_t>(((a % static_cast<long long>(n)) +
                                                   static_cast<long long>(n)) %
                                                  static_cast<long long>(n));
    int sign = 1;
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            std::uint64_t m8 = n & 7;
            if (m8 == 3 || m8 == 5) sign = -sign;
        }
        std::swap(ua, n);
        if ((ua & 3) == 3 && (n & 3) == 3) sign = -sign;
        ua %= n;
    }
    return (n == 1) ? sign : 0;
}

/**
 * Legendre symbol (a/p) for an odd prime p, computed via quadratic
 * reciprocity.  Returns +1, -1, or 0 (the latter iff p divides a).
 * Throws input_error when p is even or composite.
 */
inline int legendre(long long a, std::uint64_t p) {
    if (p == 2 || !is_prime(p)) throw input_error("legendre: p must be an odd prime");
    return jacobi(a, p);
}

/**
 * Legendre symbol via Euler's criterion a^((p-1)/2) mod p.  Exists as an
 * independent route so the two evaluations can be cross-checked.
 */
inline int legendre_euler(long long a, std::uint64_t p) {
    if (p == 2 || !is_prime(p)) throw input_error("legendre_euler: p must be an odd prime");
    std::uint64_t ua = static_cast<std::uint64_t>(((a % static_cast<long long>(p)) +
                                                   static_cast<long long>(p)) %
                                                  static_cast<long long>(p));
    if (ua == 0) return 0;
    std::uint64_t e = detail::powmod_u64(ua, (p - 1) / 2, p);
    if (e == 1) return 1;
    if (e == p - 1) return -1;
    throw consistency_error("legendre_euler: criterion produced a value other than +-1");
}

/**
 * Per-prime context: the odd prime p, its quadratic residues R and
 * non-residues N in [1, p-1] (both ascending), a residue bitmap, and the
 * signed prime p* = (-1)^((p-1)/2) * p, the unique choice among +-p that is
 * congruent to 1 mod 4.
 *
 * The residue table is built from the squares k^2 mod p and independently
 * cross-checked against the reciprocity-based Legendre routine; a mismatch
 * raises consistency_error.
 */
class PrimeCtx {
  public:
    explicit PrimeCtx(std::uint64_t p) : p_(p) {
        if (p == 2 || !is_prime(p)) throw input_error("PrimeCtx: p must be an odd prime");
        if (p >= (1ull << 32)) throw input_error("PrimeCtx: p exceeds the supported range (< 2^32)");
        p_signed_ = (p % 4 == 1) ? static_cast<long long>(p) : -static_cast<long long>(p);
        isres_.assign(p, 0);
        for (std::uint64_t k = 1; k <= (p - 1) / 2; ++k)
            isres_[detail::mulmod_u64(k, k, p)] = 1;
        R_.reserve((p - 1) / 2);
        N_.reserve((p - 1) / 2);
        for (std::uint64_t r = 1; r < p; ++r) {
            if (isres_[r]) R_.push_back(static_cast<std::uint32_t>(r));
            else N_.push_back(static_cast<std::uint32_t>(r));
        }
        if (R_.size() != (p - 1) / 2 || N_.size() != (p - 1) / 2)
            throw consistency_error("PrimeCtx: residue/non-residue counts are not (p-1)/2");
        for (std::uint64_t r = 1; r < p; ++r) {
            int sym = jacobi(static_cast<long long>(r), p);
            if ((sym == 1) != (isres_[r] != 0))
                throw consistency_error("PrimeCtx: square table disagrees with Legendre symbol at r=" +
                                        std::to_string(r));
        }
    }

    std::uint64_t p() const { return p_; }
    /** Signed prime p* = +-p with p* = 1 (mod 4). */
    long long p_signed() const { return p_signed_; }
    const std::vector<std::uint32_t>& residues() const { return R_; }
    const std::vector<std::uint32_t>& nonresidues() const { return N_; }

    /** Whether r in [1, p-1] is a quadratic residue mod p. */
    bool is_residue(std::uint64_t r) const {
        if (r == 0 || r >= p_) throw input_error("is_residue: r must lie in [1, p-1]");
        return isres_[r] != 0;
    }

    std::uint32_t smallest_nonresidue() const { return N_.front(); }

  private:
    std::uint64_t p_;
    long long p_signed_;
    std::vector<std::uint32_t> R_, N_;
    std::vector<std::uint8_t> isres_;
};

/**
 * |{r in R : r < num/den}| for an exact rational bound num/den with
 * 0 < num/den <= p.  The bound is compared exactly (r*den < num), never
 * through floating point.
 */
inline std::size_t count_qr_below(const PrimeCtx& ctx, long long num, long long den) {
    if (den <= 0) throw input_error("count_qr_below: denominator must be positive");
    if (num <= 0) throw input_error("count_qr_below: bound must be positive");
    if (static_cast<__int128>(num) > static_cast<__int128>(den) * ctx.p())
        throw input_error("count_qr_below: bound must be <= p");
    const auto& R = ctx.residues();
    auto it = std::partition_point(R.begin(), R.end(), [&](std::uint32_t r) {
        return static_cast<__int128>(r) * den < static_cast<__int128>(num);
    });
    return static_cast<std::size_t>(it - R.begin());
}

/** |{n in N : n <= bound}| for an integer bound in [1, p-1]. */
inline std::size_t count_nqr_upto(const PrimeCtx& ctx, std::uint64_t bound) {
    if (bound == 0 || bound > ctx.p() - 1)
        throw input_error("count_nqr_upto: bound must lie in [1, p-1]");
    const auto& N = ctx.nonresidues();
    auto it = std::upper_bound(N.begin(), N.end(), static_cast<std::uint32_t>(bound));
    return static_cast<std::size_t>(it - N.begin());
}

/** Exact rational sum of r/p over the quadratic residues r of p. */
inline mpq_class residue_fraction_sum(const PrimeCtx& ctx) {
    mpz_class total = 0;
    for (std::uint32_t r : ctx.residues()) total += r;
    mpq_class q(total, mpz_class(static_cast<unsigned long>(ctx.p())));
    q.canonicalize();
    return q;
}

} // namespace qrpoly

#endif // QRPOLY_NUMTHY_HPP
