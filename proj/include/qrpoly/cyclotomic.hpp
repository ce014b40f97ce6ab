#ifndef QRPOLY_CYCLOTOMIC_HPP
#define QRPOLY_CYCLOTOMIC_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qrpoly/errors.hpp"
#include "qrpoly/intpoly.hpp"
#include "qrpoly/numthy.hpp"

namespace qrpoly {

static_assert(GMP_NUMB_BITS == 64, "the packed product kernel assumes 64-bit limbs");

/**
 * Element of Z[zeta_p] for an odd prime p, stored as a length-p integer
 * vector over the spanning set 1, zeta, ..., zeta^(p-1).  That set carries
 * the single relation 1 + zeta + ... + zeta^(p-1) = 0, so every element has
 * a unique canonical representative with last entry zero; the class keeps
 * its vector canonical at all times, which makes equality a plain vector
 * comparison.
 */
class CycloBig {
  public:
    explicit CycloBig(std::uint32_t p) : p_(check_p(p)), c_(p) {}

    static CycloBig integer(std::uint32_t p, const mpz_class& v) {
        CycloBig z(p);
        z.c_[0] = v;
        return z;
    }

    /** zeta_p^k (k arbitrary, reduced mod p). */
    static CycloBig zeta_power(std::uint32_t p, std::uint64_t k) {
        CycloBig z(p);
        z.c_[k % p] = 1;
        z.canonicalize();
        return z;
    }

    static CycloBig from_coeffs(std::uint32_t p, std::vector<mpz_class> raw) {
        if (raw.size() != p) throw input_error("CycloBig: coefficient vector must have length p");
        CycloBig z(p);
        z.c_ = std::move(raw);
        z.canonicalize();
        return z;
    }

    std::uint32_t p() const { return p_; }
    const mpz_class& coeff(std::size_t i) const { return c_.at(i); }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    /** Whether the element lies in Z, i.e. only the constant entry survives. */
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    friend CycloBig operator+(const CycloBig& a, const CycloBig& b) {
        a.match(b);
        CycloBig z(a.p_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) z.c_[i] = a.c_[i] + b.c_[i];
        z.canonicalize();
        return z;
    }

    friend CycloBig operator-(const CycloBig& a, const CycloBig& b) {
        a.match(b);
        CycloBig z(a.p_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) z.c_[i] = a.c_[i] - b.c_[i];
        z.canonicalize();
        return z;
    }

    CycloBig operator-() const {
        CycloBig z(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) z.c_[i] = -c_[i];
        z.canonicalize();
        return z;
    }

    friend CycloBig operator*(const mpz_class& s, const CycloBig& a) {
        CycloBig z(a.p_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) z.c_[i] = s * a.c_[i];
        z.canonicalize();
        return z;
    }

    friend bool operator==(const CycloBig& a, const CycloBig& b) {
        a.match(b);
        return a.c_ == b.c_;
    }

    /** Galois action zeta -> zeta^s for s coprime to p. */
    CycloBig galois(std::uint64_t s) const {
        s %= p_;
        if (s == 0) throw input_error("CycloBig::galois: exponent multiplier must be coprime to p");
        CycloBig z(p_);
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            z.c_[idx] = c_[i];
            idx += s;
            if (idx >= p_) idx -= p_;
        }
        z.canonicalize();
        return z;
    }

    std::string to_string() const {
        std::string out = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ",";
            out += c_[i].get_str();
        }
        return out + "]";
    }

  private:
    static std::uint32_t check_p(std::uint32_t p) {
        if (p < 3 || !is_prime(p)) throw input_error("CycloBig: p must be an odd prime");
        return p;
    }

    void match(const CycloBig& other) const {
        if (p_ != other.p_) throw input_error("CycloBig: mixed moduli");
    }

    void canonicalize() {
        mpz_class t = c_[p_ - 1];
        if (t != 0)
            for (auto& v : c_) v -= t;
    }

    std::uint32_t p_;
    std::vector<mpz_class> c_;

    friend CycloBig cyclo_big_mul(const CycloBig&, const CycloBig&);
};

/** Full cyclic-convolution product in Z[zeta_p] (O(p^2) coefficient ops). */
inline CycloBig cyclo_big_mul(const CycloBig& a, const CycloBig& b) {
    if (a.p() != b.p()) throw input_error("cyclo_big_mul: mixed moduli");
    const std::uint32_t p = a.p();
    CycloBig z(p);
    for (std::uint32_t i = 0; i < p; ++i) {
        if (a.c_[i] == 0) continue;
        std::uint32_t k = i;
        for (std::uint32_t j = 0; j < p; ++j) {
            if (b.c_[j] != 0) z.c_[k] += a.c_[i] * b.c_[j];
            if (++k == p) k = 0;
        }
    }
    z.canonicalize();
    return z;
}

/** Quadratic Gauss sum g = sum over k in [0, p) of zeta_p^(k^2). */
inline CycloBig gauss_sum_vector(std::uint32_t p) {
    if (p < 3 || !is_prime(p)) throw input_error("gauss_sum_vector: p must be an odd prime");
    std::vector<mpz_class> raw(p);
    for (std::uint64_t k = 0; k < p; ++k)
        raw[detail::mulmod_u64(k, k, p)] += 1;
    return CycloBig::from_coeffs(p, std::move(raw));
}

/** Which degree-1 factor set a product runs over. */
enum class FactorSet { Residues, NonResidues };

namespace detail {

/**
 * Packed left-fold kernel for prod (x - zeta^r).
 *
 * Write the partial product after i factors as sum_j (-1)^j e_j x^(i-j),
 * where e_j is the j-th elementary symmetric function of the chosen roots.
 * Each e_j is a nonnegative integer combination of powers of zeta (a count
 * of j-subsets per exponent), and appending a root zeta^r updates it as
 *
 *     e_j <- e_j + zeta^r * e_(j-1),
 *
 * i.e. a pointwise add of a cyclically shifted column.  Because every entry
 * stays nonnegative and is bounded by C(m, j), the columns live in
 * fixed-width little-endian limb arrays sized from the binomial bound, and
 * the inner loop is a single mpn_add per vector entry with the shift folded
 * into the read index.  Active-limb counts keep small-j columns cheap.
 */
inline std::vector<CycloBig> gp_fold(const PrimeCtx& ctx, const std::vector<std::uint32_t>& exps) {
    const std::uint32_t p = static_cast<std::uint32_t>(ctx.p());
    const std::uint32_t m = (p - 1) / 2;
    if (exps.size() != m) throw consistency_error("gp_fold: factor set must have (p-1)/2 elements");

    // Column widths in limbs from the binomial bound C(m, j), plus headroom.
    std::vector<std::size_t> width(m + 1);
    {
        mpz_class binom = 1;
        width[0] = 2;
        for (std::uint32_t j = 1; j <= m; ++j) {
            binom = binom * (m - j + 1) / j;
            width[j] = (mpz_sizeinbase(binom.get_mpz_t(), 2) + 63) / 64 + 1;
        }
    }

    std::vector<std::vector<mp_limb_t>> col(m + 1);
    std::vector<std::size_t> active(m + 1, 0);
    for (std::uint32_t j = 0; j <= m; ++j) col[j].assign(static_cast<std::size_t>(p) * width[j], 0);
    col[0][0] = 1;
    active[0] = 1;

    for (std::uint32_t i = 1; i <= m; ++i) {
        const std::uint32_t r = exps[i - 1];
        if (r == 0 || r >= p) throw consistency_error("gp_fold: root exponent out of range");
        for (std::uint32_t j = i; j >= 1; --j) {
            const std::size_t Ld = width[j], Ls = width[j - 1];
            mp_limb_t* dst = col[j].data();
            const mp_limb_t* src = col[j - 1].data();
            const std::size_t wsrc = active[j - 1];
            if (active[j] == 0) {
                // First touch of this column: plain shifted copy.
                for (std::uint32_t t = 0; t < p; ++t) {
                    std::uint32_t s = (t >= r) ? t - r : t + p - r;
                    mpn_copyi(dst + static_cast<std::size_t>(t) * Ld,
                              src + static_cast<std::size_t>(s) * Ls, wsrc);
                }
                active[j] = wsrc;
            } else {
                std::size_t w = std::max(active[j], wsrc) + 1;
                if (w > Ld) w = Ld;
                if (wsrc > w) throw consistency_error("gp_fold: width bookkeeping violated");
                bool sawtop = false;
                for (std::uint32_t t = 0; t < p; ++t) {
                    std::uint32_t s = (t >= r) ? t - r : t + p - r;
                    mp_limb_t* d = dst + static_cast<std::size_t>(t) * Ld;
                    mp_limb_t cy = mpn_add(d, d, w, src + static_cast<std::size_t>(s) * Ls, wsrc);
                    if (cy) throw consistency_error("gp_fold: carry out of the binomial bound");
                    sawtop |= d[w - 1] != 0;
                }
                active[j] = sawtop ? w : w - 1;
                if (active[j] == 0) active[j] = 1;
            }
        }
    }

    // Unpack to canonical CycloBig coefficients c_j = (-1)^j e_j.
    std::vector<CycloBig> out;
    out.reserve(m + 1);
    for (std::uint32_t j = 0; j <= m; ++j) {
        std::vector<mpz_class> raw(p);
        const std::size_t L = width[j], A = std::max<std::size_t>(active[j], 1);
        const mp_limb_t* base = col[j].data();
        for (std::uint32_t t = 0; t < p; ++t) {
            mpz_import(raw[t].get_mpz_t(), A, -1, sizeof(mp_limb_t), 0, 0,
                       base + static_cast<std::size_t>(t) * L);
            if (j % 2 == 1) raw[t] = -raw[t];
        }
        col[j] = {};
        out.push_back(CycloBig::from_coeffs(p, std::move(raw)));
    }
    return out;
}

} // namespace detail

/**
 * Coefficients c_0, ..., c_m (ascending j, so c_j multiplies x^(m-j)) of the
 * monic product of (x - zeta_p^r) over the quadratic residues r -- or over
 * the non-residues -- as elements of Z[zeta_p].  The product is folded one
 * degree-1 factor at a time over the ascending exponent list.
 */
inline std::vector<CycloBig> gp_coefficients(const PrimeCtx& ctx,
                                             FactorSet which = FactorSet::Residues) {
    const auto& exps =
        (which == FactorSet::Residues) ? ctx.residues() : ctx.nonresidues();
    return detail::gp_fold(ctx, exps);
}

// ---------------------------------------------------------------------------
// Small fixed cyclotomic rings Z[x]/Phi_m for the evaluation orders.
// ---------------------------------------------------------------------------

/** Evaluation orders with phi(m) <= 4 supported by CycloSmall. */
inline bool cyclo_small_supported(std::uint32_t m) {
    return m == 3 || m == 4 || m == 5 || m == 6 || m == 8 || m == 10 || m == 12;
}

namespace detail {

inline const std::vector<long>& cyclo_poly(std::uint32_t m) {
    static const std::vector<long> phi3{1, 1, 1};
    static const std::vector<long> phi4{1, 0, 1};
    static const std::vector<long> phi5{1, 1, 1, 1, 1};
    static const std::vector<long> phi6{1, -1, 1};
    static const std::vector<long> phi8{1, 0, 0, 0, 1};
    static const std::vector<long> phi10{1, -1, 1, -1, 1};
    static const std::vector<long> phi12{1, 0, -1, 0, 1};
    switch (m) {
        case 3: return phi3;
        case 4: return phi4;
        case 5: return phi5;
        case 6: return phi6;
        case 8: return phi8;
        case 10: return phi10;
        case 12: return phi12;
        default: throw input_error("unsupported cyclotomic order m=" + std::to_string(m));
    }
}

/** In-place reduction of an ascending coefficient vector modulo monic Phi_m. */
inline void reduce_mod_cyclo(std::vector<mpz_class>& v, std::uint32_t m) {
    const auto& phi = cyclo_poly(m);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = v.size(); i-- > deg;) {
        if (v[i] == 0) continue;
        mpz_class lead = v[i];
        for (std::size_t k = 0; k < phi.size(); ++k)
            v[i - deg + k] -= lead * phi[k];
    }
    v.resize(deg);
}

} // namespace detail

/**
 * Element of Z[zeta_m] = Z[x]/Phi_m(x) for m in {3, 4, 5, 6, 8, 10, 12},
 * stored as phi(m) ascending coefficients on the power basis
 * 1, zeta, ..., zeta^(phi(m)-1).  Representation is unique, so equality is
 * coefficient equality.
 */
class CycloSmall {
  public:
    explicit CycloSmall(std::uint32_t m) : m_(check_m(m)), c_(detail::cyclo_poly(m).size() - 1) {}

    static CycloSmall integer(std::uint32_t m, const mpz_class& v) {
        CycloSmall z(m);
        z.c_[0] = v;
        return z;
    }

    /** zeta_m^e (e arbitrary, reduced mod m). */
    static CycloSmall monomial(std::uint32_t m, std::uint64_t e) {
        CycloSmall z(m);
        std::vector<mpz_class> raw(static_cast<std::size_t>(e % m) + 1);
        raw.back() = 1;
        detail::reduce_mod_cyclo(raw, m);
        z.c_ = std::move(raw);
        return z;
    }

    /** From exactly phi(m) ascending power-basis coefficients. */
    static CycloSmall from_coeffs(std::uint32_t m, std::vector<mpz_class> reduced) {
        CycloSmall z(m);
        if (reduced.size() != z.c_.size())
            throw input_error("CycloSmall::from_coeffs: expected phi(m) coefficients");
        z.c_ = std::move(reduced);
        return z;
    }

    std::uint32_t m() const { return m_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    friend CycloSmall operator+(const CycloSmall& a, const CycloSmall& b) {
        a.match(b);
        CycloSmall z(a.m_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) z.c_[i] = a.c_[i] + b.c_[i];
        return z;
    }

    friend CycloSmall operator-(const CycloSmall& a, const CycloSmall& b) {
        a.match(b);
        CycloSmall z(a.m_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) z.c_[i] = a.c_[i] - b.c_[i];
        return z;
    }

    CycloSmall operator-() const {
        CycloSmall z(m_);
        for (std::size_t i = 0; i < c_.size(); ++i) z.c_[i] = -c_[i];
        return z;
    }

    friend CycloSmall operator*(const CycloSmall& a, const CycloSmall& b) {
        a.match(b);
        std::vector<mpz_class> raw(2 * a.c_.size());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) raw[i + j] += a.c_[i] * b.c_[j];
        }
        detail::reduce_mod_cyclo(raw, a.m_);
        CycloSmall z(a.m_);
        z.c_ = std::move(raw);
        return z;
    }

    friend CycloSmall operator*(const mpz_class& s, const CycloSmall& a) {
        CycloSmall z(a.m_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) z.c_[i] = s * a.c_[i];
        return z;
    }

    friend bool operator==(const CycloSmall& a, const CycloSmall& b) {
        a.match(b);
        return a.c_ == b.c_;
    }

    std::string to_string() const {
        std::string out = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ",";
            out += c_[i].get_str();
        }
        return out + "]";
    }

  private:
    static std::uint32_t check_m(std::uint32_t m) {
        if (!cyclo_small_supported(m))
            throw input_error("CycloSmall: unsupported order m=" + std::to_string(m));
        return m;
    }

    void match(const CycloSmall& other) const {
        if (m_ != other.m_) throw input_error("CycloSmall: mixed orders");
    }

    std::uint32_t m_;
    std::vector<mpz_class> c_;
};

/** P(zeta_m^a) as an exact element of Z[zeta_m]; requires 0 <= a < m. */
inline CycloSmall eval_small(const IntPoly& P, std::uint32_t m, std::uint32_t a) {
    if (!cyclo_small_supported(m))
        throw input_error("eval_small: unsupported order m=" + std::to_string(m));
    if (a >= m) throw input_error("eval_small: exponent a must satisfy 0 <= a < m");
    std::vector<mpz_class> raw(m);
    for (std::size_t k = 0; k < P.coeffs().size(); ++k)
        raw[(a * k) % m] += P.coeffs()[k];
    detail::reduce_mod_cyclo(raw, m);
    return CycloSmall::from_coeffs(m, std::move(raw));
}

/**
 * Element (A + B*sqrt(p*))/2 of the compositum Q(zeta_m, sqrt(p*)), with A
 * and B in Z[zeta_m] and p* the signed prime.  The coefficientwise parity
 * A = B (mod 2) makes the half an algebraic integer; the constructor
 * enforces it.
 */
class QuadCyclo {
  public:
    QuadCyclo(CycloSmall A, CycloSmall B, long long p_signed)
        : A_(std::move(A)), B_(std::move(B)), p_signed_(p_signed) {
        if (A_.m() != B_.m()) throw input_error("QuadCyclo: mixed orders");
        for (std::size_t i = 0; i < A_.coeffs().size(); ++i)
            if (mpz_odd_p(mpz_class(A_.coeffs()[i] - B_.coeffs()[i]).get_mpz_t()))
                throw input_error("QuadCyclo: components must agree coefficientwise mod 2");
    }

    const CycloSmall& A() const { return A_; }
    const CycloSmall& B() const { return B_; }
    long long p_signed() const { return p_signed_; }

    bool is_one() const {
        return A_ == CycloSmall::integer(A_.m(), 2) && B_.is_zero();
    }

    friend bool operator==(const QuadCyclo& x, const QuadCyclo& y) {
        return x.p_signed_ == y.p_signed_ && x.A_ == y.A_ && x.B_ == y.B_;
    }

    std::string to_string() const {
        return "(" + A_.to_string() + " + " + B_.to_string() + "*sqrt(" +
               std::to_string(p_signed_) + "))/2";
    }

  private:
    CycloSmall A_, B_;
    long long p_signed_;
};

namespace detail {

inline CycloSmall halve_exact(const CycloSmall& v) {
    std::vector<mpz_class> half(v.coeffs().size());
    for (std::size_t i = 0; i < half.size(); ++i) {
        if (mpz_odd_p(v.coeffs()[i].get_mpz_t()))
            throw consistency_error("QuadCyclo product: expected even coefficient");
        half[i] = v.coeffs()[i] / 2;
    }
    return CycloSmall::from_coeffs(v.m(), std::move(half));
}

} // namespace detail

/** Exact product in Q(zeta_m, sqrt(p*)); the halves stay integral by parity. */
inline QuadCyclo quad_cyclo_mul(const QuadCyclo& x, const QuadCyclo& y) {
    if (x.p_signed() != y.p_signed()) throw input_error("quad_cyclo_mul: mixed quadratic fields");
    if (x.A().m() != y.A().m()) throw input_error("quad_cyclo_mul: mixed orders");
    mpz_class ps(static_cast<long>(x.p_signed()));
    CycloSmall twoA = x.A() * y.A() + ps * (x.B() * y.B());
    CycloSmall twoB = x.A() * y.B() + x.B() * y.A();
    return QuadCyclo(detail::halve_exact(twoA), detail::halve_exact(twoB), x.p_signed());
}

} // namespace qrpoly

#endif // QRPOLY_CYCLOTOMIC_HPP
