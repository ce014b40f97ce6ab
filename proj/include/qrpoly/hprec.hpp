#ifndef QRPOLY_HPREC_HPP
#define QRPOLY_HPREC_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "qrpoly/classfield.hpp"
#include "qrpoly/cyclotomic.hpp"
#include "qrpoly/errors.hpp"
#include "qrpoly/numthy.hpp"
#include "qrpoly/split.hpp"

namespace qrpoly {

/** Tri-state (plus not-applicable) outcome shared by all verification checks. */
enum class CheckStatus { Pass, Fail, Indeterminate, NA };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "Pass";
        case CheckStatus::Fail: return "Fail";
        case CheckStatus::Indeterminate: return "Indeterminate";
        case CheckStatus::NA: return "NotApplicable";
    }
    return "?";
}

/**
 * Binary floating-point real at an explicit precision.  Every binary
 * operation rounds correctly (to nearest) at the minimum precision of its
 * operands, so a result never advertises more accuracy than its inputs.
 */
class Real {
public:
    explicit Real(long prec) {
        if (prec < 2) throw input_error("Real: precision must be at least 2 bits");
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(Real o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of_si(long x, long prec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of_z(const mpz_class& x, long prec) {
        Real r(prec);
        mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    /** 2^e exactly. */
    static Real pow2(long e, long prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    long prec() const { return mpfr_get_prec(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double dbl() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string str(int digits = 25) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    mpfr_srcptr ptr() const { return v_; }
    mpfr_ptr mut() { return v_; }

private:
    mpfr_t v_;
};

inline long min_prec(const Real& a, const Real& b) { return std::min(a.prec(), b.prec()); }

inline Real operator+(const Real& a, const Real& b) {
    Real r(min_prec(a, b));
    mpfr_add(r.mut(), a.ptr(), b.ptr(), MPFR_RNDN);
    return r;
}
inline Real operator-(const Real& a, const Real& b) {
    Real r(min_prec(a, b));
    mpfr_sub(r.mut(), a.ptr(), b.ptr(), MPFR_RNDN);
    return r;
}
inline Real operator*(const Real& a, const Real& b) {
    Real r(min_prec(a, b));
    mpfr_mul(r.mut(), a.ptr(), b.ptr(), MPFR_RNDN);
    return r;
}
inline Real operator/(const Real& a, const Real& b) {
    Real r(min_prec(a, b));
    mpfr_div(r.mut(), a.ptr(), b.ptr(), MPFR_RNDN);
    return r;
}
inline Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.mut(), a.ptr(), MPFR_RNDN);
    return r;
}
inline bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.ptr(), b.ptr()) < 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.ptr(), b.ptr()) > 0; }

inline Real r_abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.mut(), a.ptr(), MPFR_RNDN);
    return r;
}
inline Real r_sqrt(const Real& a) {
    Real r(a.prec());
    mpfr_sqrt(r.mut(), a.ptr(), MPFR_RNDN);
    return r;
}
inline Real r_log(const Real& a) {
    Real r(a.prec());
    mpfr_log(r.mut(), a.ptr(), MPFR_RNDN);
    return r;
}
/** Exact scaling by 2^e. */
inline Real r_scale2(const Real& a, long e) {
    Real r(a.prec());
    mpfr_mul_2si(r.mut(), a.ptr(), e, MPFR_RNDN);
    return r;
}
inline Real r_mul_si(const Real& a, long k) {
    Real r(a.prec());
    mpfr_mul_si(r.mut(), a.ptr(), k, MPFR_RNDN);
    return r;
}
/** Round (or pad) a value to a target precision. */
inline Real r_round_to(const Real& a, long prec) {
    Real r(prec);
    mpfr_set(r.mut(), a.ptr(), MPFR_RNDN);
    return r;
}

/** Complex value at an explicit precision (componentwise Real). */
struct BigC {
    Real re, im;

    BigC(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    static BigC zero(long prec) { return {Real(prec), Real(prec)}; }
    static BigC one(long prec) { return {Real::of_si(1, prec), Real(prec)}; }

    long prec() const { return min_prec(re, im); }
    std::string str(int digits = 25) const { return "(" + re.str(digits) + ", " + im.str(digits) + ")"; }
};

inline BigC operator+(const BigC& a, const BigC& b) { return {a.re + b.re, a.im + b.im}; }
inline BigC operator-(const BigC& a, const BigC& b) { return {a.re - b.re, a.im - b.im}; }
inline BigC operator*(const BigC& a, const BigC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline BigC c_conj(const BigC& a) { return {a.re, -a.im}; }
inline Real c_abs(const BigC& a) {
    Real r(a.prec());
    mpfr_hypot(r.mut(), a.re.ptr(), a.im.ptr(), MPFR_RNDN);
    return r;
}
inline BigC c_round_to(const BigC& a, long prec) {
    return {r_round_to(a.re, prec), r_round_to(a.im, prec)};
}

/**
 * e^{2 pi i a/m} to prec bits.  Quarter turns (reduced denominator 1, 2, 4)
 * are returned exactly; everything else goes through sin/cos of the reduced
 * angle computed with 64 guard bits.
 */
inline BigC root_of_unity(unsigned long m, unsigned long a, long prec) {
    if (m < 1) throw input_error("root_of_unity: m must be >= 1");
    if (a >= m) throw input_error("root_of_unity: need 0 <= a < m");
    const unsigned long g = std::gcd(a == 0 ? m : a, m);
    const unsigned long q = m / g;
    const unsigned long r = (a / g) % q;
    if (q == 1) return BigC::one(prec);
    if (q == 2) return {Real::of_si(-1, prec), Real(prec)};
    if (q == 4) return {Real(prec), Real::of_si(r == 1 ? 1 : -1, prec)};

    const long w = prec + 64;
    Real theta(w);
    mpfr_const_pi(theta.mut(), MPFR_RNDN);
    mpfr_mul_ui(theta.mut(), theta.ptr(), 2 * r, MPFR_RNDN);
    mpfr_div_ui(theta.mut(), theta.ptr(), q, MPFR_RNDN);
    Real c(w), s(w);
    mpfr_sin_cos(s.mut(), c.mut(), theta.ptr(), MPFR_RNDN);
    return {r_round_to(c, prec), r_round_to(s, prec)};
}

/**
 * Direct product over the residue roots: prod_{r in R} (z - e^{2 pi i r/p})
 * at precision prec, accumulated in ascending r with 64 guard bits.
 */
inline BigC gp_eval_numeric(const PrimeCtx& ctx, const BigC& z, long prec) {
    const long w = prec + 64;
    const BigC zw = c_round_to(z, w);
    Real two_pi(w);
    mpfr_const_pi(two_pi.mut(), MPFR_RNDN);
    mpfr_mul_2si(two_pi.mut(), two_pi.ptr(), 1, MPFR_RNDN);
    Real inv_p(w);
    mpfr_div_ui(inv_p.mut(), two_pi.ptr(), static_cast<unsigned long>(ctx.p()), MPFR_RNDN);

    BigC acc = BigC::one(w);
    Real theta(w), c(w), s(w);
    for (std::uint32_t r : ctx.residues()) {
        mpfr_mul_ui(theta.mut(), inv_p.ptr(), r, MPFR_RNDN);
        mpfr_sin_cos(s.mut(), c.mut(), theta.ptr(), MPFR_RNDN);
        acc = acc * (zw - BigC{c, s});
    }
    return c_round_to(acc, prec);
}

/** Numeric embedding of a small-cyclotomic value: sum of c_k e^{2 pi i k/m}. */
inline BigC embed_small(const CycloSmall& v, long prec) {
    const long w = prec + 64;
    const unsigned long m = v.m();
    BigC acc = BigC::zero(w);
    for (std::size_t k = 0; k < v.coeffs().size(); ++k) {
        const mpz_class& ck = v.coeffs()[k];
        if (ck == 0) continue;
        BigC root = root_of_unity(m, static_cast<unsigned long>(k), w);
        Real cz = Real::of_z(ck, w);
        acc = acc + BigC{root.re * cz, root.im * cz};
    }
    return c_round_to(acc, prec);
}

/**
 * G_p(zeta_m^a) through the exact split (V + U sqrt(p'))/2, embedded
 * numerically.  Serves as the independent oracle against gp_eval_numeric.
 */
inline BigC gp_eval_via_split(const PrimeCtx& ctx, const SplitPair& sp, unsigned long m,
                              unsigned long a, long prec) {
    if (a >= m) throw input_error("gp_eval_via_split: need 0 <= a < m");
    const long w = prec + 64;
    BigC vnum = embed_small(eval_small(sp.V, m, a), w);
    BigC unum = embed_small(eval_small(sp.U, m, a), w);
    Real sp_r = r_sqrt(Real::of_si(static_cast<long>(ctx.p()), w));
    // sqrt(p') is sqrt(p) for p = 1 (mod 4) and i sqrt(p) for p = 3 (mod 4).
    BigC root_pstar = (ctx.p() % 4 == 1) ? BigC{sp_r, Real(w)} : BigC{Real(w), sp_r};
    BigC g = vnum + root_pstar * unum;
    return c_round_to(BigC{r_scale2(g.re, -1), r_scale2(g.im, -1)}, prec);
}

/** Verdict of a certified sign decision. */
enum class Verdict { Positive, Negative, ZeroIndistinguishable, NonReal };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Positive: return "Positive";
        case Verdict::Negative: return "Negative";
        case Verdict::ZeroIndistinguishable: return "ZeroIndistinguishable";
        case Verdict::NonReal: return "NonReal";
    }
    return "?";
}

struct SignCert {
    Verdict verdict;
    double margin = 0.0;   // magnitude of the decisive quantity
    long prec_used = 0;
};

/**
 * Classify a computed complex value as certainly positive real, negative
 * real, non-real, or too close to zero to call, with tolerance
 * 2^{-prec/2} relative to |v| (and the same amount as an absolute floor
 * below which no sign is trusted).
 */
inline SignCert positivity_certificate(const BigC& v) {
    const long pr = v.prec();
    SignCert cert;
    cert.prec_used = pr;
    Real scale = c_abs(v);
    Real floor_tol = Real::pow2(-(pr / 2), pr);
    if (!(scale > floor_tol)) {
        cert.verdict = Verdict::ZeroIndistinguishable;
        cert.margin = scale.dbl();
        return cert;
    }
    Real tol = r_scale2(scale, -(pr / 2));
    Real abs_im = r_abs(v.im);
    if (!(abs_im < tol)) {
        cert.verdict = Verdict::NonReal;
        cert.margin = abs_im.dbl();
        return cert;
    }
    if (v.re > tol) {
        cert.verdict = Verdict::Positive;
        cert.margin = v.re.dbl();
        return cert;
    }
    Real neg_tol = -tol;
    if (v.re < neg_tol) {
        cert.verdict = Verdict::Negative;
        cert.margin = r_abs(v.re).dbl();
        return cert;
    }
    cert.verdict = Verdict::ZeroIndistinguishable;
    cert.margin = scale.dbl();
    return cert;
}

/** Outcome of the unit/class-number identity check at omega. */
struct G2Cert {
    CheckStatus status = CheckStatus::Indeterminate;
    double lhs = 0.0;      // -2 ln |G_p(omega)|
    double rhs = 0.0;      // h(3p) ln eps_{3p}
    double delta = 0.0;
    long prec_used = 0;
};

/**
 * Checks -2 ln|G_p(omega)| = h(3p) ln eps_{3p} at precision prec against
 * threshold 2^{-prec/4}.  A clear pass needs delta < threshold/16; a clear
 * fail needs delta >= 16*threshold; the ambiguous band escalates by
 * doubling the precision up to prec_cap, after which the verdict is
 * Indeterminate.
 */
inline G2Cert g2_identity_check(const PrimeCtx& ctx, long prec, long prec_cap = 1024) {
    const std::uint64_t p = ctx.p();
    if (p % 4 != 3 || p <= 3)
        throw input_error("g2_identity_check: requires p = 3 (mod 4), p > 3");
    if (prec < 53) throw input_error("g2_identity_check: precision must be >= 53");

    const long long D = 3ll * static_cast<long long>(p);
    QuadInt eps = fundamental_unit(D);
    long h = class_number_pos(D);

    G2Cert cert;
    for (long cur = prec;;) {
        const long w = cur + 64;
        BigC omega = root_of_unity(3, 1, w);
        BigC g = gp_eval_numeric(ctx, omega, w);
        Real lhs = r_mul_si(r_log(c_abs(g)), -2);
        Real unit_val = r_scale2(Real::of_z(eps.a, w) +
                                 Real::of_z(eps.b, w) * r_sqrt(Real::of_si(D, w)), -1);
        Real rhs = r_mul_si(r_log(unit_val), h);
        Real delta = r_abs(lhs - rhs);
        Real thr = Real::pow2(-(cur / 4), w);

        cert.lhs = lhs.dbl();
        cert.rhs = rhs.dbl();
        cert.delta = delta.dbl();
        cert.prec_used = cur;

        if (delta < r_scale2(thr, -4)) {
            cert.status = CheckStatus::Pass;
            return cert;
        }
        if (!(delta < r_scale2(thr, 4))) {
            cert.status = CheckStatus::Fail;
            return cert;
        }
        if (cur >= prec_cap) {
            cert.status = CheckStatus::Indeterminate;
            return cert;
        }
        cur = std::min(2 * cur, prec_cap);
    }
}

} // namespace qrpoly

#endif // QRPOLY_HPREC_HPP
