#ifndef QRPOLY_SPLIT_HPP
#define QRPOLY_SPLIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qrpoly/cyclotomic.hpp"
#include "qrpoly/errors.hpp"
#include "qrpoly/intpoly.hpp"
#include "qrpoly/numthy.hpp"

namespace qrpoly {

/**
 * The integer-polynomial pair (V, U) with
 *
 *     prod over residues     (x - zeta^r) = (V(x) + U(x)*g) / 2,
 *     prod over non-residues (x - zeta^n) = (V(x) - U(x)*g) / 2,
 *
 * where g is the quadratic Gauss sum (g^2 = p*, the signed prime).  V is
 * monic-doubled: deg V = (p-1)/2 with leading coefficient 2; deg U < deg V;
 * and V = U (mod 2) coefficientwise.
 */
struct SplitPair {
    std::uint64_t p = 0;
    IntPoly V;
    IntPoly U;
};

/**
 * Computes the split by folding the residue product in Z[zeta_p] and then
 * projecting each coefficient c_j onto the quadratic subfield:
 *
 *   - a_j = c_j + sigma(c_j) must canonicalize to a rational integer, where
 *     sigma is the Galois action zeta -> zeta^s for the smallest
 *     non-residue s (any non-residue generates the right coset; smallest is
 *     deterministic);
 *   - 2*c_j - a_j must be an exact integer multiple b_j of the Gauss sum,
 *     verified over the full vector;
 *   - a_j = b_j (mod 2);
 *   - the sigma-conjugate coefficient (the non-residue product side) must
 *     equal (a_j - b_j*g)/2.
 *
 * Any violation raises consistency_error: these are theorems, so a failure
 * means an arithmetic bug, not bad input.
 */
inline SplitPair split_uv(const PrimeCtx& ctx) {
    const std::uint32_t p = static_cast<std::uint32_t>(ctx.p());
    const std::uint32_t m = (p - 1) / 2;
    const std::uint32_t s = ctx.smallest_nonresidue();
    const CycloBig g = gauss_sum_vector(p);

    std::vector<CycloBig> c = gp_coefficients(ctx, FactorSet::Residues);

    std::vector<mpz_class> vcoef(m + 1), ucoef(m + 1);
    for (std::uint32_t j = 0; j <= m; ++j) {
        const CycloBig sig = c[j].galois(s);

        CycloBig sum = c[j] + sig;
        if (!sum.is_rational())
            throw consistency_error("split_uv: c_j + sigma(c_j) is not rational at j=" +
                                    std::to_string(j));
        mpz_class a = sum.coeff(0);

        // 2 c_j - a_j should be b_j * g; read b_j off the constant entry
        // (|g_0| = 1 in canonical form) and verify the whole vector.
        CycloBig d = mpz_class(2) * c[j] - CycloBig::integer(p, a);
        mpz_class b = (g.coeff(0) == 1) ? d.coeff(0) : -d.coeff(0);
        if (!(d == b * g))
            throw consistency_error("split_uv: 2c_j - a_j is not a multiple of the Gauss sum at j=" +
                                    std::to_string(j));

        if (mpz_odd_p(mpz_class(a - b).get_mpz_t()))
            throw consistency_error("split_uv: parity a_j = b_j (mod 2) fails at j=" +
                                    std::to_string(j));

        // Non-residue-side coefficient: sigma(c_j) must equal (a_j - b_j g)/2.
        if (!(mpz_class(2) * sig == CycloBig::integer(p, a) - b * g))
            throw consistency_error("split_uv: sigma conjugate is not (a_j - b_j g)/2 at j=" +
                                    std::to_string(j));

        // c_j multiplies x^(m-j).
        vcoef[m - j] = a;
        ucoef[m - j] = b;
    }

    SplitPair out;
    out.p = p;
    out.V = IntPoly(std::move(vcoef));
    out.U = IntPoly(std::move(ucoef));

    if (out.V.degree() != static_cast<long>(m) || out.V.coeff(m) != 2)
        throw consistency_error("split_uv: V must have degree (p-1)/2 with leading coefficient 2");
    if (out.U.degree() >= static_cast<long>(m))
        throw consistency_error("split_uv: U must have degree below (p-1)/2");
    return out;
}

/**
 * Norm identity V^2 - p* U^2 = 4 (x^p - 1)/(x - 1), equivalent to the
 * product of the residue and non-residue halves recovering all nontrivial
 * p-th roots of unity.
 */
inline bool norm_identity_holds(const PrimeCtx& ctx, const SplitPair& sp) {
    IntPoly lhs = sp.V * sp.V - mpz_class(static_cast<long>(ctx.p_signed())) * (sp.U * sp.U);
    IntPoly rhs = mpz_class(4) * IntPoly::geometric(static_cast<std::size_t>(ctx.p()));
    return lhs == rhs;
}

/**
 * Reciprocity relations for p > 3, as exact coefficient statements over the
 * degree window [0, (p-1)/2]:  U is palindromic, and V reversed picks up
 * the sign (-1)^((p-1)/2).
 */
inline bool reciprocity_holds(const PrimeCtx& ctx, const SplitPair& sp) {
    if (ctx.p() <= 3) throw input_error("reciprocity_holds: requires p > 3");
    const std::size_t m = (ctx.p() - 1) / 2;
    IntPoly urev = sp.U.reversed(m);
    if (!(urev == sp.U)) return false;
    IntPoly vrev = sp.V.reversed(m);
    IntPoly expect = (m % 2 == 0) ? sp.V : -sp.V;
    return vrev == expect;
}

} // namespace qrpoly

#endif // QRPOLY_SPLIT_HPP
