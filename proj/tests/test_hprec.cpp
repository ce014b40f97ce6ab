#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "qrpoly/hprec.hpp"
#include "qrpoly/split.hpp"

using namespace qrpoly;

namespace {

double log2_abs(const Real& r) {
    double d = std::fabs(r.dbl());
    return d == 0.0 ? -10000.0 : std::log2(d);
}

} // namespace

TEST_CASE("reals carry the minimum precision of operands", "[hprec]") {
    Real a = Real::of_si(1, 128);
    Real b = Real::of_si(3, 64);
    CHECK((a + b).prec() == 64);
    CHECK((a * b).prec() == 64);
    CHECK((a / b).prec() == 64);
    CHECK(Real::pow2(-10, 53).dbl() == Catch::Approx(1.0 / 1024.0));
    CHECK(Real::of_z(mpz_class("123456789012345678901234567890"), 128).str(5).substr(0, 3) == "1.2");
    CHECK_THROWS_AS(Real(1), input_error);
}

TEST_CASE("roots of unity hit quarter turns exactly and the rest closely", "[hprec]") {
    BigC i4 = root_of_unity(4, 1, 64);
    CHECK(i4.re.sign() == 0);
    CHECK(i4.im.dbl() == 1.0);
    BigC m1 = root_of_unity(2, 1, 64);
    CHECK(m1.re.dbl() == -1.0);
    CHECK(m1.im.sign() == 0);
    CHECK(root_of_unity(1, 0, 64).re.dbl() == 1.0);
    CHECK(root_of_unity(8, 6, 64).im.dbl() == -1.0);   // reduces to -i

    BigC w = root_of_unity(3, 1, 128);
    CHECK(std::fabs(w.re.dbl() + 0.5) < 1e-30);
    CHECK(w.im.dbl() == Catch::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));

    // cos 36 degrees = (1 + sqrt 5)/4, a golden-ratio quarter.
    BigC z10 = root_of_unity(10, 1, 128);
    Real expect = r_scale2(Real::of_si(1, 192) + r_sqrt(Real::of_si(5, 192)), -2);
    CHECK(log2_abs(z10.re - expect) < -120);

    for (unsigned long m : {3ul, 5ul, 6ul, 10ul, 12ul}) {
        for (unsigned long a = 0; a < m; ++a) {
            BigC z = root_of_unity(m, a, 128);
            CHECK(log2_abs(c_abs(z) - Real::of_si(1, 128)) < -100);
            BigC pw = BigC::one(128);
            for (unsigned long k = 0; k < m; ++k) pw = pw * z;
            CHECK(log2_abs(pw.re - Real::of_si(1, 128)) < -90);
            CHECK(log2_abs(pw.im) < -90);
        }
    }

    CHECK_THROWS_AS(root_of_unity(0, 0, 64), input_error);
    CHECK_THROWS_AS(root_of_unity(4, 4, 64), input_error);
    CHECK_THROWS_AS(root_of_unity(5, 7, 64), input_error);
}

TEST_CASE("numeric products match the closed values", "[hprec]") {
    // p=7 at omega: i (sqrt 7 - sqrt 3)/2.
    PrimeCtx c7(7);
    BigC g7 = gp_eval_numeric(c7, root_of_unity(3, 1, 192), 192);
    Real expect_im = r_scale2(r_sqrt(Real::of_si(7, 256)) - r_sqrt(Real::of_si(3, 256)), -1);
    CHECK(log2_abs(g7.re) < -150);
    CHECK(log2_abs(g7.im - expect_im) < -150);
    CHECK(g7.im.dbl() == Catch::Approx(0.456850).epsilon(1e-5));

    // p=5 at i: i (1 - sqrt 5)/2.
    PrimeCtx c5(5);
    BigC g5 = gp_eval_numeric(c5, root_of_unity(4, 1, 192), 192);
    Real expect5 = r_scale2(Real::of_si(1, 256) - r_sqrt(Real::of_si(5, 256)), -1);
    CHECK(log2_abs(g5.re) < -150);
    CHECK(log2_abs(g5.im - expect5) < -150);
    CHECK(g5.im.dbl() == Catch::Approx(-0.618034).epsilon(1e-5));

    // At z = 1 the residue and non-residue products multiply to p.
    PrimeCtx ctx(7);
    BigC g = gp_eval_numeric(ctx, BigC::one(192), 192);
    BigC gn = BigC::one(192);
    for (std::uint32_t r : ctx.nonresidues())
        gn = gn * (BigC::one(192) - root_of_unity(7, r, 192));
    BigC total = g * gn;
    CHECK(log2_abs(total.re - Real::of_si(7, 192)) < -130);
    CHECK(log2_abs(total.im) < -130);
}

TEST_CASE("direct product agrees with the exact-split embedding", "[hprec]") {
    const long prec = 128;
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        PrimeCtx ctx(p);
        SplitPair sp = split_uv(ctx);
        for (unsigned long m : {3ul, 4ul, 5ul, 6ul, 8ul, 10ul, 12ul}) {
            for (unsigned long a : {0ul, 1ul, m - 1}) {
                INFO("p = " << p << " m = " << m << " a = " << a);
                BigC via_product = gp_eval_numeric(ctx, root_of_unity(m, a, prec), prec);
                BigC via_split = gp_eval_via_split(ctx, sp, m, a, prec);
                Real diff = c_abs(via_product - via_split);
                Real scale = c_abs(via_split) + Real::of_si(1, prec);
                CHECK(log2_abs(diff / scale) < -64);
            }
        }
    }
    PrimeCtx c7(7);
    SplitPair sp7 = split_uv(c7);
    CHECK_THROWS_AS(gp_eval_via_split(c7, sp7, 4, 5, 128), input_error);
}

TEST_CASE("positivity certificates classify sign with margins", "[hprec]") {
    SignCert pos = positivity_certificate(BigC::one(128));
    CHECK(pos.verdict == Verdict::Positive);
    CHECK(pos.margin == Catch::Approx(1.0));
    CHECK(pos.prec_used == 128);

    SignCert nonreal = positivity_certificate(BigC{Real(128), Real::of_si(1, 128)});
    CHECK(nonreal.verdict == Verdict::NonReal);

    // A typical certified sign target: (sqrt 5 - 1)/2 with 2^-80 imaginary dust.
    Real re = r_scale2(r_sqrt(Real::of_si(5, 128)) - Real::of_si(1, 128), -1);
    SignCert golden = positivity_certificate(BigC{re, Real::pow2(-80, 128)});
    CHECK(golden.verdict == Verdict::Positive);
    CHECK(golden.margin == Catch::Approx((std::sqrt(5.0) - 1) / 2));

    SignCert neg = positivity_certificate(BigC{Real::of_si(-2, 128), Real::pow2(-100, 128)});
    CHECK(neg.verdict == Verdict::Negative);
    CHECK(neg.margin == Catch::Approx(2.0));

    SignCert zero = positivity_certificate(BigC{Real::pow2(-70, 128), Real(128)});
    CHECK(zero.verdict == Verdict::ZeroIndistinguishable);

    CHECK(std::string(to_string(Verdict::Positive)) == "Positive");
    CHECK(std::string(to_string(Verdict::ZeroIndistinguishable)) == "ZeroIndistinguishable");
}

TEST_CASE("unit identity at omega passes with tiny residuals", "[hprec]") {
    PrimeCtx c7(7);
    G2Cert g7 = g2_identity_check(c7, 192);
    CHECK(g7.status == CheckStatus::Pass);
    CHECK(g7.delta < 1e-30);
    CHECK(g7.lhs == Catch::Approx(1.566799).epsilon(1e-5));
    CHECK(g7.rhs == Catch::Approx(std::log((5 + std::sqrt(21.0)) / 2)).epsilon(1e-9));
    CHECK(g7.prec_used == 192);

    PrimeCtx c11(11);
    G2Cert g11 = g2_identity_check(c11, 128);
    CHECK(g11.status == CheckStatus::Pass);
    CHECK(g11.rhs == Catch::Approx(std::log(23 + 4 * std::sqrt(33.0))).epsilon(1e-9));
    CHECK(g11.lhs == Catch::Approx(3.8281).epsilon(1e-3));

    PrimeCtx c23(23);
    CHECK(g2_identity_check(c23, 128).status == CheckStatus::Pass);

    PrimeCtx c107(107);   // the prime where least-solution and unit-power pairs split
    CHECK(g2_identity_check(c107, 128).status == CheckStatus::Pass);

    PrimeCtx c13(13);
    CHECK_THROWS_AS(g2_identity_check(c13, 128), input_error);
    CHECK_THROWS_AS(g2_identity_check(c7, 20), input_error);

    CHECK(std::string(to_string(CheckStatus::Pass)) == "Pass");
    CHECK(std::string(to_string(CheckStatus::NA)) == "NotApplicable");
}

TEST_CASE("doubling precision at least doubles the error exponent headroom", "[hprec]") {
    PrimeCtx ctx(29);
    BigC ref = gp_eval_numeric(ctx, root_of_unity(10, 1, 320), 320);
    BigC at64 = gp_eval_numeric(ctx, root_of_unity(10, 1, 64), 64);
    BigC at128 = gp_eval_numeric(ctx, root_of_unity(10, 1, 128), 128);
    double e64 = log2_abs(c_abs(c_round_to(at64, 320) - ref));
    double e128 = log2_abs(c_abs(c_round_to(at128, 320) - ref));
    CHECK(e64 < -50);
    CHECK(e128 < e64 - 30);
}
