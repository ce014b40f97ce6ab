// Tests for the elementary number-theory layer: primality, Legendre symbols,
// residue tables, and the exact residue counting/summation helpers.

#include <catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "qrpoly/numthy.hpp"

using namespace qrpoly;

namespace {

// Independent oracle: trial division.
bool is_prime_oracle(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Independent oracle: (a/p) by exhaustive enumeration of the squares mod p.
int legendre_oracle(long long a, std::uint64_t p) {
    long long r = ((a % static_cast<long long>(p)) + static_cast<long long>(p)) %
                  static_cast<long long>(p);
    if (r == 0) return 0;
    for (std::uint64_t k = 1; k < p; ++k)
        if (k * k % p == static_cast<std::uint64_t>(r)) return 1;
    return -1;
}

} // namespace

TEST_CASE("is_prime matches trial division and handles edge cases") {
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(21));
    CHECK(is_prime(1009));
    for (std::uint64_t n = 2; n <= 5000; ++n)
        CHECK(is_prime(n) == is_prime_oracle(n));
    // Large spot checks (Mersenne exponent cases).
    CHECK(is_prime((1ull << 61) - 1));
    CHECK_FALSE(is_prime((1ull << 59) - 1));
    CHECK_THROWS_AS(is_prime(1), input_error);
    CHECK_THROWS_AS(is_prime(0), input_error);
}

TEST_CASE("primes_in_range enumerates inclusively") {
    auto ps = primes_in_range(7, 23);
    CHECK(ps == std::vector<std::uint64_t>{7, 11, 13, 17, 19, 23});
    CHECK(primes_in_range(24, 28).empty());
}

TEST_CASE("legendre: pinned values and oracle agreement") {
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 7) == -1);
    CHECK(legendre(10, 29) == -1);
    CHECK(legendre(14, 7) == 0);
    for (std::uint64_t p : primes_in_range(3, 61))
        for (long long a = -30; a <= 30; ++a)
            CHECK(legendre(a, p) == legendre_oracle(a, p));
}

TEST_CASE("legendre: reciprocity route and Euler route agree") {
    for (std::uint64_t p : primes_in_range(3, 311))
        for (long long a : {-7ll, -2ll, -1ll, 1ll, 2ll, 3ll, 5ll, 17ll, 1000003ll})
            CHECK(legendre(a, p) == legendre_euler(a, p));
}

TEST_CASE("legendre: multiplicativity and unit square") {
    for (std::uint64_t p : primes_in_range(3, 97)) {
        for (long long a = 1; a < 40; ++a) {
            for (long long b = 1; b < 40; ++b)
                CHECK(legendre(a * b, p) == legendre(a, p) * legendre(b, p));
            if (a % static_cast<long long>(p) != 0)
                CHECK(legendre(a, p) * legendre(a, p) == 1);
        }
    }
}

TEST_CASE("legendre rejects even or composite moduli") {
    CHECK_THROWS_AS(legendre(3, 2), input_error);
    CHECK_THROWS_AS(legendre(3, 15), input_error);
    CHECK_THROWS_AS(legendre_euler(3, 21), input_error);
}

TEST_CASE("PrimeCtx: residue tables") {
    PrimeCtx c11(11);
    CHECK(c11.residues() == std::vector<std::uint32_t>{1, 3, 4, 5, 9});
    CHECK(c11.nonresidues() == std::vector<std::uint32_t>{2, 6, 7, 8, 10});
    CHECK(c11.p_signed() == -11);

    PrimeCtx c7(7);
    CHECK(c7.residues() == std::vector<std::uint32_t>{1, 2, 4});
    CHECK(c7.smallest_nonresidue() == 3);

    PrimeCtx c29(29);
    CHECK(c29.residues().size() == 14);
    CHECK_FALSE(c29.is_residue(2));
    CHECK(c29.p_signed() == 29);

    CHECK_THROWS_AS(PrimeCtx(2), input_error);
    CHECK_THROWS_AS(PrimeCtx(15), input_error);
}

TEST_CASE("PrimeCtx invariants across a range of primes") {
    for (std::uint64_t p : primes_in_range(3, 997)) {
        PrimeCtx c(p);
        CHECK(c.residues().size() == (p - 1) / 2);
        CHECK(c.nonresidues().size() == (p - 1) / 2);
        // p_signed is +-p and = 1 mod 4.
        CHECK((c.p_signed() == static_cast<long long>(p) ||
               c.p_signed() == -static_cast<long long>(p)));
        long long m4 = ((c.p_signed() % 4) + 4) % 4;
        CHECK(m4 == 1);
        // R and N partition [1, p-1].
        std::size_t ir = 0, in = 0;
        for (std::uint32_t v = 1; v < p; ++v) {
            bool inR = ir < c.residues().size() && c.residues()[ir] == v;
            bool inN = in < c.nonresidues().size() && c.nonresidues()[in] == v;
            CHECK(inR != inN);
            if (inR) ++ir;
            if (inN) ++in;
        }
    }
}

TEST_CASE("count_qr_below: exact rational thresholds") {
    PrimeCtx c5(5);
    CHECK(count_qr_below(c5, 5, 4) == 1);   // residues of 5 below 5/4: just 1
    PrimeCtx c7(7);
    CHECK(count_qr_below(c7, 7, 1) == 3);   // all residues lie below p
    PrimeCtx c11(11);
    CHECK(count_qr_below(c11, 11, 3) == 2); // {1, 3} below 11/3
    CHECK_THROWS_AS(count_qr_below(c11, 0, 1), input_error);
    CHECK_THROWS_AS(count_qr_below(c11, -3, 2), input_error);
    CHECK_THROWS_AS(count_qr_below(c11, 1, 0), input_error);
    CHECK_THROWS_AS(count_qr_below(c11, 12, 1), input_error);

    // Counting with bound p returns all (p-1)/2 residues.
    for (std::uint64_t p : primes_in_range(3, 200)) {
        PrimeCtx c(p);
        CHECK(count_qr_below(c, static_cast<long long>(p), 1) == (p - 1) / 2);
    }
}

TEST_CASE("count_nqr_upto: pinned values and bounds") {
    PrimeCtx c29(29);
    CHECK(count_nqr_upto(c29, 3) == 2);     // {2, 3}
    PrimeCtx c61(61);
    CHECK(count_nqr_upto(c61, 7) == 3);     // {2, 6, 7}
    PrimeCtx c7(7);
    CHECK(count_nqr_upto(c7, 1) == 0);
    CHECK_THROWS_AS(count_nqr_upto(c7, 0), input_error);
    CHECK_THROWS_AS(count_nqr_upto(c7, 7), input_error);
}

TEST_CASE("residue_fraction_sum: pinned values and the mod-4 pattern") {
    CHECK(residue_fraction_sum(PrimeCtx(13)) == mpq_class(3));
    CHECK(residue_fraction_sum(PrimeCtx(7)) == mpq_class(1));
    CHECK(residue_fraction_sum(PrimeCtx(23)) == mpq_class(4));
    // For p = 1 (mod 4), residues pair r <-> p-r, so the sum is exactly (p-1)/4.
    for (std::uint64_t p : primes_in_range(5, 499)) {
        if (p % 4 != 1) continue;
        mpq_class expect(static_cast<unsigned long>((p - 1) / 4));
        CHECK(residue_fraction_sum(PrimeCtx(p)) == expect);
    }
}
