#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kuzlab/arith.hpp"

#include <cmath>

using namespace kuzlab;

static bool near(real a, real b, real tol) { return std::abs(a - b) <= tol; }

TEST_CASE("gcd") {
    CHECK(gcd_u64(0, 0) == 0);
    CHECK(gcd_u64(0, 5) == 5);
    CHECK(gcd_u64(5, 0) == 5);
    CHECK(gcd_u64(12, 18) == 6);
    CHECK(gcd_u64(17, 31) == 1);
    CHECK(gcd_u64(1000000007ULL * 3, 1000000007ULL * 5) == 1000000007ULL);
}

TEST_CASE("mod_inverse brute") {
    for (u64 c = 2; c <= 40; ++c) {
        for (u64 x = 1; x < c; ++x) {
            if (gcd_u64(x, c) != 1) {
                CHECK_THROWS_AS(mod_inverse(static_cast<i64>(x), c), NotCoprime);
                continue;
            }
            u64 inv = mod_inverse(static_cast<i64>(x), c);
            CHECK(inv < c);
            CHECK((x * inv) % c == 1);
        }
    }
    // negative representatives
    CHECK(mod_inverse(-1, 7) == 6);
    CHECK((mod_inverse(-3, 11) * 8) % 11 == 1); // -3 = 8 mod 11
    CHECK(mod_inverse(5, 1) == 0);
}

TEST_CASE("mobius known values and Mertens sums") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(2) == -1);
    CHECK(mobius(3) == -1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(mobius(210) == 1);

    auto tab = mobius_table(10000);
    long mert = 0;
    for (u64 n = 1; n <= 10000; ++n) {
        CHECK(tab[n] == mobius(n));
        mert += tab[n];
        if (n == 100) CHECK(mert == 1);
        if (n == 1000) CHECK(mert == 2);
    }
    CHECK(mert == -23);
}

TEST_CASE("divisors") {
    CHECK(divisor_count(1) == 1);
    CHECK(divisor_count(12) == 6);
    CHECK(divisor_count(60) == 12);
    auto d = divisors(28);
    std::vector<u64> want{1, 2, 4, 7, 14, 28};
    CHECK(d == want);
}

TEST_CASE("divisor sigma, complex exponent and cosine form") {
    CHECK(near(divisor_sigma(cplx(0), 12).real(), 6.0L, 1e-15L));
    CHECK(near(divisor_sigma(cplx(1), 12).real(), 28.0L, 1e-12L));
    for (real r : {0.3L, 2.0L, 17.5L}) {
        for (u64 n : {1ULL, 4ULL, 12ULL, 360ULL}) {
            cplx s = divisor_sigma(cplx(0, 2 * r), n) *
                     std::exp(cplx(0, -r * std::log(static_cast<real>(n))));
            // paired divisors make this exactly real
            CHECK(near(s.imag(), 0.0L, 1e-14L * std::abs(s)));
            CHECK(near(divisor_sigma_cos(r, n), s.real(), 1e-13L * (1 + std::abs(s))));
        }
    }
    CHECK(near(divisor_sigma_cos(1.7L, 1), 1.0L, 1e-18L));
}

// independent slow evaluation: inverse by search, plain summation
static real kloosterman_brute(u64 m, u64 n, u64 c) {
    if (c == 1) return 1;
    real s = 0;
    for (u64 x = 1; x < c; ++x) {
        if (gcd_u64(x, c) != 1) continue;
        u64 xb = 0;
        for (u64 y = 1; y < c; ++y)
            if ((x * y) % c == 1) {
                xb = y;
                break;
            }
        real arg = TWO_PI * static_cast<real>((m % c) * x % c + (n % c) * xb % c) /
                   static_cast<real>(c);
        s += std::cos(arg);
    }
    return s;
}

TEST_CASE("kloosterman vs brute force") {
    CHECK(kloosterman(1, 1, 1) == 1.0L);
    CHECK(near(kloosterman(1, 1, 2), 1.0L, 1e-15L));
    CHECK(near(kloosterman(1, 1, 3), -1.0L, 1e-14L));
    for (u64 c : {2ULL, 3ULL, 5ULL, 8ULL, 12ULL, 25ULL, 49ULL, 60ULL}) {
        for (auto [m, n] : {std::pair<u64, u64>{1, 1}, {2, 3}, {7, 11}, {4, 6}}) {
            CHECK(near(kloosterman(m, n, c), kloosterman_brute(m, n, c),
                       1e-12L * static_cast<real>(c)));
        }
    }
}

TEST_CASE("weil bound holds") {
    CHECK(near(weil_bound(1, 1, 4), divisor_count(4) * 2.0L, 1e-15L));
    u64 state = 12345;
    auto rnd = [&](u64 mod) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return (state >> 17) % mod + 1;
    };
    for (int i = 0; i < 200; ++i) {
        u64 m = rnd(50), n = rnd(50), c = rnd(400);
        CHECK(std::abs(kloosterman(m, n, c)) <= weil_bound(m, n, c) + 1e-9L);
    }
}

TEST_CASE("kloosterman_rows matches pointwise and is worker-invariant") {
    const u64 m_max = 6, n = 5, L = 40;
    auto rows1 = kloosterman_rows(m_max, n, L, 1);
    auto rows4 = kloosterman_rows(m_max, n, L, 4);
    REQUIRE(rows1.size() == m_max);
    for (u64 m = 1; m <= m_max; ++m) {
        REQUIRE(rows1[m - 1].size() == L);
        for (u64 l = 1; l <= L; ++l) {
            CHECK(near(rows1[m - 1][l - 1], kloosterman(m, n, l), 1e-11L * static_cast<real>(l)));
            CHECK(rows1[m - 1][l - 1] == rows4[m - 1][l - 1]);
        }
    }
}
