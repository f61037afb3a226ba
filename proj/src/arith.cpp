#include "kuzlab/arith.hpp"

#include <cmath>
#include <thread>

namespace kuzlab {

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 mod_inverse(i64 x, u64 c) {
    if (c == 0) throw NotCoprime("modulus must be positive");
    if (c == 1) return 0;
    i64 m = static_cast<i64>(c);
    i64 a = x % m;
    if (a < 0) a += m;
    if (gcd_u64(static_cast<u64>(a), c) != 1)
        throw NotCoprime("inverse does not exist: gcd(" + std::to_string(x) +
                         ", " + std::to_string(c) + ") > 1");
    // extended Euclid on (a, m); works for composite moduli
    i64 r0 = a, r1 = m, s0 = 1, s1 = 0;
    while (r1) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        i64 s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    i64 inv = s0 % m;
    if (inv < 0) inv += m;
    return static_cast<u64>(inv);
}

int mobius(u64 n) {
    if (n == 1) return 1;
    int k = 0;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++k;
        }
    }
    if (n > 1) ++k;
    return (k & 1) ? -1 : 1;
}

u64 divisor_count(u64 n) {
    u64 d = 1;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            u64 e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            d *= e + 1;
        }
    }
    if (n > 1) d *= 2;
    return d;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> small, large;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (u64 p = 2; p <= limit; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (u64 q = p * p; q <= limit; q += p) comp[q] = true;
    }
    return out;
}

std::vector<int> mobius_table(u64 limit) {
    std::vector<int> mu(limit + 1, 1);
    std::vector<bool> comp(limit + 1, false);
    for (u64 p = 2; p <= limit; ++p) {
        if (comp[p]) continue;
        for (u64 q = p; q <= limit; q += p) {
            if (q > p) comp[q] = true;
            mu[q] = -mu[q];
        }
        u64 p2 = p * p;
        for (u64 q = p2; q <= limit; q += p2) mu[q] = 0;
    }
    if (limit >= 0) mu[0] = 0;
    return mu;
}

cplx divisor_sigma(cplx a, u64 n) {
    cplx s = 0;
    for (u64 d : divisors(n)) s += std::exp(a * std::log(static_cast<real>(d)));
    return s;
}

real divisor_sigma_cos(real r, u64 n) {
    real s = 0;
    const real ln = std::log(static_cast<real>(n));
    for (u64 d : divisors(n))
        s += std::cos(r * (2 * std::log(static_cast<real>(d)) - ln));
    return s;
}

real kloosterman(u64 m, u64 n, u64 c) {
    if (c == 0 || m == 0 || n == 0) throw Error("kloosterman: m,n,c must be >= 1");
    if (c > hard_modulus_cap) throw Error("kloosterman: modulus above cap");
    if (c == 1) return 1; // single empty-condition term e(0)
    const u64 mr = m % c, nr = n % c;
    const real w = TWO_PI / static_cast<real>(c);
    real sum = 0, comp = 0; // Kahan
    // enumerate x and xbar together by walking x and computing the inverse
    // pair via one egcd each; cost O(c log c) worst case, fine for c <= 1e8
    for (u64 x = 1; x < c; ++x) {
        if (gcd_u64(x, c) != 1) continue;
        const u64 xb = mod_inverse(static_cast<i64>(x), c);
        const u64 idx = (mr * x + nr * xb) % c; // products < 1e16 fit in u64
        const real t = std::cos(w * static_cast<real>(idx)) - comp;
        const real snew = sum + t;
        comp = (snew - sum) - t;
        sum = snew;
    }
    return sum;
}

real kloosterman(const KloostermanQuery& q) { return kloosterman(q.m, q.n, q.c); }

real weil_bound(u64 m, u64 n, u64 c) {
    const u64 g = gcd_u64(gcd_u64(m, n), c);
    return static_cast<real>(divisor_count(c)) *
           std::sqrt(static_cast<real>(g)) * std::sqrt(static_cast<real>(c));
}

namespace {

// all rows for moduli in [lo, hi)
void rows_range(std::vector<std::vector<real>>& rows, u64 m_max, u64 n,
                u64 lo, u64 hi) {
    std::vector<real> ctab;
    for (u64 l = lo; l < hi; ++l) {
        if (l == 1) {
            for (u64 m = 1; m <= m_max; ++m) rows[m - 1][0] = 1;
            continue;
        }
        ctab.resize(l);
        const real w = TWO_PI / static_cast<real>(l);
        for (u64 k = 0; k < l; ++k) ctab[k] = std::cos(w * static_cast<real>(k));
        const u64 nr = n % l;
        for (u64 m = 1; m <= m_max; ++m) rows[m - 1][l - 1] = 0;
        for (u64 x = 1; x < l; ++x) {
            if (gcd_u64(x, l) != 1) continue;
            const u64 xb = mod_inverse(static_cast<i64>(x), l);
            // index for m: (m*x + n*xb) mod l, walked incrementally in m
            u64 a = (x + nr * xb) % l; // m = 1
            rows[0][l - 1] += ctab[a];
            for (u64 m = 2; m <= m_max; ++m) {
                a += x;
                if (a >= l) a -= l;
                rows[m - 1][l - 1] += ctab[a];
            }
        }
    }
}

} // namespace

std::vector<std::vector<real>> kloosterman_rows(u64 m_max, u64 n, u64 L,
                                                int workers) {
    if (L > hard_modulus_cap) throw Error("kloosterman_rows: L above cap");
    std::vector<std::vector<real>> rows(m_max, std::vector<real>(L, 0));
    if (workers <= 1 || L < 64) {
        rows_range(rows, m_max, n, 1, L + 1);
        return rows;
    }
    // balance by l^2 (table + scan cost is ~linear in l per modulus)
    std::vector<std::thread> ts;
    const real total = static_cast<real>(L) * static_cast<real>(L);
    u64 lo = 1;
    for (int wkr = 0; wkr < workers && lo <= L; ++wkr) {
        const real frac = static_cast<real>(wkr + 1) / workers;
        u64 hi = (wkr == workers - 1)
                     ? L + 1
                     : static_cast<u64>(std::sqrt(frac * total)) + 1;
        if (hi <= lo) hi = lo + 1;
        if (hi > L + 1) hi = L + 1;
        ts.emplace_back(rows_range, std::ref(rows), m_max, n, lo, hi);
        lo = hi;
    }
    for (auto& t : ts) t.join();
    return rows;
}

} // namespace kuzlab
