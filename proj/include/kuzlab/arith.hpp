#pragma once
#include <vector>

#include "kuzlab/core.hpp"
#include "kuzlab/errors.hpp"

namespace kuzlab {

u64 gcd_u64(u64 a, u64 b);                 // gcd(0,0) = 0 by convention
u64 mod_inverse(i64 x, u64 c);             // throws NotCoprime; c = 1 -> 0
int mobius(u64 n);
u64 divisor_count(u64 n);
std::vector<u64> divisors(u64 n);          // unsorted order of generation
std::vector<u64> primes_up_to(u64 limit);
std::vector<int> mobius_table(u64 limit);  // index 0 unused

// sigma_a(n) = sum_{d|n} d^a for complex exponent a.
cplx divisor_sigma(cplx a, u64 n);

// Real form of sigma_{2ir}(n) * n^{-ir} = sum_{d|n} cos(r*log(d^2/n)).
// The sine parts cancel by the d <-> n/d pairing, so this is exact, not
// a truncation. Used by the continuous trace term and the zeta-pair AFE.
real divisor_sigma_cos(real r, u64 n);

struct KloostermanQuery {
    u64 m, n, c;
};

// S(m,n;c) = sum over x mod c, (x,c)=1 of cos(2 pi (m x + n xbar)/c).
// Angle indices are reduced to exact integers mod c before any cosine is
// taken. O(c) per call; c is validated against hard_modulus_cap.
real kloosterman(const KloostermanQuery& q);
real kloosterman(u64 m, u64 n, u64 c);

// Weil bound d(c) sqrt((m,n,c)) sqrt(c).
real weil_bound(u64 m, u64 n, u64 c);

// S(m,n;l) for all 1 <= m <= m_max at fixed n, l = 1..L, sharing one
// cosine table per modulus across all m (the per-l table plus an
// incremental index walk makes the whole block ~O(sum_l phi(l)) instead
// of O(m_max * sum_l phi(l)) cosine calls). rows[m-1][l-1] = S(m,n;l).
// Deterministic for any worker count: every (m,l) entry is independent.
using KloostermanRows = std::vector<std::vector<real>>;
KloostermanRows kloosterman_rows(u64 m_max, u64 n, u64 L, int workers = 1);

inline constexpr u64 hard_modulus_cap = 100000000; // 1e8

} // namespace kuzlab
