#pragma once
#include <complex>
#include <cstdint>

namespace kuzlab {

// All internal arithmetic runs in long double (80-bit extended on x86-64).
// The extra mantissa bits are load-bearing in the Bessel series cancellation
// and in the Euler-Maclaurin corrections; do not narrow to double.
using real = long double;
using cplx = std::complex<real>;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr real PI = 3.14159265358979323846264338327950288L;
inline constexpr real TWO_PI = 6.28318530717958647692528676655900577L;
inline constexpr real EULER_GAMMA = 0.57721566490153286060651209008240243L;
inline constexpr real LOG_2PI = 1.83787706640934548356065947281123527L;
inline constexpr real SQRT_PI = 1.77245385090551602729816748334114518L;

} // namespace kuzlab
