#pragma once

#include <cmath>
#include <cstdint>

namespace siftlab {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i8 = std::int8_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline u64 ceil_div(u64 a, u64 b) { return a / b + (a % b != 0); }

} // namespace siftlab
