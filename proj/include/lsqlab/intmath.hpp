#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

namespace lsq {

// floor(sqrt(n)) for the full uint64 range. The double seed is only a
// starting point; the result is corrected with exact integer comparisons.
constexpr std::uint64_t isqrt(std::uint64_t n) noexcept {
    if (n < 2) return n;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    // r*r may overflow near 2^64 when the seed rounds up to 2^32.
    if (r > 0xFFFFFFFFull) r = 0xFFFFFFFFull;
    while (r * r > n) --r;
    while ((r + 1) <= 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr bool is_square(std::uint64_t n) noexcept {
    const std::uint64_t r = isqrt(n);
    return r * r == n;
}

// Exact root when n is a perfect square.
constexpr std::optional<std::uint64_t> exact_sqrt(std::uint64_t n) noexcept {
    const std::uint64_t r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// ceil(log2(n)) for n >= 1.
constexpr unsigned ceil_log2(std::uint64_t n) noexcept {
    unsigned k = 0;
    while ((std::uint64_t{1} << k) < n) ++k;
    return k;
}

inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t out;
    if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
    return out;
}

}  // namespace lsq
