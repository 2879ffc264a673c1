#pragma once

// Sums of squares of integers >= n.
//
// Gamma_n is the additive monoid generated by {n^2, (n+1)^2, ...}; its
// Frobenius number F(Gamma_n) is the largest positive integer outside it.
// F(n) is the analogous quantity when at most four squares may be used.
// F(n) can only be searched up to a finite bound; with the default factor 64
// the bound 64 n^2 is justified only if every integer admits a four-square
// representation with nonzero parts >= sqrt(n)/8, so results are flagged
// conditional.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "lsqlab/bitset.hpp"
#include "lsqlab/errors.hpp"
#include "lsqlab/intmath.hpp"

namespace lsq {

// Largest table (in bits, i.e. bound + 1) any membership DP will allocate.
inline constexpr std::uint64_t kMaxTableBits = 2'000'000'000;

// Frobenius number of the coprime pair {n^2, (n+1)^2}: n^2 (n+1)^2 - n^2 - (n+1)^2.
inline std::int64_t sylvester_frobenius(std::uint64_t n) {
    detail::require_positive(n, "sylvester_frobenius");
    const auto a = checked_mul(n, n);
    const auto b = checked_mul(n + 1, n + 1);
    const auto ab = (a && b) ? checked_mul(*a, *b) : std::nullopt;
    if (!ab || *ab > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw capacity_error("sylvester_frobenius: n=" + std::to_string(n) + " overflows 64-bit arithmetic");
    }
    return static_cast<std::int64_t>(*ab) - static_cast<std::int64_t>(*a) - static_cast<std::int64_t>(*b);
}

namespace detail {

inline std::uint64_t table_bits(std::uint64_t bound, const char* op) {
    if (bound >= kMaxTableBits) {
        throw capacity_error(std::string(op) + ": bound=" + std::to_string(bound) +
                             " exceeds the table budget of " + std::to_string(kMaxTableBits) + " bits");
    }
    return bound + 1;
}

inline BitTable alloc_table(std::uint64_t bits, const char* op) {
    try {
        return BitTable(bits);
    } catch (const std::bad_alloc&) {
        throw capacity_error(std::string(op) + ": cannot allocate " + std::to_string(bits) + " bits");
    }
}

}  // namespace detail

// Bit m set iff m in Gamma_n, for 0 <= m <= bound. 0 is the empty sum.
inline BitTable gamma_membership_table(std::uint64_t n, std::uint64_t bound) {
    detail::require_positive(n, "gamma_membership_table");
    BitTable t = detail::alloc_table(detail::table_bits(bound, "gamma_membership_table"),
                                     "gamma_membership_table");
    t.set(0);
    for (std::uint64_t k = n; k * k <= bound; ++k) t.close_under(k * k);
    return t;
}

// Bit m set iff m is a sum of at most four squares, each >= n^2.
inline BitTable four_square_membership(std::uint64_t n, std::uint64_t bound) {
    detail::require_positive(n, "four_square_membership");
    const std::uint64_t bits = detail::table_bits(bound, "four_square_membership");
    std::vector<std::uint64_t> coins;
    for (std::uint64_t k = n; k * k <= bound; ++k) coins.push_back(k * k);

    BitTable layer = detail::alloc_table(bits, "four_square_membership");
    layer.set(0);
    for (int round = 0; round < 4; ++round) {
        BitTable next = layer;
        for (std::uint64_t c : coins) next.or_shifted(layer, c);
        layer = std::move(next);
    }
    return layer;
}

struct GammaResult {
    std::uint64_t n = 0;
    std::uint64_t frobenius = 0;
    // End of the first run of n^2 consecutive members; every integer above
    // frobenius up to here was checked directly.
    std::uint64_t certified_bound = 0;
    std::uint64_t gaps = 0;
};

// Exact F(Gamma_n). The table grows in chunks and each new integer m is
// decided from the generators <= m. Once n^2 consecutive members appear,
// every larger integer is one of them plus a multiple of n^2.
inline GammaResult frobenius_gamma(std::uint64_t n) {
    detail::require_positive(n, "frobenius_gamma");
    if (n == 1) return GammaResult{1, 0, 1, 0};

    const std::uint64_t window = n * n;
    const std::uint64_t fallback = static_cast<std::uint64_t>(sylvester_frobenius(n)) + window;
    constexpr std::uint64_t kChunk = 1u << 16;

    std::vector<std::uint8_t> member;
    member.reserve(kChunk);
    member.push_back(1);
    std::vector<std::uint64_t> gens;
    std::uint64_t next_base = n;

    GammaResult out{n, 0, 0, 0};
    std::uint64_t run = 0;
    for (std::uint64_t m = 1;; ++m) {
        if (m > fallback) {
            throw verification_error("frobenius_gamma: no window of " + std::to_string(window) +
                                     " members below the two-generator bound for n=" + std::to_string(n));
        }
        if (member.size() == member.capacity()) member.reserve(member.size() + kChunk);
        while (next_base * next_base <= m) {
            gens.push_back(next_base * next_base);
            ++next_base;
        }
        bool hit = false;
        for (std::uint64_t g : gens) {
            if (member[m - g]) {
                hit = true;
                break;
            }
        }
        member.push_back(hit ? 1 : 0);
        if (hit) {
            if (++run == window) {
                out.certified_bound = m;
                return out;
            }
        } else {
            run = 0;
            ++out.gaps;
            out.frobenius = m;
        }
    }
}

// A multiset of bases k >= n with sum of k^2 equal to m, largest first, or
// nullopt when m is not in Gamma_n. Runs a separate DP with parent links.
inline std::optional<std::vector<std::uint64_t>> gamma_decomposition(std::uint64_t n, std::uint64_t m) {
    detail::require_positive(n, "gamma_decomposition");
    detail::table_bits(m, "gamma_decomposition");
    std::vector<std::uint64_t> parent;  // base used to reach index, 0 = unreachable
    try {
        parent.assign(m + 1, 0);
    } catch (const std::bad_alloc&) {
        throw capacity_error("gamma_decomposition: cannot allocate parent table for m=" + std::to_string(m));
    }
    for (std::uint64_t k = n; k * k <= m; ++k) {
        const std::uint64_t g = k * k;
        for (std::uint64_t x = g; x <= m; ++x) {
            if (parent[x] == 0 && (x == g || parent[x - g] != 0)) parent[x] = k;
        }
    }
    if (m != 0 && parent[m] == 0) return std::nullopt;
    std::vector<std::uint64_t> bases;
    for (std::uint64_t x = m; x != 0; x -= parent[x] * parent[x]) bases.push_back(parent[x]);
    std::sort(bases.rbegin(), bases.rend());
    return bases;
}

struct FourSquareResult {
    std::uint64_t n = 0;
    std::uint64_t bound = 0;
    std::uint64_t largest_gap = 0;
    bool conditional = true;
};

// Largest m <= factor * n^2 that is not a sum of at most four squares >= n^2.
inline FourSquareResult f_four(std::uint64_t n, std::uint64_t factor = 64) {
    if (n < 2) throw domain_error("f_four: n must be >= 2 (got n=" + std::to_string(n) + ")");
    if (factor == 0) throw domain_error("f_four: factor must be >= 1 (got factor=0)");
    const auto bound = checked_mul(factor, n * n);
    if (!bound) throw capacity_error("f_four: factor * n^2 overflows for n=" + std::to_string(n));
    const BitTable t = four_square_membership(n, *bound);
    FourSquareResult out{n, *bound, 0, true};
    for (std::uint64_t m = *bound; m > 0; --m) {
        if (!t.test(m)) {
            out.largest_gap = m;
            break;
        }
    }
    return out;
}

// 46 * 4^(ceil(log2 n) - 1), the observed closed form of F(n) for n >= 5.
inline std::uint64_t f_four_pattern(std::uint64_t n) {
    if (n < 5) throw domain_error("f_four_pattern: n must be >= 5 (got n=" + std::to_string(n) + ")");
    const unsigned e = ceil_log2(n) - 1;
    if (2 * e > 57) throw capacity_error("f_four_pattern: n=" + std::to_string(n) + " overflows");
    return 46 * (std::uint64_t{1} << (2 * e));
}

}  // namespace lsq
