#pragma once

// Integral points on the 3-sphere a1^2 + a2^2 + a3^2 + a4^2 = n.
//
// Points are handled up to sign and permutation as sorted non-negative
// quadruples (Quad). The L-value of a point is its smallest nonzero entry;
// the minimal K for n is the least integer K such that some point has all
// nonzero entries >= sqrt(n) / K, i.e. K^2 * l_max^2 >= n. Every comparison
// against sqrt(n) is done in exact integer form.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lsqlab/errors.hpp"
#include "lsqlab/intmath.hpp"

namespace lsq {

// Largest n accepted by exhaustive enumeration (enumerate_reps, analyze,
// ordered_signed_count, cap_count). Work grows like n^{3/2}.
inline constexpr std::uint64_t kMaxEnumerate = 10'000'000;

// Largest n accepted by the early-exit search (min_k_fast, l_max_fast,
// has_four_nonzero_rep).
inline constexpr std::uint64_t kMaxSearch = 1'000'000'000'000;

struct Quad {
    std::array<std::uint64_t, 4> a{};  // ascending

    Quad() = default;
    Quad(std::uint64_t a1, std::uint64_t a2, std::uint64_t a3, std::uint64_t a4) : a{a1, a2, a3, a4} {
        std::sort(a.begin(), a.end());
    }

    std::uint64_t norm() const noexcept { return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]; }

    Quad scaled(std::uint64_t rho) const { return Quad(rho * a[0], rho * a[1], rho * a[2], rho * a[3]); }

    friend auto operator<=>(const Quad&, const Quad&) = default;
    friend bool operator==(const Quad&, const Quad&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Quad& q) {
        return os << q.a[0] << ' ' << q.a[1] << ' ' << q.a[2] << ' ' << q.a[3];
    }
};

// Smallest nonzero entry; 0 for the zero quad.
inline std::uint64_t l_value(const Quad& q) noexcept {
    for (std::uint64_t x : q.a) {
        if (x != 0) return x;
    }
    return 0;
}

namespace detail {

inline void require_enumerable(std::uint64_t n, const char* op) {
    if (n > kMaxEnumerate) {
        throw capacity_error(std::string(op) + ": n=" + std::to_string(n) +
                             " exceeds the exhaustive enumeration bound " + std::to_string(kMaxEnumerate));
    }
}

inline void require_searchable(std::uint64_t n, const char* op) {
    if (n > kMaxSearch) {
        throw capacity_error(std::string(op) + ": n=" + std::to_string(n) + " exceeds the search bound " +
                             std::to_string(kMaxSearch));
    }
}

// Number of distinct orderings times sign choices of a sorted quad.
inline std::uint64_t orbit_size(const Quad& q) noexcept {
    std::uint64_t perms = 24;
    std::size_t i = 0;
    while (i < 4) {
        std::size_t j = i;
        while (j < 4 && q.a[j] == q.a[i]) ++j;
        for (std::size_t f = 2; f <= j - i; ++f) perms /= f;
        i = j;
    }
    std::uint64_t signs = 1;
    for (std::uint64_t x : q.a) {
        if (x != 0) signs *= 2;
    }
    return perms * signs;
}

// Is r a sum of exactly `count` squares, each of an integer >= lo (lo >= 1)?
inline bool sum_of_squares_at_least(std::uint64_t r, unsigned count, std::uint64_t lo) {
    const std::uint64_t lo2 = lo * lo;
    switch (count) {
    case 0:
        return r == 0;
    case 1:
        return r >= lo2 && is_square(r);
    case 2: {
        if (r < 2 * lo2) return false;
        // b is the larger root: b^2 >= r / 2 and r - b^2 >= lo^2.
        for (std::uint64_t b = isqrt(r - lo2); 2 * b * b >= r; --b) {
            if (is_square(r - b * b)) return true;
        }
        return false;
    }
    default:
        for (std::uint64_t x = lo; count * x * x <= r; ++x) {
            if (sum_of_squares_at_least(r - x * x, count - 1, x)) return true;
        }
        return false;
    }
}

inline std::uint64_t min_k_from_l_max(std::uint64_t n, std::uint64_t l_max) {
    const std::uint64_t l2 = l_max * l_max;
    const std::uint64_t t = (n + l2 - 1) / l2;  // K^2 >= ceil(n / l^2)
    std::uint64_t k = isqrt(t);
    if (k * k < t) ++k;
    return k;
}

}  // namespace detail

// All canonical representations of n, sorted lexicographically.
inline std::vector<Quad> enumerate_reps(std::uint64_t n) {
    detail::require_enumerable(n, "enumerate_reps");
    std::vector<Quad> out;
    for (std::uint64_t a1 = 0; 4 * a1 * a1 <= n; ++a1) {
        const std::uint64_t r1 = n - a1 * a1;
        for (std::uint64_t a2 = a1; 3 * a2 * a2 <= r1; ++a2) {
            const std::uint64_t r2 = r1 - a2 * a2;
            // complete a3^2 + a4^2 = r2 with a2 <= a3 <= a4
            std::uint64_t lo = a2;
            std::uint64_t hi = isqrt(r2);
            while (lo <= hi) {
                const std::uint64_t s = lo * lo + hi * hi;
                if (s == r2) {
                    out.emplace_back(a1, a2, lo, hi);
                    ++lo;
                    if (hi == 0) break;
                    --hi;
                } else if (s < r2) {
                    ++lo;
                } else {
                    if (hi == 0) break;
                    --hi;
                }
            }
        }
    }
    return out;
}

// r(n): ordered, signed representations, from canonical reps and orbit sizes.
inline std::uint64_t ordered_signed_count(std::uint64_t n) {
    detail::require_enumerable(n, "ordered_signed_count");
    std::uint64_t total = 0;
    for (const Quad& q : enumerate_reps(n)) total += detail::orbit_size(q);
    return total;
}

struct RepAnalysis {
    std::uint64_t n = 0;
    std::vector<Quad> reps;
    std::uint64_t l_max = 0;
    std::vector<Quad> witnesses;  // maximal points for the L-order
    std::uint64_t min_k = 0;
    bool has_four_nonzero = false;
};

inline RepAnalysis analyze(std::uint64_t n) {
    detail::require_positive(n, "analyze");
    detail::require_enumerable(n, "analyze");
    RepAnalysis out;
    out.n = n;
    out.reps = enumerate_reps(n);
    for (const Quad& q : out.reps) {
        out.l_max = std::max(out.l_max, l_value(q));
        if (q.a[0] > 0) out.has_four_nonzero = true;
    }
    for (const Quad& q : out.reps) {
        if (l_value(q) == out.l_max) out.witnesses.push_back(q);
    }
    out.min_k = detail::min_k_from_l_max(n, out.l_max);
    return out;
}

// L-max by descending search over the candidate smallest entry m. The first
// m admitting a representation whose nonzero entries are all >= m, with m
// itself present, is the L-max.
inline std::uint64_t l_max_fast(std::uint64_t n) {
    detail::require_positive(n, "l_max_fast");
    detail::require_searchable(n, "l_max_fast");
    for (std::uint64_t m = isqrt(n); m >= 1; --m) {
        const std::uint64_t rest = n - m * m;
        for (unsigned others = 0; others <= 3; ++others) {
            if ((others + 1) * m * m > n) break;
            if (detail::sum_of_squares_at_least(rest, others, m)) return m;
        }
    }
    throw verification_error("l_max_fast: no representation found for n=" + std::to_string(n));
}

inline std::uint64_t min_k_fast(std::uint64_t n) {
    return detail::min_k_from_l_max(n, l_max_fast(n));
}

inline bool has_four_nonzero_rep(std::uint64_t n) {
    detail::require_positive(n, "has_four_nonzero_rep");
    detail::require_searchable(n, "has_four_nonzero_rep");
    return detail::sum_of_squares_at_least(n, 4, 1);
}

// Closed-form membership in the set of integers that are not sums of four
// nonzero squares: {1,3,5,9,11,17,29,41} and 4^a * {2, 6, 14}.
inline bool in_B(std::uint64_t n) {
    detail::require_positive(n, "in_B");
    static constexpr std::array<std::uint64_t, 8> sporadic{1, 3, 5, 9, 11, 17, 29, 41};
    if (std::find(sporadic.begin(), sporadic.end(), n) != sporadic.end()) return true;
    while (n % 4 == 0) n /= 4;
    return n == 2 || n == 6 || n == 14;
}

struct CapCount {
    std::uint64_t in_cap = 0;
    std::uint64_t total = 0;

    friend bool operator==(const CapCount&, const CapCount&) = default;
};

// Ordered signed points whose every coordinate satisfies |a_i| >= 1 and
// denom^2 * a_i^2 >= n, alongside r(n).
inline CapCount cap_count(std::uint64_t n, std::uint64_t denom) {
    detail::require_positive(n, "cap_count");
    if (denom == 0) throw domain_error("cap_count: denom must be >= 1 (got denom=0)");
    detail::require_enumerable(n, "cap_count");
    CapCount out;
    for (const Quad& q : enumerate_reps(n)) {
        const std::uint64_t w = detail::orbit_size(q);
        out.total += w;
        const std::uint64_t lo = q.a[0];
        if (lo >= 1 && denom * denom * lo * lo >= n) out.in_cap += w;
    }
    return out;
}

}  // namespace lsq
