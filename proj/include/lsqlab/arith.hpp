#pragma once

// Exact divisor sums and squarefree structure, scalar and sieved.
//
// sigma_prime(n) is the sum of the divisors of n that are not multiples of
// four. It is multiplicative, with sigma_prime(2^e) = 3 for e >= 1 and
// sigma_prime(p^e) = 1 + p + ... + p^e for odd p. The sieve uses that
// factorisation; the scalar path uses plain trial division.

#include <cstdint>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "lsqlab/errors.hpp"

namespace lsq {

inline std::uint64_t sigma_prime(std::uint64_t n) {
    detail::require_positive(n, "sigma_prime");
    std::uint64_t sum = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        const std::uint64_t e = n / d;
        if (d % 4 != 0) sum += d;
        if (e != d && e % 4 != 0) sum += e;
    }
    return sum;
}

// Closed form of r(n), the number of ordered signed four-square representations.
inline std::uint64_t jacobi_r(std::uint64_t n) {
    detail::require_positive(n, "jacobi_r");
    return 8 * sigma_prime(n);
}

inline bool is_squarefree(std::uint64_t n) {
    detail::require_positive(n, "is_squarefree");
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

struct SquarefreeSplit {
    std::uint64_t rho;  // n = rho^2 * q
    std::uint64_t q;    // squarefree kernel

    friend bool operator==(const SquarefreeSplit&, const SquarefreeSplit&) = default;
};

inline SquarefreeSplit squarefree_decompose(std::uint64_t n) {
    detail::require_positive(n, "squarefree_decompose");
    SquarefreeSplit out{1, 1};
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i) out.rho *= p;
        if (e % 2 == 1) out.q *= p;
    }
    out.q *= n;  // leftover prime factor (or 1)
    return out;
}

// Batch sigma_prime and squarefree flags for 1..limit. Index 0 is unused.
class SieveTables {
public:
    explicit SieveTables(std::uint64_t limit) : limit_(limit) {
        if (limit == 0) throw domain_error("build_sieve: limit must be >= 1 (got limit=0)");
        try {
            sigma_.assign(limit + 1, 0);
            squarefree_.assign(limit + 1, 1);
        } catch (const std::bad_alloc&) {
            throw capacity_error("build_sieve: cannot allocate tables for limit=" +
                                 std::to_string(limit));
        }
        build();
    }

    std::uint64_t limit() const noexcept { return limit_; }

    std::uint64_t sigma_prime(std::uint64_t k) const { return sigma_.at(checked(k)); }
    bool squarefree(std::uint64_t k) const { return squarefree_.at(checked(k)) != 0; }

private:
    std::uint64_t checked(std::uint64_t k) const {
        if (k == 0 || k > limit_) {
            throw domain_error("SieveTables: index " + std::to_string(k) + " outside [1, " +
                               std::to_string(limit_) + "]");
        }
        return k;
    }

    // Linear sieve. For each k we track its smallest prime p, the full power
    // p^e dividing k, and the cofactor, so sigma' is assembled multiplicatively.
    void build() {
        const std::uint64_t N = limit_;
        std::vector<std::uint32_t> spf(N + 1, 0);
        std::vector<std::uint64_t> primes;
        // pk[k] = p^e where p = spf[k] and p^e || k
        std::vector<std::uint64_t> pk(N + 1, 1);
        // local[k] = sigma'(pk[k])
        std::vector<std::uint64_t> local(N + 1, 1);
        sigma_[1] = 1;
        for (std::uint64_t k = 2; k <= N; ++k) {
            if (spf[k] == 0) {
                spf[k] = static_cast<std::uint32_t>(k);
                primes.push_back(k);
                pk[k] = k;
                local[k] = k + 1;
                sigma_[k] = k + 1;
            }
            for (std::uint64_t p : primes) {
                if (p > spf[k] || p * k > N) break;
                const std::uint64_t m = p * k;
                spf[m] = static_cast<std::uint32_t>(p);
                if (p == spf[k]) {
                    squarefree_[m] = 0;
                    pk[m] = pk[k] * p;
                    local[m] = (p == 2) ? 3 : local[k] * p + 1;
                    sigma_[m] = sigma_[k / pk[k]] * local[m];
                } else {
                    squarefree_[m] = squarefree_[k];
                    pk[m] = p;
                    local[m] = p + 1;
                    sigma_[m] = sigma_[k] * (p + 1);
                }
            }
        }
    }

    std::uint64_t limit_;
    std::vector<std::uint64_t> sigma_;
    std::vector<std::uint8_t> squarefree_;
};

inline SieveTables build_sieve(std::uint64_t limit) { return SieveTables(limit); }

// Squarefree flags for the window [lo, hi]; entry i describes lo + i.
// Marks multiples of every k^2 with k^2 <= hi, so no prime table is needed.
inline std::vector<std::uint8_t> squarefree_flags(std::uint64_t lo, std::uint64_t hi) {
    detail::require_positive(lo, "squarefree_flags");
    if (hi < lo) return {};
    std::vector<std::uint8_t> flags(hi - lo + 1, 1);
    for (std::uint64_t k = 2; k * k <= hi; ++k) {
        const std::uint64_t sq = k * k;
        for (std::uint64_t m = (lo + sq - 1) / sq * sq; m <= hi; m += sq) flags[m - lo] = 0;
    }
    return flags;
}

}  // namespace lsq
