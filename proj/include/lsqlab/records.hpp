#pragma once

// Survey records: per-n K classification, its aggregate, and Frobenius rows.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "lsqlab/errors.hpp"

namespace lsq {

struct KClassRow {
    std::uint64_t n = 0;
    std::uint64_t min_k = 0;
    std::uint64_t l_max = 0;
    bool squarefree = false;

    friend bool operator==(const KClassRow&, const KClassRow&) = default;
};

struct KAggregate {
    std::uint64_t count_I = 0;  // all n with this minimal K
    std::uint64_t count_S = 0;  // squarefree subset
    std::optional<std::uint64_t> max_S;

    friend bool operator==(const KAggregate&, const KAggregate&) = default;
};

// Aggregate over the contiguous range [range_lo, range_hi]. An empty summary
// has range_hi == range_lo - 1.
class Table1Summary {
public:
    Table1Summary() = default;
    explicit Table1Summary(std::uint64_t range_lo) : range_lo_(range_lo), range_hi_(range_lo - 1) {}

    std::uint64_t range_lo() const noexcept { return range_lo_; }
    std::uint64_t range_hi() const noexcept { return range_hi_; }
    bool empty() const noexcept { return range_hi_ + 1 == range_lo_; }
    const std::map<std::uint64_t, KAggregate>& by_k() const noexcept { return by_k_; }

    KAggregate at(std::uint64_t k) const {
        const auto it = by_k_.find(k);
        return it == by_k_.end() ? KAggregate{} : it->second;
    }

    std::uint64_t max_k() const noexcept { return by_k_.empty() ? 0 : by_k_.rbegin()->first; }

    std::uint64_t total() const noexcept {
        std::uint64_t t = 0;
        for (const auto& [k, agg] : by_k_) t += agg.count_I;
        return t;
    }

    // Rows must arrive in increasing n with no holes.
    void add(const KClassRow& row) {
        if (row.n != range_hi_ + 1) {
            throw verification_error("Table1Summary::add: expected n=" + std::to_string(range_hi_ + 1) +
                                     ", got n=" + std::to_string(row.n));
        }
        KAggregate& agg = by_k_[row.min_k];
        ++agg.count_I;
        if (row.squarefree) {
            ++agg.count_S;
            agg.max_S = std::max(agg.max_S.value_or(0), row.n);
        }
        range_hi_ = row.n;
    }

    // Append the summary of the range immediately following this one.
    void merge(const Table1Summary& next) {
        if (next.empty()) return;
        if (empty()) {
            if (next.range_lo_ != range_lo_) {
                throw verification_error("Table1Summary::merge: ranges are not adjacent");
            }
        } else if (next.range_lo_ != range_hi_ + 1) {
            throw verification_error("Table1Summary::merge: ranges are not adjacent");
        }
        for (const auto& [k, agg] : next.by_k_) {
            KAggregate& mine = by_k_[k];
            mine.count_I += agg.count_I;
            mine.count_S += agg.count_S;
            if (agg.max_S) mine.max_S = std::max(mine.max_S.value_or(0), *agg.max_S);
        }
        range_hi_ = next.range_hi_;
    }

    // Used when restoring from a checkpoint.
    void restore(std::uint64_t range_hi, std::map<std::uint64_t, KAggregate> by_k) {
        range_hi_ = range_hi;
        by_k_ = std::move(by_k);
    }

    friend bool operator==(const Table1Summary&, const Table1Summary&) = default;

private:
    std::uint64_t range_lo_ = 1;
    std::uint64_t range_hi_ = 0;
    std::map<std::uint64_t, KAggregate> by_k_;
};

struct Table2Row {
    std::uint64_t n = 0;
    std::uint64_t f_gamma = 0;
    std::uint64_t f_four = 0;

    friend bool operator==(const Table2Row&, const Table2Row&) = default;
};

struct Fig1Row {
    std::uint64_t n = 0;
    std::uint64_t f_gamma = 0;
    std::uint64_t f_four = 0;
    std::uint64_t bound46 = 0;
    std::uint64_t bound64 = 0;

    friend bool operator==(const Fig1Row&, const Fig1Row&) = default;
};

}  // namespace lsq
