#pragma once

// Range sweeps behind the K-classification table and the Frobenius tables.
//
// sweep_classification splits [range_lo, range_hi] into fixed blocks that a
// pool of workers classifies independently. Finished blocks are committed
// strictly in block order (CSV rows, aggregate, checkpoint), so the output
// does not depend on the worker count or on scheduling.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lsqlab/arith.hpp"
#include "lsqlab/checkpoint.hpp"
#include "lsqlab/csv.hpp"
#include "lsqlab/errors.hpp"
#include "lsqlab/lattice.hpp"
#include "lsqlab/records.hpp"
#include "lsqlab/semigroup.hpp"

namespace lsq {

// Sweeps above this need SweepConfig::full_range.
inline constexpr std::uint64_t kDefaultSweepCeiling = 100'000;

struct SweepConfig {
    std::uint64_t range_lo = 1;
    std::uint64_t range_hi = 1;
    unsigned worker_count = 1;
    std::optional<std::filesystem::path> checkpoint_path;
    std::optional<std::filesystem::path> output_path;  // kclass CSV
    // Every n divisible by verify_stride is re-derived by full enumeration
    // (skipped above kMaxEnumerate). 0 disables verification.
    std::uint64_t verify_stride = 1000;
    std::uint64_t block_size = 4096;
    bool full_range = false;
    bool collect_rows = true;
    // Stop after committing the block that contains this n.
    std::optional<std::uint64_t> halt_after;
};

struct SweepResult {
    std::vector<KClassRow> rows;  // rows computed by this call only
    Table1Summary summary;        // everything committed so far, including resumed state
    bool complete = false;
};

inline KClassRow classify(std::uint64_t n, bool squarefree) {
    const std::uint64_t l = l_max_fast(n);
    return {n, detail::min_k_from_l_max(n, l), l, squarefree};
}

namespace detail {

inline void validate(const SweepConfig& cfg) {
    if (cfg.range_lo == 0) throw domain_error("sweep: range_lo must be >= 1");
    if (cfg.range_lo > cfg.range_hi) {
        throw domain_error("sweep: range_lo=" + std::to_string(cfg.range_lo) + " exceeds range_hi=" +
                           std::to_string(cfg.range_hi));
    }
    if (cfg.worker_count == 0) throw domain_error("sweep: worker_count must be >= 1");
    if (cfg.block_size == 0) throw domain_error("sweep: block_size must be >= 1");
    if (cfg.range_hi > kDefaultSweepCeiling && !cfg.full_range) {
        throw domain_error("sweep: range_hi=" + std::to_string(cfg.range_hi) + " exceeds " +
                           std::to_string(kDefaultSweepCeiling) + "; enable full_range to sweep further");
    }
    require_searchable(cfg.range_hi, "sweep");
}

inline std::vector<KClassRow> classify_block(std::uint64_t lo, std::uint64_t hi, std::uint64_t verify_stride) {
    const auto sf = squarefree_flags(lo, hi);
    std::vector<KClassRow> rows;
    rows.reserve(hi - lo + 1);
    for (std::uint64_t n = lo; n <= hi; ++n) {
        rows.push_back(classify(n, sf[n - lo] != 0));
        if (verify_stride != 0 && n % verify_stride == 0 && n <= kMaxEnumerate) {
            const RepAnalysis full = analyze(n);
            if (full.min_k != rows.back().min_k || full.l_max != rows.back().l_max) {
                throw verification_error("sweep: n=" + std::to_string(n) + " fast search gives (min_k=" +
                                         std::to_string(rows.back().min_k) + ", l_max=" +
                                         std::to_string(rows.back().l_max) + ") but enumeration gives (" +
                                         std::to_string(full.min_k) + ", " + std::to_string(full.l_max) + ")");
            }
        }
    }
    return rows;
}

// Rewrites an existing kclass CSV so it holds exactly the rows [lo, last_n].
inline void truncate_kclass(const std::filesystem::path& path, std::uint64_t lo, std::uint64_t last_n) {
    std::vector<KClassRow> rows;
    {
        std::ifstream in(path);
        if (!in) throw format_error("sweep: cannot reopen output " + path.string() + " to resume");
        rows = csv::read_kclass(in);
    }
    std::erase_if(rows, [&](const KClassRow& r) { return r.n > last_n; });
    const std::uint64_t want = last_n + 1 - lo;
    if (rows.size() != want || (!rows.empty() && (rows.front().n != lo || rows.back().n != last_n))) {
        throw format_error("sweep: output " + path.string() + " does not cover [" + std::to_string(lo) + ", " +
                           std::to_string(last_n) + "] recorded in the checkpoint");
    }
    std::ofstream out(path, std::ios::trunc);
    csv::write_kclass(out, rows);
}

}  // namespace detail

inline SweepResult sweep_classification(const SweepConfig& cfg) {
    detail::validate(cfg);
    SweepResult result{{}, Table1Summary(cfg.range_lo), false};
    Table1Summary& summary = result.summary;

    bool resuming = false;
    if (cfg.checkpoint_path && std::filesystem::exists(*cfg.checkpoint_path)) {
        const CheckpointState st = checkpoint_read(*cfg.checkpoint_path);
        if (st.last_n + 1 < cfg.range_lo || st.last_n > cfg.range_hi) {
            throw format_error("checkpoint: last_n=" + std::to_string(st.last_n) + " is outside the sweep range");
        }
        std::uint64_t total = 0;
        for (const auto& [k, agg] : st.by_k) total += agg.count_I;
        if (total != st.last_n + 1 - cfg.range_lo) {
            throw format_error("checkpoint: aggregates cover " + std::to_string(total) + " integers but last_n=" +
                               std::to_string(st.last_n) + " implies " +
                               std::to_string(st.last_n + 1 - cfg.range_lo));
        }
        summary.restore(st.last_n, st.by_k);
        resuming = true;
    } else if (cfg.checkpoint_path) {
        checkpoint_write(*cfg.checkpoint_path, checkpoint_of(summary));
    }

    std::ofstream out;
    if (cfg.output_path) {
        if (resuming) {
            detail::truncate_kclass(*cfg.output_path, cfg.range_lo, summary.range_hi());
            out.open(*cfg.output_path, std::ios::app);
        } else {
            out.open(*cfg.output_path, std::ios::trunc);
            csv::write_kclass_header(out);
        }
        if (!out) throw format_error("sweep: cannot open output " + cfg.output_path->string());
    }

    const std::uint64_t start = summary.range_hi() + 1;
    if (start > cfg.range_hi) {
        result.complete = true;
        return result;
    }
    const std::uint64_t bs = cfg.block_size;
    std::uint64_t block_count = (cfg.range_hi - start) / bs + 1;
    if (cfg.halt_after) {
        if (*cfg.halt_after < start) return result;
        block_count = std::min(block_count, (*cfg.halt_after - start) / bs + 1);
    }

    std::atomic<std::uint64_t> next_block{0};
    std::atomic<bool> abort{false};
    std::mutex mu;
    std::map<std::uint64_t, std::vector<KClassRow>> pending;
    std::uint64_t next_commit = 0;
    std::exception_ptr failure;

    auto commit = [&](std::vector<KClassRow>& rows) {
        for (const KClassRow& r : rows) {
            summary.add(r);
            if (out.is_open()) csv::write_kclass_row(out, r);
        }
        if (out.is_open()) {
            out.flush();
            if (!out) throw format_error("sweep: write failed for " + cfg.output_path->string());
        }
        if (cfg.checkpoint_path) checkpoint_write(*cfg.checkpoint_path, checkpoint_of(summary));
        if (cfg.collect_rows) result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    };

    auto worker = [&] {
        try {
            for (;;) {
                const std::uint64_t b = next_block.fetch_add(1);
                if (b >= block_count || abort.load()) return;
                const std::uint64_t lo = start + b * bs;
                const std::uint64_t hi = std::min(cfg.range_hi, lo + bs - 1);
                auto rows = detail::classify_block(lo, hi, cfg.verify_stride);

                std::lock_guard lock(mu);
                if (abort.load()) return;
                pending.emplace(b, std::move(rows));
                for (auto it = pending.find(next_commit); it != pending.end(); it = pending.find(next_commit)) {
                    commit(it->second);
                    pending.erase(it);
                    ++next_commit;
                }
            }
        } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
            abort.store(true);
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(cfg.worker_count);
    for (unsigned i = 0; i < cfg.worker_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    result.complete = summary.range_hi() == cfg.range_hi;
    return result;
}

namespace detail {

// Re-throws the active lsq exception with the failing n prepended.
[[noreturn]] inline void rethrow_for(std::uint64_t n) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    try {
        throw;
    } catch (const domain_error& e) {
        throw domain_error(tag + e.what());
    } catch (const capacity_error& e) {
        throw capacity_error(tag + e.what());
    } catch (const verification_error& e) {
        throw verification_error(tag + e.what());
    }
}

}  // namespace detail

inline std::vector<Table2Row> table2_survey(const std::vector<std::uint64_t>& ns, std::uint64_t factor = 64) {
    std::vector<Table2Row> rows;
    rows.reserve(ns.size());
    for (std::uint64_t n : ns) {
        try {
            if (n < 2) throw domain_error("table2 rows need n >= 2");
            rows.push_back({n, frobenius_gamma(n).frobenius, f_four(n, factor).largest_gap});
        } catch (...) {
            detail::rethrow_for(n);
        }
    }
    return rows;
}

// Figure data: both Frobenius quantities against 46 n^2 and 64 n^2. For
// n >= 5 a value of F(n) above 46 n^2 is reported as a verification error.
inline std::vector<Fig1Row> figure1_data(const std::vector<std::uint64_t>& ns, std::uint64_t factor = 64) {
    std::vector<Fig1Row> rows;
    rows.reserve(ns.size());
    for (const Table2Row& t : table2_survey(ns, factor)) {
        const std::uint64_t sq = t.n * t.n;
        Fig1Row r{t.n, t.f_gamma, t.f_four, 46 * sq, 64 * sq};
        if (t.n >= 5 && r.f_four > r.bound46) {
            throw verification_error("figure1_data: n=" + std::to_string(t.n) + " has F(n)=" +
                                     std::to_string(r.f_four) + " above 46 n^2=" + std::to_string(r.bound46));
        }
        rows.push_back(r);
    }
    return rows;
}

// Row n values of the published Frobenius comparison table.
inline const std::vector<std::uint64_t>& table2_default_ns() {
    static const std::vector<std::uint64_t> ns{2,  3,  4,  5,  6,  7,  8,   9,   10,  20,  30,
                                               40, 50, 60, 70, 80, 90, 100, 125, 150, 175, 200};
    return ns;
}

}  // namespace lsq
