#pragma once

// Resumable sweep state.
//
//   lsqlab-ckpt v1
//   last_n=<integer>
//   K=<k>,count_I=<c1>,count_S=<c2>,max_S=<m-or-empty>   (one line per K)
//
// last_n is the highest n such that every n in [range_lo, last_n] has been
// classified and aggregated.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "lsqlab/csv.hpp"
#include "lsqlab/errors.hpp"
#include "lsqlab/records.hpp"

namespace lsq {

inline constexpr std::string_view kCheckpointMagic = "lsqlab-ckpt v1";

struct CheckpointState {
    std::uint64_t last_n = 0;
    std::map<std::uint64_t, KAggregate> by_k;

    friend bool operator==(const CheckpointState&, const CheckpointState&) = default;
};

inline CheckpointState checkpoint_of(const Table1Summary& s) { return {s.range_hi(), s.by_k()}; }

inline void checkpoint_write(std::ostream& out, const CheckpointState& st) {
    out << kCheckpointMagic << '\n' << "last_n=" << st.last_n << '\n';
    for (const auto& [k, agg] : st.by_k) {
        out << "K=" << k << ",count_I=" << agg.count_I << ",count_S=" << agg.count_S << ",max_S=";
        if (agg.max_S) out << *agg.max_S;
        out << '\n';
    }
}

namespace detail {

inline std::string_view strip_key(std::string_view field, std::string_view key) {
    if (field.substr(0, key.size()) != key || field.size() < key.size() + 1 || field[key.size()] != '=') {
        throw format_error("checkpoint: expected '" + std::string(key) + "=' in '" + std::string(field) + "'");
    }
    return field.substr(key.size() + 1);
}

}  // namespace detail

inline CheckpointState checkpoint_read(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw format_error("checkpoint: empty file");
    if (line != kCheckpointMagic) {
        throw format_error("checkpoint: unsupported header '" + line + "' (expected '" +
                           std::string(kCheckpointMagic) + "')");
    }
    CheckpointState st;
    if (!std::getline(in, line)) throw format_error("checkpoint: missing last_n line");
    st.last_n = csv::detail::parse_uint(detail::strip_key(line, "last_n"), "checkpoint last_n");
    while (std::getline(in, line)) {
        const auto f = csv::detail::split(line);
        if (f.size() != 4) throw format_error("checkpoint: malformed aggregate line '" + line + "'");
        const std::uint64_t k = csv::detail::parse_uint(detail::strip_key(f[0], "K"), "checkpoint K");
        KAggregate agg;
        agg.count_I = csv::detail::parse_uint(detail::strip_key(f[1], "count_I"), "checkpoint count_I");
        agg.count_S = csv::detail::parse_uint(detail::strip_key(f[2], "count_S"), "checkpoint count_S");
        const auto max_s = detail::strip_key(f[3], "max_S");
        if (!max_s.empty()) agg.max_S = csv::detail::parse_uint(max_s, "checkpoint max_S");
        if (agg.count_S > agg.count_I || (agg.count_S == 0) != !agg.max_S) {
            throw format_error("checkpoint: inconsistent aggregate for K=" + std::to_string(k));
        }
        if (!st.by_k.emplace(k, agg).second) {
            throw format_error("checkpoint: duplicate K=" + std::to_string(k));
        }
    }
    return st;
}

inline CheckpointState checkpoint_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw format_error("checkpoint: cannot open " + path.string());
    return checkpoint_read(in);
}

// Writes to a sibling temporary and renames it over `path`, so a reader never
// sees a half-written checkpoint.
inline void checkpoint_write(const std::filesystem::path& path, const CheckpointState& st) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw format_error("checkpoint: cannot write " + tmp.string());
        checkpoint_write(out, st);
        out.flush();
        if (!out) throw format_error("checkpoint: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace lsq
