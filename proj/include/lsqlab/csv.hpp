#pragma once

// CSV formats written by the survey and the CLI. Every writer emits a fixed
// header, '\n' line endings and no trailing whitespace; every reader is
// strict and rejects anything a writer would not have produced.

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lsqlab/errors.hpp"
#include "lsqlab/records.hpp"

namespace lsq::csv {

inline constexpr std::string_view kKClassHeader = "n,min_k,l_max,squarefree";
inline constexpr std::string_view kTable1Header = "K,count_I,count_S,max_S";
inline constexpr std::string_view kTable2Header = "n,f_gamma,f_four";
inline constexpr std::string_view kFig1Header = "n,f_gamma,f_four,bound46,bound64";

namespace detail {

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline std::uint64_t parse_uint(std::string_view field, std::string_view what) {
    std::uint64_t v = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    // Reject leading zeros so that parse -> write is the identity.
    if (field.empty() || ec != std::errc{} || ptr != end || (field.size() > 1 && field[0] == '0')) {
        throw format_error("malformed integer in " + std::string(what) + ": '" + std::string(field) + "'");
    }
    return v;
}

inline bool parse_bool(std::string_view field, std::string_view what) {
    if (field == "true") return true;
    if (field == "false") return false;
    throw format_error("malformed boolean in " + std::string(what) + ": '" + std::string(field) + "'");
}

// Reads the header and then hands each data line, split, to `on_row`.
template <typename OnRow>
void read_table(std::istream& in, std::string_view header, std::size_t columns, std::string_view what,
                OnRow on_row) {
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw format_error(std::string(what) + ": missing or wrong header (expected '" + std::string(header) +
                           "')");
    }
    while (std::getline(in, line)) {
        const auto fields = split(line);
        if (fields.size() != columns) {
            throw format_error(std::string(what) + ": expected " + std::to_string(columns) + " fields in '" +
                               line + "'");
        }
        on_row(fields);
    }
}

}  // namespace detail

inline void write_kclass_header(std::ostream& out) { out << kKClassHeader << '\n'; }

inline void write_kclass_row(std::ostream& out, const KClassRow& r) {
    out << r.n << ',' << r.min_k << ',' << r.l_max << ',' << (r.squarefree ? "true" : "false") << '\n';
}

inline void write_kclass(std::ostream& out, const std::vector<KClassRow>& rows) {
    write_kclass_header(out);
    for (const auto& r : rows) write_kclass_row(out, r);
}

inline std::vector<KClassRow> read_kclass(std::istream& in) {
    std::vector<KClassRow> rows;
    detail::read_table(in, kKClassHeader, 4, "kclass CSV", [&](const auto& f) {
        KClassRow r{detail::parse_uint(f[0], "n"), detail::parse_uint(f[1], "min_k"),
                    detail::parse_uint(f[2], "l_max"), detail::parse_bool(f[3], "squarefree")};
        if (!rows.empty() && r.n <= rows.back().n) {
            throw format_error("kclass CSV: rows not strictly increasing at n=" + std::to_string(r.n));
        }
        rows.push_back(r);
    });
    return rows;
}

// One row per K from 1 to the largest K observed.
inline void write_table1(std::ostream& out, const Table1Summary& s) {
    out << kTable1Header << '\n';
    for (std::uint64_t k = 1; k <= s.max_k(); ++k) {
        const KAggregate agg = s.at(k);
        out << k << ',' << agg.count_I << ',' << agg.count_S << ',';
        if (agg.max_S) out << *agg.max_S;
        out << '\n';
    }
}

struct Table1Row {
    std::uint64_t k = 0;
    KAggregate agg;

    friend bool operator==(const Table1Row&, const Table1Row&) = default;
};

inline std::vector<Table1Row> read_table1(std::istream& in) {
    std::vector<Table1Row> rows;
    detail::read_table(in, kTable1Header, 4, "table1 CSV", [&](const auto& f) {
        Table1Row r;
        r.k = detail::parse_uint(f[0], "K");
        r.agg.count_I = detail::parse_uint(f[1], "count_I");
        r.agg.count_S = detail::parse_uint(f[2], "count_S");
        if (!f[3].empty()) r.agg.max_S = detail::parse_uint(f[3], "max_S");
        if (r.k != rows.size() + 1) throw format_error("table1 CSV: K values must run 1, 2, 3, ...");
        if ((r.agg.count_S == 0) != !r.agg.max_S) {
            throw format_error("table1 CSV: max_S must be empty exactly when count_S is 0 (K=" +
                               std::to_string(r.k) + ")");
        }
        rows.push_back(r);
    });
    return rows;
}

inline void write_table1(std::ostream& out, const std::vector<Table1Row>& rows) {
    out << kTable1Header << '\n';
    for (const auto& r : rows) {
        out << r.k << ',' << r.agg.count_I << ',' << r.agg.count_S << ',';
        if (r.agg.max_S) out << *r.agg.max_S;
        out << '\n';
    }
}

inline void write_table2(std::ostream& out, const std::vector<Table2Row>& rows) {
    out << kTable2Header << '\n';
    for (const auto& r : rows) out << r.n << ',' << r.f_gamma << ',' << r.f_four << '\n';
}

inline std::vector<Table2Row> read_table2(std::istream& in) {
    std::vector<Table2Row> rows;
    detail::read_table(in, kTable2Header, 3, "table2 CSV", [&](const auto& f) {
        rows.push_back({detail::parse_uint(f[0], "n"), detail::parse_uint(f[1], "f_gamma"),
                        detail::parse_uint(f[2], "f_four")});
    });
    return rows;
}

inline void write_fig1(std::ostream& out, const std::vector<Fig1Row>& rows) {
    out << kFig1Header << '\n';
    for (const auto& r : rows) {
        out << r.n << ',' << r.f_gamma << ',' << r.f_four << ',' << r.bound46 << ',' << r.bound64 << '\n';
    }
}

inline std::vector<Fig1Row> read_fig1(std::istream& in) {
    std::vector<Fig1Row> rows;
    detail::read_table(in, kFig1Header, 5, "fig1 CSV", [&](const auto& f) {
        rows.push_back({detail::parse_uint(f[0], "n"), detail::parse_uint(f[1], "f_gamma"),
                        detail::parse_uint(f[2], "f_four"), detail::parse_uint(f[3], "bound46"),
                        detail::parse_uint(f[4], "bound64")});
    });
    return rows;
}

}  // namespace lsq::csv
