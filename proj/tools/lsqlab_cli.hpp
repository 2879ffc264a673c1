#pragma once

// Command-line front end. run() is the whole program minus process setup so
// tests can drive it with string streams.
//
// Exit status: 0 success, 1 domain/capacity/format error, 2 usage error,
// 3 internal verification failure.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lsqlab/lsqlab.hpp"

namespace lsq::cli {

enum ExitCode : int { kOk = 0, kDomain = 1, kUsage = 2, kVerification = 3 };

namespace detail {

// Destination for data output: --out <path> or the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
            if (!*file_) throw format_error("cannot open --out " + path);
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

struct Options {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> ns;
    std::uint64_t from = 1;
    std::uint64_t to = 0;
    unsigned threads = 1;
    std::string checkpoint;
    std::string out;
    std::string kclass;
    std::uint64_t factor = 64;
    std::uint64_t denom = 8;
    bool full_range = false;
    bool witness = false;
};

inline void print_quads(std::ostream& os, const std::vector<Quad>& quads) {
    for (const Quad& q : quads) os << q << '\n';
}

inline SweepConfig sweep_config(const Options& o) {
    SweepConfig cfg;
    cfg.range_lo = o.from;
    cfg.range_hi = o.to;
    cfg.worker_count = o.threads;
    if (!o.checkpoint.empty()) cfg.checkpoint_path = o.checkpoint;
    cfg.full_range = o.full_range;
    return cfg;
}

}  // namespace detail

inline int exit_code_for(const std::exception& e) {
    return dynamic_cast<const verification_error*>(&e) != nullptr ? kVerification : kDomain;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Four-square representations with large parts and Frobenius numbers of sums of large squares",
                 "lsqlab"};
    app.require_subcommand(1, 1);
    detail::Options o;

    auto add_n = [&](CLI::App* sub) { sub->add_option("n", o.n, "Integer to query")->required(); };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write data output to this path"); };
    auto add_range = [&](CLI::App* sub) {
        sub->add_option("--from", o.from, "First n of the sweep")->default_val(1);
        sub->add_option("--to", o.to, "Last n of the sweep")->required();
        sub->add_option("--threads", o.threads, "Worker threads")->default_val(1)->check(CLI::PositiveNumber);
        sub->add_option("--checkpoint", o.checkpoint, "Checkpoint file; an existing one is resumed");
        sub->add_flag("--full-range", o.full_range, "Allow sweeps beyond 100000");
    };

    CLI::App* reps = app.add_subcommand("reps", "List canonical four-square representations of n");
    add_n(reps);
    add_out(reps);
    CLI::App* count = app.add_subcommand("count", "Ordered signed representation count r(n)");
    add_n(count);
    add_out(count);
    CLI::App* mink = app.add_subcommand("mink", "Minimal K for n");
    add_n(mink);
    add_out(mink);
    mink->add_flag("--witness", o.witness, "Also print the maximal representations");
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Full L-order analysis: n min_k l_max reps four_nonzero");
    add_n(analyze_cmd);
    add_out(analyze_cmd);
    analyze_cmd->add_flag("--witness", o.witness, "Also print the maximal representations");
    CLI::App* inb = app.add_subcommand("inb", "Is n outside the sums of four nonzero squares");
    add_n(inb);
    add_out(inb);
    CLI::App* cap = app.add_subcommand("cap", "Points with every |a_i| >= sqrt(n)/denom, and r(n)");
    add_n(cap);
    add_out(cap);
    cap->add_option("--denom", o.denom, "Cap denominator")->default_val(8)->check(CLI::PositiveNumber);
    CLI::App* sylvester = app.add_subcommand("sylvester", "Frobenius number of {n^2, (n+1)^2}");
    add_n(sylvester);
    add_out(sylvester);
    CLI::App* fgamma = app.add_subcommand("fgamma", "Frobenius number of the sums of squares >= n^2");
    add_n(fgamma);
    add_out(fgamma);
    fgamma->add_flag("--witness", o.witness, "Print a decomposition of every integer in the certifying window");
    CLI::App* f4 = app.add_subcommand("f4", "Largest non-sum of at most four squares >= n^2 below factor*n^2");
    add_n(f4);
    add_out(f4);
    f4->add_option("--factor", o.factor, "Search bound factor")->default_val(64)->check(CLI::PositiveNumber);
    CLI::App* sweep = app.add_subcommand("sweep", "Classify every n in a range (kclass CSV)");
    add_range(sweep);
    add_out(sweep);
    CLI::App* table1 = app.add_subcommand("table1", "Aggregate K classes over a range (table1 CSV)");
    add_range(table1);
    add_out(table1);
    table1->add_option("--kclass", o.kclass, "Aggregate an existing kclass CSV instead of sweeping");
    CLI::App* table2 = app.add_subcommand("table2", "F(Gamma_n) and F(n) per n (table2 CSV)");
    table2->add_option("ns", o.ns, "Values of n (default: the published rows)");
    table2->add_option("--factor", o.factor, "Search bound factor for F(n)")->default_val(64)->check(
        CLI::PositiveNumber);
    add_out(table2);
    CLI::App* fig1 = app.add_subcommand("fig1", "Figure data with 46 n^2 and 64 n^2 bounds (fig1 CSV)");
    fig1->add_option("ns", o.ns, "Values of n (default: the published rows)");
    fig1->add_option("--factor", o.factor, "Search bound factor for F(n)")->default_val(64)->check(
        CLI::PositiveNumber);
    add_out(fig1);
    CLI::App* jacobi = app.add_subcommand("jacobi-verify", "Check r(n) = 8 sigma'(n) for all n <= limit");
    jacobi->add_option("limit", o.n, "Upper limit")->required();
    add_out(jacobi);

    std::vector<std::string> argv_store{"lsqlab"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kUsage;
    }

    CLI::App* verb = app.get_subcommands().front();
    try {
        if ((verb == sweep || verb == table1) && o.kclass.empty()) {
            if (o.from == 0 || o.from > o.to) {
                err << "error: need 1 <= --from <= --to\n" << verb->help();
                return kUsage;
            }
            if (o.to > kDefaultSweepCeiling && !o.full_range) {
                err << "error: --to " << o.to << " exceeds " << kDefaultSweepCeiling
                    << "; pass --full-range (long running, ~1 byte of state per n plus the rows)\n";
                return kUsage;
            }
        }

        // sweep manages its own --out file (it may be resuming into it)
        detail::Sink sink(verb == sweep ? std::string() : o.out, out);
        std::ostream& os = *sink;
        if (verb == reps) {
            detail::print_quads(os, enumerate_reps(o.n));
        } else if (verb == count) {
            const std::uint64_t r = ordered_signed_count(o.n);
            os << o.n << ' ' << r << '\n';
        } else if (verb == mink) {
            if (o.witness) {
                const RepAnalysis a = analyze(o.n);
                os << o.n << ' ' << a.min_k << '\n';
                detail::print_quads(os, a.witnesses);
            } else {
                const std::uint64_t k = min_k_fast(o.n);
                os << o.n << ' ' << k << '\n';
            }
        } else if (verb == analyze_cmd) {
            const RepAnalysis a = analyze(o.n);
            os << o.n << ' ' << a.min_k << ' ' << a.l_max << ' ' << a.reps.size() << ' '
               << (a.has_four_nonzero ? "true" : "false") << '\n';
            if (o.witness) detail::print_quads(os, a.witnesses);
        } else if (verb == inb) {
            const bool b = in_B(o.n);
            os << o.n << ' ' << (b ? "true" : "false") << '\n';
        } else if (verb == cap) {
            const CapCount c = cap_count(o.n, o.denom);
            os << o.n << ' ' << c.in_cap << ' ' << c.total << '\n';
        } else if (verb == sylvester) {
            const std::int64_t f = sylvester_frobenius(o.n);
            os << o.n << ' ' << f << '\n';
        } else if (verb == fgamma) {
            const GammaResult g = frobenius_gamma(o.n);
            os << o.n << ' ' << g.frobenius << '\n';
            if (o.witness) {
                for (std::uint64_t m = g.frobenius + 1; m <= g.certified_bound; ++m) {
                    const auto parts = gamma_decomposition(o.n, m);
                    if (!parts) throw verification_error("fgamma: window member m=" + std::to_string(m) +
                                                         " has no decomposition");
                    os << m << " =";
                    for (std::size_t i = 0; i < parts->size(); ++i) {
                        os << (i == 0 ? " " : " + ") << (*parts)[i] << "^2";
                    }
                    os << '\n';
                }
            }
        } else if (verb == f4) {
            const FourSquareResult r = f_four(o.n, o.factor);
            os << o.n << ' ' << r.largest_gap << '\n';
        } else if (verb == sweep) {
            SweepConfig cfg = detail::sweep_config(o);
            if (!o.out.empty()) {
                cfg.output_path = o.out;
                cfg.collect_rows = false;
            }
            const SweepResult r = sweep_classification(cfg);
            if (o.out.empty()) csv::write_kclass(os, r.rows);
        } else if (verb == table1) {
            if (!o.kclass.empty()) {
                std::ifstream in(o.kclass);
                if (!in) throw format_error("cannot open --kclass " + o.kclass);
                const auto rows = csv::read_kclass(in);
                Table1Summary s(rows.empty() ? 1 : rows.front().n);
                for (const auto& row : rows) {
                    if (row.n != s.range_hi() + 1) {
                        throw format_error("--kclass " + o.kclass + ": missing rows before n=" +
                                           std::to_string(row.n));
                    }
                    s.add(row);
                }
                csv::write_table1(os, s);
            } else {
                SweepConfig cfg = detail::sweep_config(o);
                cfg.collect_rows = false;
                csv::write_table1(os, sweep_classification(cfg).summary);
            }
        } else if (verb == table2) {
            csv::write_table2(os, table2_survey(o.ns.empty() ? table2_default_ns() : o.ns, o.factor));
        } else if (verb == fig1) {
            csv::write_fig1(os, figure1_data(o.ns.empty() ? table2_default_ns() : o.ns, o.factor));
        } else if (verb == jacobi) {
            lsq::detail::require_positive(o.n, "jacobi-verify");
            for (std::uint64_t n = 1; n <= o.n; ++n) {
                const std::uint64_t counted = ordered_signed_count(n);
                const std::uint64_t closed = jacobi_r(n);
                if (counted != closed) {
                    os << "MISMATCH " << n << " r=" << counted << " 8sigma'=" << closed << '\n';
                    return kVerification;
                }
            }
            os << "OK " << o.n << '\n';
        }
        os.flush();
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        err << (code == kVerification ? "verification failure: " : "error: ") << e.what() << '\n';
        return code;
    }
    return kOk;
}

}  // namespace lsq::cli
