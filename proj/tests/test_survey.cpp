#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "lsqlab/arith.hpp"
#include "lsqlab/checkpoint.hpp"
#include "lsqlab/csv.hpp"
#include "lsqlab/survey.hpp"

namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = fs::temp_directory_path() /
                ("lsqlab_" + std::to_string(::getpid()) + "_" + info->test_suite_name() + "_" + info->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& leaf) const { return path_ / leaf; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

lsq::SweepConfig range(std::uint64_t lo, std::uint64_t hi, unsigned workers = 1) {
    lsq::SweepConfig cfg;
    cfg.range_lo = lo;
    cfg.range_hi = hi;
    cfg.worker_count = workers;
    return cfg;
}

TEST(Summary, AddAndMergeAgree) {
    lsq::Table1Summary whole(1), left(1), right(51);
    for (std::uint64_t n = 1; n <= 100; ++n) {
        const auto row = lsq::classify(n, lsq::is_squarefree(n));
        whole.add(row);
        (n <= 50 ? left : right).add(row);
    }
    left.merge(right);
    EXPECT_EQ(left, whole);
    EXPECT_EQ(whole.total(), 100u);
    lsq::Table1Summary gap(1);
    EXPECT_THROW(gap.add(lsq::classify(2, true)), lsq::verification_error);
    lsq::Table1Summary far(70);
    far.add(lsq::classify(70, true));
    lsq::Table1Summary copy = whole;
    EXPECT_THROW(copy.merge(far), lsq::verification_error);
}

TEST(Sweep, SingleInteger) {
    const auto r = lsq::sweep_classification(range(1, 1));
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0], (lsq::KClassRow{1, 1, 1, true}));
    EXPECT_EQ(r.summary.at(1).count_I, 1u);
    EXPECT_EQ(r.summary.at(1).max_S, 1u);
    EXPECT_TRUE(r.complete);
}

TEST(Sweep, PerfectSquaresUpTo100) {
    const auto r = lsq::sweep_classification(range(1, 100));
    EXPECT_EQ(r.summary.at(1).count_I, 10u);
    EXPECT_EQ(r.summary.total(), 100u);
}

TEST(Sweep, NamedClassesUpTo60) {
    const auto r = lsq::sweep_classification(range(1, 60));
    ASSERT_EQ(r.rows.size(), 60u);
    EXPECT_EQ(r.rows[10 - 1].min_k, 4u);
    EXPECT_EQ(r.rows[30 - 1].min_k, 6u);
    EXPECT_EQ(r.rows[46 - 1].min_k, 7u);
    EXPECT_EQ(r.rows[55 - 1].min_k, 8u);
}

TEST(Sweep, RowInvariants) {
    auto cfg = range(1, 3000, 2);
    cfg.block_size = 128;
    cfg.verify_stride = 1;
    const auto r = lsq::sweep_classification(cfg);
    ASSERT_EQ(r.rows.size(), 3000u);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        ASSERT_EQ(row.n, i + 1);
        ASSERT_GE(row.min_k, 1u);
        ASSERT_GE(row.min_k * row.min_k * row.l_max * row.l_max, row.n);
        ASSERT_EQ(row.squarefree, lsq::is_squarefree(row.n));
    }
    std::uint64_t s_total = 0;
    for (const auto& [k, agg] : r.summary.by_k()) {
        ASSERT_LE(agg.count_S, agg.count_I);
        s_total += agg.count_S;
        if (agg.max_S) {
            ASSERT_TRUE(lsq::is_squarefree(*agg.max_S));
            ASSERT_EQ(r.rows[*agg.max_S - 1].min_k, k);
        }
    }
    EXPECT_EQ(r.summary.total(), 3000u);
    EXPECT_GT(s_total, 0u);
}

TEST(Sweep, ConfigValidation) {
    EXPECT_THROW(lsq::sweep_classification(range(0, 5)), lsq::domain_error);
    EXPECT_THROW(lsq::sweep_classification(range(6, 5)), lsq::domain_error);
    EXPECT_THROW(lsq::sweep_classification(range(1, 5, 0)), lsq::domain_error);
    EXPECT_THROW(lsq::sweep_classification(range(1, lsq::kDefaultSweepCeiling + 1)), lsq::domain_error);
    auto cfg = range(lsq::kDefaultSweepCeiling + 1, lsq::kDefaultSweepCeiling + 10);
    cfg.full_range = true;
    EXPECT_EQ(lsq::sweep_classification(cfg).rows.size(), 10u);
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
    TempDir dir;
    std::string first_rows, first_table;
    for (unsigned workers : {1u, 4u, 8u}) {
        auto cfg = range(1, 10000, workers);
        cfg.block_size = 512;
        cfg.output_path = dir / ("kclass_" + std::to_string(workers) + ".csv");
        cfg.collect_rows = false;
        const auto r = lsq::sweep_classification(cfg);
        std::ostringstream table;
        lsq::csv::write_table1(table, r.summary);
        const std::string rows = slurp(*cfg.output_path);
        if (workers == 1) {
            first_rows = rows;
            first_table = table.str();
        } else {
            EXPECT_EQ(rows, first_rows) << workers;
            EXPECT_EQ(table.str(), first_table) << workers;
        }
    }
}

TEST(Sweep, ResumeMatchesUninterrupted) {
    TempDir dir;
    auto full = range(1, 100);
    full.block_size = 10;
    full.output_path = dir / "full.csv";
    const auto uninterrupted = lsq::sweep_classification(full);

    auto part = full;
    part.worker_count = 3;
    part.output_path = dir / "part.csv";
    part.checkpoint_path = dir / "sweep.ckpt";
    part.halt_after = 50;
    const auto halted = lsq::sweep_classification(part);
    EXPECT_FALSE(halted.complete);
    EXPECT_EQ(lsq::checkpoint_read(*part.checkpoint_path).last_n, 50u);

    part.halt_after.reset();
    const auto resumed = lsq::sweep_classification(part);
    EXPECT_TRUE(resumed.complete);
    EXPECT_EQ(resumed.rows.size(), 50u);
    EXPECT_EQ(resumed.summary, uninterrupted.summary);
    EXPECT_EQ(slurp(*part.output_path), slurp(*full.output_path));

    // Resuming a finished sweep is a no-op.
    const auto again = lsq::sweep_classification(part);
    EXPECT_TRUE(again.rows.empty());
    EXPECT_EQ(again.summary, uninterrupted.summary);
}

TEST(Sweep, ResumeDropsRowsPastCheckpoint) {
    TempDir dir;
    auto cfg = range(1, 40);
    cfg.block_size = 10;
    cfg.output_path = dir / "rows.csv";
    cfg.checkpoint_path = dir / "c.ckpt";
    cfg.halt_after = 20;
    lsq::sweep_classification(cfg);
    // Simulate a crash after rows were flushed but before the checkpoint moved.
    {
        std::ofstream out(*cfg.output_path, std::ios::app);
        lsq::csv::write_kclass_row(out, lsq::classify(21, true));
    }
    cfg.halt_after.reset();
    lsq::sweep_classification(cfg);
    std::ifstream in(*cfg.output_path);
    const auto rows = lsq::csv::read_kclass(in);
    ASSERT_EQ(rows.size(), 40u);
    EXPECT_EQ(rows.back().n, 40u);
}

TEST(Checkpoint, EmptySweepRecordsRangeStart) {
    TempDir dir;
    auto cfg = range(10, 30);
    cfg.checkpoint_path = dir / "c.ckpt";
    cfg.halt_after = 5;
    const auto r = lsq::sweep_classification(cfg);
    EXPECT_TRUE(r.rows.empty());
    const auto st = lsq::checkpoint_read(*cfg.checkpoint_path);
    EXPECT_EQ(st.last_n, 9u);
    EXPECT_TRUE(st.by_k.empty());
    EXPECT_EQ(slurp(*cfg.checkpoint_path), "lsqlab-ckpt v1\nlast_n=9\n");
}

TEST(Checkpoint, RoundTrip) {
    lsq::CheckpointState st;
    st.last_n = 1234;
    st.by_k[1] = {35, 1, 1};
    st.by_k[2] = {900, 600, 1233};
    st.by_k[4] = {3, 0, std::nullopt};
    std::ostringstream out;
    lsq::checkpoint_write(out, st);
    EXPECT_EQ(out.str(),
              "lsqlab-ckpt v1\nlast_n=1234\nK=1,count_I=35,count_S=1,max_S=1\n"
              "K=2,count_I=900,count_S=600,max_S=1233\nK=4,count_I=3,count_S=0,max_S=\n");
    std::istringstream in(out.str());
    EXPECT_EQ(lsq::checkpoint_read(in), st);
}

TEST(Checkpoint, RejectsBadInput) {
    auto read = [](const std::string& text) {
        std::istringstream in(text);
        return lsq::checkpoint_read(in);
    };
    EXPECT_THROW(read(""), lsq::format_error);
    EXPECT_THROW(read("lsqlab-ckpt v2\nlast_n=3\n"), lsq::format_error);
    EXPECT_THROW(read("lsqlab-ckpt v1\nlast=3\n"), lsq::format_error);
    EXPECT_THROW(read("lsqlab-ckpt v1\nlast_n=x\n"), lsq::format_error);
    EXPECT_THROW(read("lsqlab-ckpt v1\nlast_n=3\nK=1,count_I=3\n"), lsq::format_error);
    EXPECT_THROW(read("lsqlab-ckpt v1\nlast_n=3\nK=1,count_I=1,count_S=2,max_S=1\n"), lsq::format_error);
    EXPECT_THROW(read("lsqlab-ckpt v1\nlast_n=3\nK=1,count_I=1,count_S=0,max_S=1\n"), lsq::format_error);
}

TEST(Checkpoint, InconsistentWithRangeIsFormatError) {
    TempDir dir;
    const auto path = dir / "c.ckpt";
    {
        std::ofstream out(path);
        out << "lsqlab-ckpt v1\nlast_n=20\nK=2,count_I=3,count_S=1,max_S=2\n";
    }
    auto cfg = range(1, 40);
    cfg.checkpoint_path = path;
    EXPECT_THROW(lsq::sweep_classification(cfg), lsq::format_error);
    {
        std::ofstream out(path);
        out << "lsqlab-ckpt v0\nlast_n=0\n";
    }
    EXPECT_THROW(lsq::sweep_classification(cfg), lsq::format_error);
}

TEST(Csv, RoundTripsAreByteIdentical) {
    const auto sweep = lsq::sweep_classification(range(1, 2000));
    std::ostringstream k1, t1, t2, f1;
    lsq::csv::write_kclass(k1, sweep.rows);
    lsq::csv::write_table1(t1, sweep.summary);
    lsq::csv::write_table2(t2, lsq::table2_survey({2, 3, 4, 5}));
    lsq::csv::write_fig1(f1, lsq::figure1_data({2, 5, 20}));

    std::istringstream k1i(k1.str()), t1i(t1.str()), t2i(t2.str()), f1i(f1.str());
    std::ostringstream k2, t1b, t2b, f2;
    lsq::csv::write_kclass(k2, lsq::csv::read_kclass(k1i));
    lsq::csv::write_table1(t1b, lsq::csv::read_table1(t1i));
    lsq::csv::write_table2(t2b, lsq::csv::read_table2(t2i));
    lsq::csv::write_fig1(f2, lsq::csv::read_fig1(f1i));
    EXPECT_EQ(k2.str(), k1.str());
    EXPECT_EQ(t1b.str(), t1.str());
    EXPECT_EQ(t2b.str(), t2.str());
    EXPECT_EQ(f2.str(), f1.str());
    EXPECT_EQ(k1.str().substr(0, 42), "n,min_k,l_max,squarefree\n1,1,1,true\n2,2,1,");
    EXPECT_EQ(f1.str(), "n,f_gamma,f_four,bound46,bound64\n2,23,55,184,256\n5,201,736,1150,1600\n"
                        "20,2764,11776,18400,25600\n");
}

TEST(Csv, Table1LeavesEmptyMaxS) {
    const auto sweep = lsq::sweep_classification(range(1, 60));
    std::ostringstream out;
    lsq::csv::write_table1(out, sweep.summary);
    // seven squares up to 60, only 1 of them squarefree
    EXPECT_EQ(out.str().substr(0, 34), "K,count_I,count_S,max_S\n1,7,1,1\n2,");
    auto sweep4 = lsq::sweep_classification(range(4, 4));
    std::ostringstream four;
    lsq::csv::write_table1(four, sweep4.summary);
    EXPECT_EQ(four.str(), "K,count_I,count_S,max_S\n1,1,0,\n");
}

TEST(Csv, RejectsMalformed) {
    auto kclass = [](const std::string& s) {
        std::istringstream in(s);
        return lsq::csv::read_kclass(in);
    };
    EXPECT_THROW(kclass("n,min_k,l_max\n"), lsq::format_error);
    EXPECT_THROW(kclass("n,min_k,l_max,squarefree\n1,1,1,yes\n"), lsq::format_error);
    EXPECT_THROW(kclass("n,min_k,l_max,squarefree\n1,01,1,true\n"), lsq::format_error);
    EXPECT_THROW(kclass("n,min_k,l_max,squarefree\n2,1,1,true\n1,1,1,true\n"), lsq::format_error);
    std::istringstream t1("K,count_I,count_S,max_S\n2,1,0,\n");
    EXPECT_THROW(lsq::csv::read_table1(t1), lsq::format_error);
}

TEST(Table2Survey, PublishedRows) {
    EXPECT_EQ(lsq::table2_survey({2}), (std::vector<lsq::Table2Row>{{2, 23, 55}}));
    EXPECT_EQ(lsq::table2_survey({7}), (std::vector<lsq::Table2Row>{{7, 376, 736}}));
    EXPECT_EQ(lsq::table2_survey({100}), (std::vector<lsq::Table2Row>{{100, 57408, 188416}}));
}

TEST(Table2Survey, AnnotatesFailingN) {
    try {
        lsq::table2_survey({2, 1});
        FAIL() << "expected domain_error";
    } catch (const lsq::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("n=1"), std::string::npos) << e.what();
    }
}

TEST(Figure1, Rows) {
    EXPECT_EQ(lsq::figure1_data({5}), (std::vector<lsq::Fig1Row>{{5, 201, 736, 1150, 1600}}));
    EXPECT_EQ(lsq::figure1_data({2}), (std::vector<lsq::Fig1Row>{{2, 23, 55, 184, 256}}));
    EXPECT_EQ(lsq::figure1_data({20}), (std::vector<lsq::Fig1Row>{{20, 2764, 11776, 18400, 25600}}));
}

}  // namespace
