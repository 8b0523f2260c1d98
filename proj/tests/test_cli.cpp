#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "porowave/config.hpp"
#include "porowave/trace_file.hpp"

namespace fs = std::filesystem;
using porowave::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "porowave");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("porowave_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        std::string text = slurp(PORO_CONFIG_DIR "/bulk_source.cfg");
        // a short coarse window keeps the trace commands quick
        text.replace(text.find("t_end = 1.4 s"), 13, "t_end = 0.6 s");
        text.replace(text.find("samples_per_period = 200"), 24, "samples_per_period = 20");
        small_ = write("small.cfg", text);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    fs::path dir_;
    std::string small_;
    const std::string bulk_ = PORO_CONFIG_DIR "/bulk_source.cfg";
};

int count_columns(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') {
            std::istringstream ls(line);
            int n = 0;
            std::string tok;
            while (ls >> tok) ++n;
            return n;
        }
    return -1;
}

}  // namespace

TEST_F(Cli, NoSubcommandIsConfigError) { EXPECT_EQ(call({}).code, porowave::cli::kConfigError); }

TEST_F(Cli, HelpAndVersion) {
    EXPECT_EQ(call({"--help"}).code, 0);
    const Result v = call({"--version"});
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find(porowave::cli::kVersion), std::string::npos);
}

TEST_F(Cli, Material) {
    const Result r = call({"material", bulk_});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* v : {"2692.", "1186.", "1409.", "2535.", "744.1", "1415."})
        EXPECT_NE(r.out.find(v), std::string::npos) << v;
}

TEST_F(Cli, Times) {
    const Result r = call({"times", bulk_});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("0.14904"), std::string::npos);
    EXPECT_NE(r.out.find("PsPs-"), std::string::npos);
}

TEST_F(Cli, Coeffs) {
    const Result r = call({"coeffs", bulk_, "--qx-re", "1e-4", "--qx-im", "-2e-4", "--qy", "5e-5", "--incidence", "Ps"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("T_S"), std::string::npos);
    EXPECT_EQ(call({"coeffs", bulk_, "--qx-re", "0", "--incidence", "S"}).code, porowave::cli::kConfigError);
    EXPECT_EQ(call({"coeffs", bulk_}).code, porowave::cli::kConfigError);  // --qx-re is required
}

TEST_F(Cli, ConfigErrorCarriesLineNumber) {
    std::string text = slurp(small_);
    text.replace(text.find("mu = 3 GPa"), 10, "mu = 3");
    const std::string bad = write("bad.cfg", text);
    const Result r = call({"material", bad});
    EXPECT_EQ(r.code, porowave::cli::kConfigError);
    EXPECT_NE(r.err.find("bad.cfg:"), std::string::npos) << r.err;
    EXPECT_EQ(call({"material", (dir_ / "missing.cfg").string()}).code, porowave::cli::kConfigError);
}

TEST_F(Cli, UnphysicalMaterialIsConfigError) {
    std::string text = slurp(small_);
    text.replace(text.find("porosity = 0.4"), 14, "porosity = 1.4");
    const Result r = call({"material", write("bad.cfg", text)});
    EXPECT_EQ(r.code, porowave::cli::kConfigError);
    EXPECT_NE(r.err.find("unphysical material"), std::string::npos);
}

TEST_F(Cli, QuadratureFailureIsNumerical) {
    std::string text = slurp(small_) + "\n[numerics]\nrel_tol = 1e-14\nref_tol = 0\nmax_intervals = 1\n";
    const Result r = call({"green", write("hard.cfg", text), "-o", (dir_ / "out").string()});
    EXPECT_EQ(r.code, porowave::cli::kNumericalFailure) << r.err;
    EXPECT_NE(r.err.find("numerical failure"), std::string::npos);
}

TEST_F(Cli, ThreadsEnvironment) {
    ::setenv("PORO_THREADS", "zero", 1);
    EXPECT_EQ(call({"material", small_}).code, porowave::cli::kConfigError);
    ::setenv("PORO_THREADS", "2", 1);
    EXPECT_EQ(call({"material", small_}).code, 0);
    ::unsetenv("PORO_THREADS");
}

TEST_F(Cli, GreenFilesAreDeterministic) {
    const fs::path a = dir_ / "a", b = dir_ / "b", c = dir_ / "c";
    ASSERT_EQ(call({"green", small_, "-o", a.string()}).code, 0);
    ASSERT_EQ(call({"green", small_, "-o", b.string()}).code, 0);
    ::setenv("PORO_THREADS", "3", 1);
    ASSERT_EQ(call({"green", small_, "-o", c.string(), "--serial"}).code, 0);
    ::unsetenv("PORO_THREADS");
    for (const char* f : {"green_r1.txt", "green_r2.txt"}) {
        const std::string ta = slurp(a / f);
        EXPECT_FALSE(ta.empty());
        EXPECT_EQ(ta, slurp(b / f)) << f;
        EXPECT_EQ(ta, slurp(c / f)) << f;
    }
    EXPECT_EQ(count_columns(slurp(a / "green_r1.txt")), 1 + 3 * (8 + 1));
    EXPECT_EQ(count_columns(slurp(a / "green_r2.txt")), 1 + 3 * (6 + 1));
}

TEST_F(Cli, SeismogramHeaderReparses) {
    const fs::path o = dir_ / "s";
    const Result r = call({"seismogram", small_, "-o", o.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream f(o / "seismogram_r1.txt");
    const porowave::ProblemConfig back = porowave::config_from_trace(f);
    EXPECT_TRUE(back == porowave::load_config(small_));
    const std::string text = slurp(o / "seismogram_r1.txt");
    EXPECT_NE(text.find("# porowave seismogram trace"), std::string::npos);
    EXPECT_EQ(count_columns(text), 28);
}

TEST_F(Cli, ValidateFast) {
    const fs::path csv = dir_ / "report.csv";
    const Result r = call({"validate", small_, "--fast", "--samples", "100", "--csv", csv.string()});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
    EXPECT_NE(slurp(csv).find("check,max_error"), std::string::npos);
    EXPECT_EQ(call({"validate", small_, "--samples", "0"}).code, porowave::cli::kConfigError);
}
