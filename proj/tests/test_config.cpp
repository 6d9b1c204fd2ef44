#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "paracool/commands.hpp"
#include "paracool/config.hpp"
#include "paracool/errors.hpp"

using namespace paracool;

namespace {

std::string error_of(const std::string &text, const std::string &sub,
                     const std::map<std::string, std::string> &ov = {}) {
    try {
        parse_config(text, sub, ov);
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() /
               ("paracool_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string &args) {
    std::string cmd = std::string(PARACOOL_CLI_PATH) + " " + args + " 2>&1";
    CliResult r;
    FILE *p = popen(cmd.c_str(), "r");
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), p) != nullptr) {
        r.out += buf.data();
    }
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(ParseConfig, EmptyTextGivesDefaults) {
    for (const auto &sub : kSubcommands) {
        if (sub == "dissipative") {
            continue;
        }
        RunConfig cfg = parse_config("", sub);
        EXPECT_EQ(cfg.subcommand, sub);
        EXPECT_DOUBLE_EQ(cfg.trajectory.drive.lambda(), 0.01);
        EXPECT_DOUBLE_EQ(cfg.trajectory.drive.omega_p(), 2.0);
        EXPECT_EQ(cfg.trajectory.seed, 0u);
        EXPECT_DOUBLE_EQ(cfg.trajectory.ode.rel_tol, 1e-10);
        EXPECT_DOUBLE_EQ(cfg.quad.r_extra, 6.0);
        EXPECT_EQ(cfg.quad.n_angular, 64);
        EXPECT_EQ(cfg.resolved.size(), config_keys().size());
    }
}

TEST(ParseConfig, TextAndOverrides) {
    RunConfig cfg = parse_config("# comment\ndrive.lambda = 0.02\nseed=5\nprotocol.duration = 22.5pi\n", "ensemble",
                                 {{"seed", "9"}});
    EXPECT_DOUBLE_EQ(cfg.trajectory.drive.lambda(), 0.02);
    EXPECT_EQ(cfg.trajectory.seed, 9u);
    ASSERT_TRUE(cfg.trajectory.fixed_duration.has_value());
    EXPECT_NEAR(*cfg.trajectory.fixed_duration, 45 * 3.141592653589793 / 2, 1e-12);
}

TEST(ParseConfig, RangeErrorsNameKey) {
    std::string e = error_of("drive.lambda=0.3", "ensemble");
    EXPECT_NE(e.find("drive.lambda"), std::string::npos);
    EXPECT_NE(e.find("range"), std::string::npos);
    e = error_of("bath.gamma=-1", "dissipative");
    EXPECT_NE(e.find("bath.gamma"), std::string::npos);
    EXPECT_NE(error_of("bogus.key=1", "ensemble").find("bogus.key"), std::string::npos);
    EXPECT_NE(error_of("seed=1\nseed=2", "ensemble").find("duplicate"), std::string::npos);
    EXPECT_NE(error_of("drive.lambda", "ensemble"), "");
    EXPECT_NE(error_of("drive.lambda=abc", "ensemble"), "");
    EXPECT_NE(error_of("", "nope"), "");
}

TEST(ParseConfig, HorizonGuard) {
    std::string e = error_of("drive.lambda=0.2\nsweep.t_end=5000", "squeezing");
    EXPECT_NE(e.find("sweep.t_end"), std::string::npos);
}

TEST(ParseConfig, DissipativeRequiresGamma) {
    EXPECT_NE(error_of("", "dissipative").find("bath.gamma"), std::string::npos);
    RunConfig cfg = parse_config("bath.gamma=1e-4", "dissipative");
    EXPECT_DOUBLE_EQ(cfg.bath.gamma, 1e-4);
    EXPECT_NEAR(cfg.bath.nbar_B, 19.504166, 1e-6);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("").code, 1);
    EXPECT_EQ(run_cli("ensemble --bogus 3").code, 1);
    EXPECT_EQ(run_cli("ensemble --drive.lambda 0.3").code, 1);
    EXPECT_EQ(run_cli("dissipative").code, 1);
    EXPECT_EQ(run_cli("ensemble --config /nonexistent/file").code, 1);
    EXPECT_EQ(run_cli("--help").code, 0);
}

TEST(Cli, CsvLayoutAndPlotScript) {
    auto dir = scratch_dir();
    auto csv = dir / "traj.csv";
    ASSERT_EQ(run_cli("trajectory --seed 4 --output " + csv.string()).code, 0);
    std::string text = slurp(csv);
    EXPECT_EQ(text.rfind("# subcommand=trajectory\n", 0), 0u);
    EXPECT_NE(text.find("# drive.lambda=0.01\n"), std::string::npos);
    EXPECT_NE(text.find("\ncycle,t,xi_r,xi_phi,t_drive,n\n"), std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(dir.string() + "/traj.csv.gp"));

    auto ss = dir / "ss.csv";
    CliResult r = run_cli("steady-state --output " + ss.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(slurp(ss).find("\nr0,n_cycles,n_expected\n"), std::string::npos);
    auto pos = r.out.find("n_f=");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_NEAR(std::stod(r.out.substr(pos + 4)), 0.83, 0.02);
    std::filesystem::remove_all(dir);
}

TEST(Cli, OutputBytesIndependentOfWorkers) {
    auto dir = scratch_dir();
    for (const std::string sub : {"ensemble", "dissipative"}) {
        std::string extra = sub == "dissipative" ? " --bath.gamma 1e-4 --protocol.n_traj 40" : " --protocol.n_traj 300";
        std::string a = (dir / (sub + "_a.csv")).string();
        std::string b = (dir / (sub + "_b.csv")).string();
        std::string c = (dir / (sub + "_c.csv")).string();
        ASSERT_EQ(run_cli(sub + extra + " --seed 21 --workers 1 --output " + a).code, 0);
        ASSERT_EQ(run_cli(sub + extra + " --seed 21 --workers 4 --output " + b).code, 0);
        ASSERT_EQ(run_cli(sub + extra + " --seed 22 --workers 4 --output " + c).code, 0);
        EXPECT_EQ(slurp(a), slurp(b)) << sub;
        EXPECT_NE(slurp(a), slurp(c)) << sub;
    }
    std::filesystem::remove_all(dir);
}

TEST(Cli, ValidateSucceeds) {
    CliResult r = run_cli("validate");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(ValidationSuite, AllChecksPass) {
    for (const auto &c : oracle_convention_checks()) {
        EXPECT_TRUE(c.pass) << c.name << " value=" << c.value << " reference=" << c.reference;
    }
}
