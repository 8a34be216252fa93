#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "cli/config.hpp"
#include "cli/presets.hpp"
#include "cli/runner.hpp"
#include "mprelay/channel.hpp"

using namespace mprelay;
using namespace mprelay::cli;
namespace fs = std::filesystem;

namespace {

std::optional<ConfigError> config_error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e;
    }
    return std::nullopt;
}

// Expects a ConfigError at the given line whose message mentions `needle`.
void expect_error(const std::string& text, std::size_t line, const std::string& needle) {
    const auto err = config_error_of([&] { (void)parse_config_text(text, "t.cfg"); });
    REQUIRE_MESSAGE(err.has_value(), "no error for: " << needle);
    CHECK(err->line() == line);
    CHECK_MESSAGE(std::string(err->what()).find(needle) != std::string::npos,
                  "got: " << err->what());
}

constexpr const char* kValidConfig = R"(# full example
schemes = mrc, zf
case = case3
e_t = 3db
e_r = 20lin

n0 = 2lin
k = 3
eta1 = 1,2,0.5
eta2 = 0.25,1,4
n = 8, 16, 64
trials = 50
seed = 42
threads = 2
out = result.csv
)";

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

// Runs the installed binary inside `dir`, capturing exit code and streams.
RunResult run_cli(const std::string& args, const fs::path& dir) {
    fs::create_directories(dir);
    const std::string cmd = "cd '" + dir.string() + "' && '" + MPRELAY_BIN + "' " + args +
                            " > stdout.txt 2> stderr.txt";
    const int rc = std::system(cmd.c_str());
    const int exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return {exit_code, read_file(dir / "stdout.txt"), read_file(dir / "stderr.txt")};
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path("cli_e2e") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("power parsing") {
    CHECK(parse_power("3lin", "p", 1) == 3.0);
    CHECK(parse_power("10db", "p", 1) == doctest::Approx(10.0));
    CHECK(parse_power("-3db", "p", 1) == doctest::Approx(0.5011872336272722));
    CHECK(parse_power("1.5e1lin", "p", 1) == 15.0);
    CHECK(parse_power(" 2lin ", "p", 1) == 2.0);

    const auto missing = config_error_of([] { (void)parse_power("10", "p", 42); });
    REQUIRE(missing.has_value());
    CHECK(missing->line() == 42);
    CHECK(std::string(missing->what()).find("p:42:") == 0);
    CHECK(std::string(missing->what()).find("missing unit suffix") != std::string::npos);

    CHECK(config_error_of([] { (void)parse_power("10dB", "p", 1); }).has_value());
    CHECK(config_error_of([] { (void)parse_power("db", "p", 1); }).has_value());
    CHECK(config_error_of([] { (void)parse_power("x3lin", "p", 1); }).has_value());
    CHECK(config_error_of([] { (void)parse_power("-3lin", "p", 1); }).has_value());
    CHECK(config_error_of([] { (void)parse_power("0lin", "p", 1); }).has_value());
    CHECK(config_error_of([] { (void)parse_power("1e999lin", "p", 1); }).has_value());
}

TEST_CASE("a complete config parses into every field") {
    const ExperimentConfig cfg = parse_config_text(kValidConfig, "t.cfg");
    REQUIRE(cfg.schemes.size() == 2);
    CHECK(cfg.schemes[0] == RelayScheme::MrcMrt);
    CHECK(cfg.schemes[1] == RelayScheme::Zf);
    const CaseIII* sc = std::get_if<CaseIII>(&cfg.scaling);
    REQUIRE(sc != nullptr);
    CHECK(sc->e_t == doctest::Approx(db_to_linear(3.0)));
    CHECK(sc->e_r == 20.0);
    CHECK(cfg.noise_power == 2.0);
    CHECK(cfg.n_pairs == 3);
    CHECK(cfg.eta1 == std::vector<double>{1.0, 2.0, 0.5});
    CHECK(cfg.eta2 == std::vector<double>{0.25, 1.0, 4.0});
    CHECK(cfg.antenna_counts == std::vector<std::size_t>{8, 16, 64});
    CHECK(cfg.trials == 50);
    CHECK(cfg.seed == 42);
    CHECK(cfg.threads == 2);
    CHECK(cfg.out_path == "result.csv");
    CHECK(cfg.profile().n_pairs() == 3);
    const SweepSpec spec = cfg.to_sweep_spec();
    CHECK(spec.trials == 50);
    CHECK(spec.noise_power == 2.0);
}

TEST_CASE("defaults when optional keys are absent") {
    const ExperimentConfig cfg = parse_config_text(
        "schemes = naive\ncase = unscaled\np_t = 1lin\np_r = 2lin\nk = 2\nn = 4,8\n", "t.cfg");
    CHECK(cfg.noise_power == 1.0);
    CHECK(cfg.eta1 == std::vector<double>{1.0, 1.0});
    CHECK(cfg.eta2 == std::vector<double>{1.0, 1.0});
    CHECK(cfg.trials == 1000);
    CHECK(cfg.seed == 1);
    CHECK(cfg.threads == 1);
    CHECK(cfg.out_path.empty());
    CHECK(std::holds_alternative<Unscaled>(cfg.scaling));
}

TEST_CASE("config error reporting carries the offending line") {
    expect_error("schemes = mrc\nfoo = 1\n", 2, "unknown key 'foo'");
    expect_error("schemes = mrc\nschemes = zf\n", 2, "duplicate key 'schemes'");
    expect_error("schemes = mrc\njust words\n", 2, "expected 'key = value'");
    expect_error("schemes =\n", 1, "empty value for key 'schemes'");
    expect_error("schemes = mrc,dft\n", 1, "unknown scheme 'dft'");
    expect_error("schemes = mrc,mrc\n", 1, "listed twice");
    expect_error("schemes = mrc\ncase = case9\n", 2, "unknown case 'case9'");
    expect_error(
        "schemes = mrc\ncase = case1\ne_t = 1lin\np_r = 1lin\np_t = 1lin\nk = 1\nn = 4\n", 5,
        "key 'p_t' does not apply to case1");
    expect_error("schemes = mrc\ncase = case2\np_t = 1lin\ne_r = 1lin\nk = 0\nn = 4\n", 5,
                 "k must be at least 1");
    expect_error("schemes = mrc\ncase = case2\np_t = 1lin\ne_r = 1lin\nk = two\nn = 4\n", 5,
                 "invalid integer");
    expect_error(
        "schemes = mrc\ncase = case1\ne_t = 1lin\np_r = 1lin\nk = 2\neta1 = 1\nn = 4\n", 6,
        "eta1 must list exactly k = 2 values");
    expect_error(
        "schemes = mrc\ncase = case1\ne_t = 1lin\np_r = 1lin\nk = 2\neta2 = 1,0\nn = 4\n", 6,
        "eta2 entries must be positive");
    expect_error("schemes = mrc\ncase = case1\ne_t = 1lin\np_r = 1lin\nk = 1\nn = 8,8\n", 6,
                 "strictly increasing");
    expect_error("schemes = mrc\ncase = case1\ne_t = 1lin\np_r = 1lin\nk = 1\nn = 0,8\n", 6,
                 "antenna counts must be positive");
    expect_error(
        "schemes = mrc\ncase = case1\ne_t = 1lin\np_r = 1lin\nk = 1\nn = 8\ntrials = 1\n", 7,
        "trials must be at least 2");
    expect_error(
        "schemes = mrc\ncase = case1\ne_t = 1lin\np_r = 1lin\nk = 1\nn = 8\nthreads = 0\n", 7,
        "threads must be between");
    expect_error(
        "schemes = mrc\ncase = case1\ne_t = 1lin\np_r = 1lin\nk = 1\nn = 8\nseed = -1\n", 7,
        "invalid integer");
    expect_error("schemes = mrc\ncase = case1\ne_t = 5\np_r = 1lin\nk = 1\nn = 8\n", 3,
                 "missing unit suffix");
}

TEST_CASE("missing required keys are reported without a line") {
    const std::string base = "schemes = mrc\ncase = case1\ne_t = 1lin\np_r = 1lin\nk = 1\n";
    const auto err = config_error_of([&] { (void)parse_config_text(base, "t.cfg"); });
    REQUIRE(err.has_value());
    CHECK(err->line() == 0);
    CHECK(std::string(err->what()) == "t.cfg: missing required key 'n'");
    const auto err2 = config_error_of(
        [] { (void)parse_config_text("schemes = mrc\ncase = case1\np_r = 1lin\nk = 1\nn = 4\n",
                                     "t.cfg"); });
    REQUIRE(err2.has_value());
    CHECK(std::string(err2->what()) == "t.cfg: missing required key 'e_t'");
}

TEST_CASE("missing config file") {
    const auto err =
        config_error_of([] { (void)parse_config_file("/nonexistent/nope.cfg"); });
    REQUIRE(err.has_value());
    CHECK(err->line() == 0);
    CHECK(std::string(err->what()).find("cannot open") != std::string::npos);
}

TEST_CASE("presets parse, round-trip, and carry the documented values") {
    for (FigurePreset p : {FigurePreset::Fig2, FigurePreset::Fig3, FigurePreset::Fig4,
                           FigurePreset::Fig5}) {
        const PresetBundle bundle = preset_bundle(p);
        CHECK(parse_config_text(to_config_text(bundle.config), "rt") == bundle.config);
    }

    const PresetBundle fig2 = preset_bundle(FigurePreset::Fig2);
    REQUIRE(fig2.config.schemes.size() == 3);
    const CaseI* c1 = std::get_if<CaseI>(&fig2.config.scaling);
    REQUIRE(c1 != nullptr);
    CHECK(c1->e_t == doctest::Approx(10.0));
    CHECK(c1->p_r == 1.0);
    CHECK(fig2.config.n_pairs == 5);
    CHECK(fig2.config.antenna_counts.back() == 512);
    CHECK(fig2.config.out_path == "fig2.csv");

    const PresetBundle fig3 = preset_bundle(FigurePreset::Fig3);
    CHECK(std::holds_alternative<CaseII>(fig3.config.scaling));
    CHECK(fig3.config.antenna_counts.back() == 1024);
    REQUIRE(fig3.notes.size() == 1);
    CHECK(fig3.notes[0].find("4.73") != std::string::npos);
    CHECK(fig3.notes[0].find("3.96241") != std::string::npos);

    const PresetBundle fig4 = preset_bundle(FigurePreset::Fig4);
    CHECK(std::holds_alternative<CaseIII>(fig4.config.scaling));

    const PresetBundle fig5 = preset_bundle(FigurePreset::Fig5);
    const CaseII* c2 = std::get_if<CaseII>(&fig5.config.scaling);
    REQUIRE(c2 != nullptr);
    CHECK(c2->e_r == 100.0);
    CHECK(c2->p_t == 1.0);
    CHECK(fig5.config.eta1 == std::vector<double>{2.0, 2.0, 2.0});
    CHECK(fig5.config.eta2 == std::vector<double>{1.0, 3.0, 3.0});
    CHECK(fig5.config.antenna_counts.back() == 2048);
    REQUIRE(fig5.csv_comments.size() == 2);
    CHECK(fig5.csv_comments[0].find("derived-parameter") != std::string::npos);

    CHECK(preset_from_name("fig2") == FigurePreset::Fig2);
    CHECK(preset_from_name("fig5") == FigurePreset::Fig5);
    CHECK_FALSE(preset_from_name("fig9").has_value());
    CHECK_FALSE(preset_from_name("FIG2").has_value());
    CHECK_FALSE(preset_from_name("").has_value());
}

TEST_CASE("csv rendering is stable") {
    CHECK(fmt6(8.648579046593243) == "8.64858");
    CHECK(fmt6(3.3598860030434032) == "3.35989");
    CHECK(fmt6(3.96240625180289) == "3.96241");
    CHECK(fmt6(60.0) == "60");
    CHECK(fmt6(0.001234) == "0.001234");

    const PresetBundle fig2 = preset_bundle(FigurePreset::Fig2);
    const std::vector<SweepRow> rows{
        {RelayScheme::MrcMrt, 512, Estimate{8.648579046593243, 0.001234, 2000},
         8.648579046593243}};
    CHECK(sweep_csv(fig2.config, rows, {}) ==
          "scheme,case,N,trials,sum_rate_mean,sum_rate_stderr,asymptote\n"
          "mrc,case1,512,2000,8.64858,0.001234,8.64858\n");

    const std::vector<SweepRow> unscaled_rows{
        {RelayScheme::Zf, 16, Estimate{1.5, 0.01, 10}, std::nullopt}};
    ExperimentConfig unscaled = fig2.config;
    unscaled.scaling = Unscaled{1.0, 1.0};
    CHECK(sweep_csv(unscaled, unscaled_rows, {"# note"}) ==
          "# note\n"
          "scheme,case,N,trials,sum_rate_mean,sum_rate_stderr,asymptote\n"
          "zf,unscaled,16,10,1.5,0.01,\n");

    const PresetBundle fig5 = preset_bundle(FigurePreset::Fig5);
    const std::string table = asymptote_csv(fig5.config, fig5.csv_comments);
    CHECK(table.find("# derived-parameter: p_t = 1lin\n") == 0);
    CHECK(table.find("scheme,k,eta1,eta2,sinr,rate\n") != std::string::npos);
    CHECK(table.find("mrc,1,2,1,14.2857,") != std::string::npos);
    CHECK(table.find("mrc,sum,,,,8.98466\n") != std::string::npos);
    CHECK(table.find("zf,1,2,1,60,2.96537\n") != std::string::npos);
    CHECK(table.find("zf,sum,,,,8.89611\n") != std::string::npos);
}

TEST_CASE("binary: argument and config failures exit with code 2") {
    CHECK(run_cli("", fresh_dir("noargs")).exit_code == 2);
    CHECK(run_cli("frobnicate", fresh_dir("badsub")).exit_code == 2);
    CHECK(run_cli("sweep /nonexistent/nope.cfg", fresh_dir("nofile")).exit_code == 2);
    CHECK(run_cli("reproduce fig9", fresh_dir("badfig")).exit_code == 2);

    const fs::path dir = fresh_dir("badsuffix");
    write_file(dir / "bad.cfg",
               "schemes = mrc\ncase = case1\ne_t = 10\np_r = 1lin\nk = 2\nn = 8\n");
    const RunResult r = run_cli("sweep bad.cfg", dir);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("bad.cfg:3:") != std::string::npos);

    const fs::path udir = fresh_dir("unscaled_asym");
    write_file(udir / "u.cfg",
               "schemes = mrc\ncase = unscaled\np_t = 1lin\np_r = 1lin\nk = 2\nn = 8\n");
    const RunResult ua = run_cli("asymptote u.cfg", udir);
    CHECK(ua.exit_code == 2);
    CHECK(ua.err.find("no deterministic large-N limit") != std::string::npos);
}

TEST_CASE("binary: infeasible zero-forcing exits with code 3") {
    const fs::path dir = fresh_dir("zf_infeasible");
    write_file(dir / "z.cfg",
               "schemes = zf\ncase = case1\ne_t = 10db\np_r = 1lin\nk = 5\nn = 2,8\n"
               "trials = 4\n");
    const RunResult r = run_cli("sweep z.cfg", dir);
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("zero-forcing infeasible") != std::string::npos);
}

TEST_CASE("binary: asymptote preset output is correct and replayable") {
    const fs::path a = fresh_dir("asym_a");
    const RunResult first = run_cli("asymptote fig4", a);
    CHECK(first.exit_code == 0);
    CHECK(first.out.find("3.35989") != std::string::npos);
    const std::string csv_a = read_file(a / "fig4_asymptote.csv");
    CHECK_FALSE(csv_a.empty());

    const fs::path b = fresh_dir("asym_b");
    const RunResult second = run_cli("asymptote fig4", b);
    CHECK(second.exit_code == 0);
    CHECK(second.out == first.out);
    CHECK(read_file(b / "fig4_asymptote.csv") == csv_a);
}

TEST_CASE("binary: sweeps replay byte for byte, independent of threads") {
    const std::string base_cfg =
        "schemes = mrc,zf,naive\ncase = case1\ne_t = 10db\np_r = 1lin\nk = 5\n"
        "n = 8,16\ntrials = 60\nseed = 12\nout = s.csv\n";
    const fs::path a = fresh_dir("sweep_a");
    write_file(a / "c.cfg", base_cfg);
    REQUIRE(run_cli("sweep c.cfg", a).exit_code == 0);
    const std::string csv_a = read_file(a / "s.csv");
    REQUIRE_FALSE(csv_a.empty());

    const fs::path b = fresh_dir("sweep_b");
    write_file(b / "c.cfg", base_cfg);
    REQUIRE(run_cli("sweep c.cfg", b).exit_code == 0);
    CHECK(read_file(b / "s.csv") == csv_a);

    const fs::path c = fresh_dir("sweep_c");
    write_file(c / "c.cfg", base_cfg + "threads = 4\n");
    REQUIRE(run_cli("sweep c.cfg", c).exit_code == 0);
    CHECK(read_file(c / "s.csv") == csv_a);
}

TEST_CASE("binary: reproduce honors overrides") {
    const fs::path dir = fresh_dir("repro");
    const RunResult r = run_cli("reproduce fig2 --trials 2 --seed 5 --out quick.csv", dir);
    CHECK(r.exit_code == 0);
    const std::string csv = read_file(dir / "quick.csv");
    CHECK(csv.find("scheme,case,N,trials,") == 0);
    CHECK(csv.find("mrc,case1,512,2,") != std::string::npos);
    CHECK(csv.find("naive,case1,32,2,") != std::string::npos);
    CHECK(r.err.find("wrote quick.csv (15 rows, 2 trials per point)") != std::string::npos);
}

TEST_CASE("binary: reproduce fig3 reports the limit discrepancy note") {
    const fs::path dir = fresh_dir("fig3_note");
    const RunResult r = run_cli("reproduce fig3 --trials 2", dir);
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("INFO fig3") != std::string::npos);
    CHECK(r.err.find("4.73") != std::string::npos);
}

TEST_CASE("binary: the checker passes clean and catches an injected fault") {
    const RunResult clean = run_cli("check", fresh_dir("check_clean"));
    CHECK(clean.exit_code == 0);
    CHECK(clean.out.find("INFO fig3") != std::string::npos);
    CHECK(clean.out.find("4.73") != std::string::npos);
    CHECK(clean.out.find("PASS power-constraint") != std::string::npos);
    CHECK(clean.out.find("PASS zf-zero-interference") != std::string::npos);
    CHECK(clean.out.find("PASS oracle-equivalence") != std::string::npos);
    CHECK(clean.out.find("PASS remark-consistency") != std::string::npos);
    CHECK(clean.out.find("PASS lln-scaling") != std::string::npos);

    const RunResult faulty =
        run_cli("check --inject-fault zf-gain-x2", fresh_dir("check_fault"));
    CHECK(faulty.exit_code == 1);
    CHECK(faulty.out.find("FAIL power-constraint") != std::string::npos);
    CHECK(faulty.out.find("PASS zf-zero-interference") != std::string::npos);

    CHECK(run_cli("check --inject-fault bogus", fresh_dir("check_bogus")).exit_code == 2);
}

TEST_CASE("binary: help exits cleanly") {
    CHECK(run_cli("--help", fresh_dir("help")).exit_code == 0);
    CHECK(run_cli("sweep --help", fresh_dir("help_sweep")).exit_code == 0);
}
