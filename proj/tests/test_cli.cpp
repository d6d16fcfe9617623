#include "doctest.h"

#include "ftnlab/cli.hpp"
#include "ftnlab/config.hpp"
#include "ftnlab/error.hpp"
#include "ftnlab/output.hpp"
#include "ftnlab/sweep.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ftnlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("ftnlab_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(const std::string& args) {
    const int rc = std::system((std::string(FTNLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const char* kTwoQubit = R"({
  "mode": "ftn_vs_hz",
  "model": {"N": 2, "J": 1.0},
  "axes": {"h_z": {"min": 0.01, "max": 10, "points": 40, "scale": "log"}},
  "probes": {"V": {"site": 1, "axis": "Z"}, "W": {"site": 1, "axis": "Z"}},
  "scan": {"t_max": 10},
  "output": {"prefix": "two_qubit", "formats": ["csv", "json", "svg"]}
})";

}  // namespace

TEST_CASE("number formatting is fixed and round-trips") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5e-300) == "-2.5e-300");
    for (double v : {0.3637084, 1e-17, 12345.678, -0.0472135954999579}) CHECK(std::stod(format_number(v)) == v);
    CHECK(format_cell(Cell{}) == "");
}

TEST_CASE("config parsing: errors name the key") {
    const auto msg = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(msg(R"({"mode":"ftn_vs_hz","model":{"N":2},"axes":{"h_z":{"values":[1]}},"colour":1})").find("colour") != std::string::npos);
    CHECK(msg(R"({"mode":"ftn_vs_hz","model":{"N":2,"K":1},"axes":{"h_z":{"values":[1]}}})").find("model.K") != std::string::npos);
    CHECK(msg(R"({"mode":"ftn_vs_hz","model":{"N":2},"axes":{"beta":{"values":[1]}}})").find("axes.beta") != std::string::npos);
    CHECK(msg(R"({"mode":"ftn_vs_hz","model":{"N":2}})").find("h_z") != std::string::npos);
    CHECK(msg(R"({"mode":"nope","model":{"N":2}})").find("mode") != std::string::npos);
    CHECK(msg(R"({"mode":"ftn_vs_hz","model":{"N":"two"},"axes":{"h_z":{"values":[1]}}})").find("model.N") != std::string::npos);
    CHECK(msg("{not json").find("JSON") != std::string::npos);
    CHECK(msg(R"({"mode":"ftn_vs_hz","model":{"N":2},"axes":{"h_z":{"min":1,"max":2,"points":3,"scale":"cubic"}}})").find("scale") != std::string::npos);
}

TEST_CASE("config: axes generation") {
    const SweepSpec s = parse_config(kTwoQubit);
    const AxisSpec* a = s.axis("h_z");
    REQUIRE(a);
    REQUIRE(a->values.size() == 40);
    CHECK(a->values.front() == 0.01);
    CHECK(a->values.back() == 10.0);
    CHECK(a->values[1] / a->values[0] == doctest::Approx(a->values[39] / a->values[38]));
    CHECK(s.output.svg);
    CHECK(s.scan.t_max == 10.0);
}

TEST_CASE("validate: invariant echoes") {
    const auto check_reject = [](const std::string& text, const std::string& needle) {
        const SweepSpec s = parse_config(text);
        try {
            validate(s);
            FAIL("accepted");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    check_reject(R"({"mode":"ftn_vs_hz","model":{"N":14},"axes":{"h_z":{"values":[1]}},"backend":"exact"})", "N <= 12");
    check_reject(R"({"mode":"ftn_vs_hz","model":{"N":8,"h_x":0.1},"axes":{"h_z":{"values":[1]}},"backend":"freefermion"})",
                 "h_x = 0");
    CHECK_THROWS_WITH_AS(parse_config(R"({"mode":"ftn_vs_hz","model":{"N":2},"axes":{"h_z":{"min":0.1,"max":1,"points":100001}}})"),
                         doctest::Contains("1e5"), ConfigError);
    check_reject(R"({"mode":"heatmap_hz_beta","model":{"N":4},"axes":{"h_z":{"min":0.1,"max":1,"points":400},"beta":{"min":0.1,"max":1,"points":400}}})",
                 "1e5");

    const SweepSpec d = parse_config(
        R"({"mode":"distance_sweep","model":{"N":8},"axes":{"h_z":{"min":0.1,"max":2,"points":5}}})");
    const Plan plan = validate(d);
    CHECK(plan.grid_points == 8 * 5);
    CHECK(describe(plan, d).find("grid points: 40") != std::string::npos);
}

TEST_CASE("sweep: ftn_vs_hz table, order and determinism across workers") {
    const SweepSpec s = parse_config(kTwoQubit);
    const SweepTable one = run_sweep(s, 1);
    const SweepTable four = run_sweep(s, 4);
    std::ostringstream a, b;
    write_csv(a, one);
    write_csv(b, four);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("h_z,t_ftn,found,entry,backend\n", 0) == 0);
    REQUIRE(one.rows.size() == 40);
    double prev = 1e9;
    for (const auto& row : one.rows) {
        const double t = std::get<double>(row[1]);
        CHECK(t < prev);
        prev = t;
    }
}

TEST_CASE("sweep: heatmap rows are h_z-major with empty t_ftn for none") {
    const SweepSpec s = parse_config(R"({"mode":"heatmap_hz_beta","model":{"N":2},
        "axes":{"h_z":{"values":[0.5,1.0]},"beta":{"values":[0.01,"inf"]}},"scan":{"t_max":20}})");
    const SweepTable t = run_sweep(s, 2);
    REQUIRE(t.rows.size() == 4);
    CHECK(std::get<double>(t.rows[0][0]) == 0.5);
    CHECK(std::get<double>(t.rows[1][0]) == 0.5);
    CHECK(std::get<double>(t.rows[2][0]) == 1.0);
    CHECK(std::holds_alternative<std::monostate>(t.rows[0][2]));
    CHECK(std::get<std::string>(t.rows[0][3]) == "false");
    CHECK(std::get<std::string>(t.rows[1][3]) == "true");
    std::ostringstream os;
    write_csv(os, t);
    CHECK(os.str().find("\n0.5,0.01,,false,,exact\n") != std::string::npos);
}

TEST_CASE("sweep: trace_q_of_t columns and the t = 0 value") {
    const SweepSpec s = parse_config(R"({"mode":"trace_q_of_t","model":{"N":2,"J":1,"h_z":1},
        "axes":{"t":{"min":0,"max":1,"points":11}}})");
    const SweepTable t = run_sweep(s, 1);
    CHECK(t.header == std::vector<std::string>{"t", "q_pp", "q_pm", "q_mp", "q_mm", "im_pp", "im_pm", "im_mp", "im_mm", "negativity"});
    CHECK(std::get<double>(t.rows[0][4]) == doctest::Approx(0.05279).epsilon(1e-4));
    const SweepSpec a = parse_config(R"({"mode":"trace_q_of_t","model":{"N":2,"J":1,"h_z":1},"backend":"analytic2q",
        "axes":{"t":{"values":[0.5]}}})");
    const SweepTable ta = run_sweep(a, 1);
    CHECK(std::holds_alternative<std::monostate>(ta.rows[0][5]));
}

TEST_CASE("sweep: failing rows carry error codes") {
    // h_x sweep with the free-fermion backend passes validation only at h_x = 0,
    // so build the spec by hand to exercise the row-level path.
    SweepSpec s = parse_config(R"({"mode":"hx_grid","model":{"N":4},
        "axes":{"h_z":{"values":[1.0]},"h_x":{"values":[0.0,0.5]}},"backend":"freefermion","scan":{"t_max":5}})");
    CHECK_THROWS_AS(validate(s), ConfigError);
    const SweepTable t = run_sweep(s, 1);
    REQUIRE(t.errors.size() == 1);
    CHECK(t.errors[0].row == 1);
    CHECK(t.errors[0].code == "config");
    CHECK(std::get<std::string>(t.rows[1][3]) == "error");
    CHECK(std::get<std::string>(t.rows[1][4]) == "config");
}

TEST_CASE("cli: run writes outputs, exit codes") {
    const fs::path dir = scratch("cli");
    const fs::path cfg = write(dir, "two_qubit.json", kTwoQubit);
    REQUIRE(run_cli("run " + cfg.string() + " --workers 2 --out " + (dir / "a").string()) == 0);
    REQUIRE(run_cli("run " + cfg.string() + " --workers 1 --out " + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "two_qubit.csv") == slurp(dir / "b" / "two_qubit.csv"));
    CHECK(fs::exists(dir / "a" / "two_qubit.json"));
    CHECK(slurp(dir / "a" / "two_qubit.svg").rfind("<svg", 0) == 0);
    CHECK(slurp(dir / "a" / "two_qubit.json").find("\"wall_seconds\"") != std::string::npos);

    const fs::path bad = write(dir, "bad.json", R"({"mode":"ftn_vs_hz","model":{"N":2},"axes":{"h_z":{"values":[1]}},"oops":1})");
    CHECK(run_cli("run " + bad.string() + " --out " + (dir / "c").string()) == kExitConfig);
    CHECK_FALSE(fs::exists(dir / "c"));
    CHECK(run_cli("validate " + bad.string()) == kExitConfig);
    CHECK(run_cli("validate " + cfg.string()) == 0);
    CHECK(run_cli("validate " + (dir / "missing.json").string()) == kExitConfig);
    CHECK(run_cli("version") == 0);
    CHECK(run_cli("frobnicate") == kExitConfig);
}

TEST_CASE("workers: explicit, environment, default") {
    CHECK(resolve_workers(3) == 3);
    setenv("FTNLAB_WORKERS", "5", 1);
    CHECK(resolve_workers(0) == 5);
    setenv("FTNLAB_WORKERS", "zero", 1);
    CHECK(resolve_workers(0) >= 1);
    unsetenv("FTNLAB_WORKERS");
    CHECK(resolve_workers(0) >= 1);
}
