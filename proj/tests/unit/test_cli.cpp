#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fif/commands.hpp"
#include "fif/config.hpp"
#include "fif/errors.hpp"

using namespace fif;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = FIF_CONFIG_DIR;

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("fif_test_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::string& cmd, const fs::path& cfg, Overrides ov = {}) {
    std::ostringstream out, err;
    const int code = run_command(cmd, cfg, ov, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = load_config(kConfigs / "canonical_b.json");
    CHECK(cfg.family == FamilyKind::B);
    CHECK(cfg.depth == 8);
    CHECK(cfg.y_space.hi == 1.25);
    CHECK(cfg.seed == 42);

    const auto empty = parse_config("{}");
    CHECK(empty.family == FamilyKind::A);
    CHECK(empty.grid == 4096);

    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config("[]"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"resolutoin": 5}})"), "grid.resolutoin: unknown field", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"system": {"depth": "eight"}})"),
                         "system.depth: expected a non-negative integer", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"system": {"xs": {"kind": "geometric", "base": 2}}})"),
                         "system.xs.scale: missing", ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"family": {"kind": "C"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"output": {"format": "xml"}})"), ConfigError);
}

TEST_CASE("overrides") {
    RunConfig cfg;
    Overrides ov;
    ov.grid = 128;
    ov.family = FamilyKind::B;
    ov.metric = MetricKind::DTheta;
    apply(cfg, ov);
    CHECK(cfg.grid == 128);
    CHECK(cfg.family == FamilyKind::B);
    CHECK(cfg.metric == MetricKind::DTheta);
}

TEST_CASE("csv round trip keeps every bit") {
    const std::vector<Point2> pts{{0.1, 1.0 / 3.0}, {0.2, 2e-300}, {1.0, -0.0}};
    const auto text = format_csv(pts);
    CHECK(text.rfind("x,y\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    const auto back = parse_csv(text);
    REQUIRE(back.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(back[i].x == pts[i].x);
        CHECK(back[i].y == pts[i].y);
    }
}

TEST_CASE("build prints the derived constants") {
    const auto r = run("build", kConfigs / "canonical_a.json");
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("theta       0.21428571428571427") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("build", kConfigs / "bad_malformed.json").code == kExitMalformedConfig);
    CHECK(run("build", kConfigs / "missing.json").code == kExitMalformedConfig);

    const auto mono = run("build", kConfigs / "bad_nonmonotone.json");
    CHECK(mono.code == kExitInvalidSystem);
    CHECK(mono.err.find("index 2") != std::string::npos);

    const auto sign = run("build", kConfigs / "bad_family_b_sign.json");
    CHECK(sign.code == kExitInvalidSystem);
    CHECK(sign.err.find("[0, inf)") != std::string::npos);

    CHECK(run("verify", kConfigs / "bad_d_one.json").code == kExitInvalidSystem);

    Overrides ov;
    ov.out_dir = scratch("cap");
    ov.max_iter = 1;
    const auto cap = run("interpolate", kConfigs / "canonical_a.json", ov);
    CHECK(cap.code == kExitNotConverged);
    CHECK(fs::exists(*ov.out_dir / "interpolate_report.json"));
}

TEST_CASE("interpolate writes rows through the data and is byte-stable") {
    Overrides ov;
    ov.out_dir = scratch("interp1");
    ov.grid = 256;
    REQUIRE(run("interpolate", kConfigs / "canonical_a.json", ov).code == kExitOk);
    const auto first = slurp(*ov.out_dir / "interpolant.csv");
    const auto report1 = slurp(*ov.out_dir / "interpolate_report.json");

    const auto pts = parse_csv(first);
    CHECK(pts.size() == 257);
    const auto cfg = load_config(kConfigs / "canonical_a.json");
    for (const auto& p : pts) {
        for (int n = 0; n <= 8; ++n) {
            if (p.x == 1.0 - std::ldexp(1.0, -n)) CHECK(std::fabs(p.y - (1.0 - std::pow(3.0, -n))) <= 1e-9);
        }
    }

    ov.out_dir = scratch("interp2");
    REQUIRE(run("interpolate", kConfigs / "canonical_a.json", ov).code == kExitOk);
    CHECK(slurp(*ov.out_dir / "interpolant.csv") == first);
    CHECK(slurp(*ov.out_dir / "interpolate_report.json") == report1);

    const auto report = nlohmann::json::parse(report1);
    CHECK(report["residual"]["converged"] == true);
    CHECK(report["residual"]["node_errors"].size() == 9);
}

TEST_CASE("constant data interpolate to zero") {
    Overrides ov;
    ov.out_dir = scratch("const");
    ov.grid = 128;
    REQUIRE(run("interpolate", kConfigs / "constant_y.json", ov).code == kExitOk);
    for (const auto& p : parse_csv(slurp(*ov.out_dir / "interpolant.csv"))) CHECK(std::fabs(p.y) <= 1e-9);
    CHECK(fs::exists(*ov.out_dir / "interpolant.json"));
}

TEST_CASE("attractor and verify on family A") {
    Overrides ov;
    ov.out_dir = scratch("attr");
    const auto r = run("attractor", kConfigs / "canonical_a.json", ov);
    REQUIRE(r.code == kExitOk);
    const auto trace = nlohmann::json::parse(slurp(*ov.out_dir / "attractor_trace.json"));
    CHECK(trace["node_containment"]["passed"] == true);
    CHECK(trace["cross_hausdorff"]["passed"] == true);
    CHECK(trace["graph_distance"]["passed"] == true);
    CHECK(parse_csv(slurp(*ov.out_dir / "attractor.csv")).size() == trace["cloud_size"].get<std::size_t>());

    const auto v = run("verify", kConfigs / "canonical_a.json", ov);
    CHECK(v.code == kExitOk);
    CHECK(v.out.find("[FAIL]") == std::string::npos);
    const auto report = nlohmann::json::parse(slurp(*ov.out_dir / "verify_report.json"));
    CHECK(report["all_passed"] == true);
    CHECK(report["seed"] == 42);
}

TEST_CASE("verify fails when the attractor cannot converge") {
    const auto dir = scratch("verify_fail");
    fs::create_directories(dir);
    std::ofstream(dir / "cfg.json") << R"({"attractor": {"max_iter": 2}, "grid": {"resolution": 256}})";
    Overrides ov;
    ov.out_dir = dir;
    const auto r = run("verify", dir / "cfg.json", ov);
    CHECK(r.code == kExitVerifyFailed);
    CHECK(r.out.find("[FAIL] graph_attractor") != std::string::npos);
}
