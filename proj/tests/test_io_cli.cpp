#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "hawkes/config.hpp"
#include "hawkes/run.hpp"

using namespace hawkes;
namespace fs = std::filesystem;

namespace {

// The binary under test; injected by the build so the test never guesses paths.
const char* cli_path() { return HAWKES_CLI_PATH; }

int run_cli(const std::string& args) {
    const std::string command =
        std::string(cli_path()) + " " + args + " > cli_stdout.log 2>&1";
    const int raw = std::system(command.c_str());
    REQUIRE(raw != -1);
    return WEXITSTATUS(raw);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

struct ScratchDir {
    fs::path path;
    explicit ScratchDir(const std::string& name)
        : path(fs::path("io_cli_scratch") / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
};

const std::string kMinimalConfig =
    "alpha = 1\n"
    "rate.kind = quadratic\n"
    "jump.kind = gaussian\n"
    "jump.sigma = 1\n"
    "n = 100\n"
    "experiment = simulate\n"
    "T = 10\n"
    "seed = 42\n";

}  // namespace

// ---------------------------------------------------------------------------
// Config parsing

TEST_CASE("the minimal example parses field by field") {
    const RunConfig config = parse_config(kMinimalConfig);
    CHECK(config.alpha == 1.0);
    CHECK(config.rate_kind == "quadratic");
    CHECK(config.jump_kind == "gaussian");
    CHECK(config.jump_sigma == 1.0);
    CHECK(config.n == 100);
    CHECK(config.experiment == "simulate");
    CHECK(config.horizon == 10.0);
    CHECK(config.seed == 42);
    CHECK_FALSE(config.x0.has_value());
    CHECK_FALSE(config.schedule.has_value());
}

TEST_CASE("emit and parse are inverse on an adversarial config") {
    RunConfig config = parse_config(kMinimalConfig);
    config.alpha = 0.1;  // not exactly representable: %.17g must round-trip
    config.seed = 18446744073709551615ull;  // largest 64-bit seed
    config.x0 = -2.5e-8;
    config.step = 1e-3;
    config.reps = 100000;
    config.n_grid = std::vector<std::uint64_t>{10, 40, 160};
    config.x_grid = std::vector<double>{-3.0, 0.0, 3.0};
    config.schedule =
        std::vector<std::pair<double, std::uint64_t>>{{2.0, 25}, {5.0, 100}};
    const std::string emitted = emit_config(config);
    CHECK(parse_config(emitted) == config);
    // A second emit of the reparsed config is byte-identical: canonical form.
    CHECK(emit_config(parse_config(emitted)) == emitted);
}

TEST_CASE("comments, blank lines, and duplicates behave as documented") {
    const RunConfig config = parse_config(
        "# leading comment\n"
        "\n"
        "alpha = 1   # trailing comment\n"
        "alpha = 3\n"
        "n = 10\n");
    CHECK(config.alpha == 3.0);  // later assignment wins
    CHECK(config.n == 10);
}

TEST_CASE("malformed configs are rejected with the offending line") {
    using Catch = std::invalid_argument;
    CHECK_THROWS_AS(parse_config("alpha"), Catch);
    CHECK_THROWS_AS(parse_config("alpha = "), Catch);
    CHECK_THROWS_AS(parse_config("alpha = abc"), Catch);
    CHECK_THROWS_AS(parse_config("alpha = 1e999"), Catch);
    CHECK_THROWS_AS(parse_config("n = -3"), Catch);
    CHECK_THROWS_AS(parse_config("mystery.key = 1"), Catch);
    CHECK_THROWS_AS(parse_config("schedule = 2:abc"), Catch);
    CHECK_THROWS_AS(parse_config("schedule = 2"), Catch);
    try {
        parse_config("alpha = 1\nbogus.key = 2\n");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        const std::string message = e.what();
        CHECK(message.find("line 2") != std::string::npos);
        CHECK(message.find("bogus.key") != std::string::npos);
    }
}

TEST_CASE("model assembly reports which required key is missing") {
    RunConfig config = parse_config(kMinimalConfig);
    config.alpha.reset();
    try {
        build_model(config);
        FAIL("expected a config error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }
    RunConfig no_sigma = parse_config(kMinimalConfig);
    no_sigma.jump_sigma.reset();
    CHECK_THROWS_AS(build_model(no_sigma), std::invalid_argument);
    RunConfig bad_kind = parse_config(kMinimalConfig);
    bad_kind.rate_kind = "septic";
    CHECK_THROWS_AS(build_model(bad_kind), std::invalid_argument);
}

TEST_CASE("build_model produces the configured model") {
    const ModelSpec spec = build_model(parse_config(kMinimalConfig));
    CHECK(spec.alpha == 1.0);
    CHECK(spec.n_components == 100);
    CHECK(spec.x0 == 0.0);
    CHECK(spec.f(2.0) == doctest::Approx(5.0));
    CHECK(spec.sigma2() == doctest::Approx(1.0));
}

// ---------------------------------------------------------------------------
// Library-level runner

TEST_CASE("the runner maps bad configuration to exit code 2") {
    ScratchDir scratch("runner_bad");
    RunOptions options;
    options.out_dir = scratch.path.string();
    RunConfig config = parse_config(kMinimalConfig);
    config.alpha = -1.0;
    CHECK(run_experiment("simulate-n", config, options) == 2);
    RunConfig fine = parse_config(kMinimalConfig);
    CHECK(run_experiment("no-such-experiment", fine, options) == 2);
    // The config names experiment = simulate; running a different experiment
    // with it is a coherence error, not a silent reinterpretation.
    CHECK(run_experiment("chaos-test", fine, options) == 2);
}

// ---------------------------------------------------------------------------
// Full command-line interface

TEST_CASE("argument errors exit with code 2 and help with 0") {
    CHECK(run_cli("") == 2);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("no-such-subcommand") == 2);
    CHECK(run_cli("simulate-n") == 2);  // --config is required
    CHECK(run_cli("simulate-n --config /definitely/not/here.conf") == 2);
}

TEST_CASE("a config rejected by the parser exits with code 2") {
    ScratchDir scratch("cli_badconf");
    spit(scratch.path / "bad.conf", "alpha = 1\nwho.knows = 7\n");
    CHECK(run_cli("simulate-n --config " + (scratch.path / "bad.conf").string()) ==
          2);
}

TEST_CASE("a small simulation writes the documented artifacts") {
    ScratchDir scratch("cli_simulate");
    spit(scratch.path / "run.conf", kMinimalConfig);
    const int code =
        run_cli("simulate-n --config " + (scratch.path / "run.conf").string() +
                " --out " + scratch.path.string());
    CHECK(code == 0);
    REQUIRE(fs::exists(scratch.path / "summary.json"));
    REQUIRE(fs::exists(scratch.path / "config_resolved.txt"));
    REQUIRE(fs::exists(scratch.path / "events.csv"));
    REQUIRE(fs::exists(scratch.path / "path.csv"));
    const std::string events = slurp(scratch.path / "events.csv");
    CHECK(events.rfind("t,component,mark\n", 0) == 0);
    const std::string path = slurp(scratch.path / "path.csv");
    CHECK(path.rfind("t,x_post\n", 0) == 0);
    const nlohmann::json summary =
        nlohmann::json::parse(slurp(scratch.path / "summary.json"));
    CHECK(summary.at("seed").get<std::uint64_t>() == 42);
    CHECK(summary.at("tables").at("n_events").get<double>() > 0.0);
    CHECK(summary.at("tables").at("horizon").get<double>() == 10.0);
    // The echoed config must itself be a valid config.
    const RunConfig echoed =
        parse_config(summary.at("config_echo").get<std::string>());
    CHECK(echoed.alpha == 1.0);
    CHECK(echoed.n == 100);
    // Output placement must not leak into result bytes.
    CHECK(summary.at("config_echo").get<std::string>().find("output.dir") ==
          std::string::npos);
    // The resolved config on disk equals the echo.
    CHECK(slurp(scratch.path / "config_resolved.txt") ==
          summary.at("config_echo").get<std::string>());
}

TEST_CASE("the diffusion subcommand writes the grid and Cox artifacts") {
    ScratchDir scratch("cli_limit");
    spit(scratch.path / "run.conf",
         "alpha = 1\n"
         "rate.kind = quadratic\n"
         "jump.kind = gaussian\n"
         "jump.sigma = 1\n"
         "n = 100\n"
         "experiment = simulate-limit\n"
         "T = 2\n"
         "h = 0.01\n"
         "k = 2\n"
         "seed = 7\n");
    const int code = run_cli("simulate-limit --config " +
                             (scratch.path / "run.conf").string() + " --out " +
                             scratch.path.string());
    CHECK(code == 0);
    REQUIRE(fs::exists(scratch.path / "path.csv"));
    REQUIRE(fs::exists(scratch.path / "cox_events.csv"));
    CHECK(slurp(scratch.path / "path.csv").rfind("t,x\n", 0) == 0);
    CHECK(slurp(scratch.path / "cox_events.csv").rfind("t,component\n", 0) == 0);
    const nlohmann::json summary =
        nlohmann::json::parse(slurp(scratch.path / "summary.json"));
    CHECK(summary.at("tables").contains("cox_counts"));
}

TEST_CASE("a run that blows up numerically exits with code 3") {
    ScratchDir scratch("cli_blowup");
    spit(scratch.path / "run.conf",
         "alpha = 2\n"
         "rate.kind = quadratic\n"
         "jump.kind = gaussian\n"
         "jump.sigma = 1\n"
         "n = 1\n"
         "x0 = 1\n"
         "experiment = simulate-limit\n"
         "T = 200000\n"
         "h = 1000\n"
         "seed = 1\n");
    CHECK(run_cli("simulate-limit --config " +
                  (scratch.path / "run.conf").string() + " --out " +
                  scratch.path.string()) == 3);
}

TEST_CASE("result bytes are invariant under the worker count") {
    ScratchDir scratch("cli_workers");
    spit(scratch.path / "run.conf",
         "alpha = 1\n"
         "rate.kind = constant\n"
         "rate.c = 1\n"
         "jump.kind = gaussian\n"
         "jump.sigma = 1\n"
         "n = 20\n"
         "x0 = 1\n"
         "experiment = semigroup-rate\n"
         "t = 0.5\n"
         "g = sin\n"
         "n_grid = 5,20\n"
         "reps = 200\n"
         "h = 0.01\n"
         "seed = 9\n");
    fs::create_directories(scratch.path / "one");
    fs::create_directories(scratch.path / "two");
    // Both runs end in assertion failure (200 reps cannot resolve a rate), but
    // the bytes they report must agree exactly.
    const int code_one = run_cli("semigroup-rate --config " +
                                 (scratch.path / "run.conf").string() +
                                 " --out " + (scratch.path / "one").string() +
                                 " --workers 1 --emit-paths");
    const int code_two = run_cli("semigroup-rate --config " +
                                 (scratch.path / "run.conf").string() +
                                 " --out " + (scratch.path / "two").string() +
                                 " --workers 2 --emit-paths");
    CHECK(code_one == code_two);
    CHECK(slurp(scratch.path / "one" / "summary.json") ==
          slurp(scratch.path / "two" / "summary.json"));
    CHECK(slurp(scratch.path / "one" / "rate_table.csv") ==
          slurp(scratch.path / "two" / "rate_table.csv"));
}

TEST_CASE("the command-line seed overrides the config seed") {
    ScratchDir scratch("cli_seed");
    spit(scratch.path / "run.conf", kMinimalConfig);
    CHECK(run_cli("simulate-n --config " + (scratch.path / "run.conf").string() +
                  " --out " + scratch.path.string() + " --seed 777") == 0);
    const nlohmann::json summary =
        nlohmann::json::parse(slurp(scratch.path / "summary.json"));
    CHECK(summary.at("seed").get<std::uint64_t>() == 777);
    const std::string echo = summary.at("config_echo").get<std::string>();
    CHECK(echo.find("seed = 777") != std::string::npos);
}

TEST_CASE("the constants subcommand reports the closed-form constants") {
    ScratchDir scratch("cli_constants");
    spit(scratch.path / "run.conf",
         "alpha = 2\n"
         "rate.kind = quadratic\n"
         "jump.kind = gaussian\n"
         "jump.sigma = 1\n"
         "n = 100\n"
         "experiment = constants\n"
         "k_horizons = 1,10\n");
    CHECK(run_cli("constants --config " + (scratch.path / "run.conf").string() +
                  " --out " + scratch.path.string()) == 0);
    const nlohmann::json summary =
        nlohmann::json::parse(slurp(scratch.path / "summary.json"));
    CHECK(summary.at("tables").at("beta").get<double>() == -1.5);
    CHECK(summary.at("tables").at("sharp_regime").get<bool>());
    CHECK(summary.at("tables").at("K").size() == 2);
}

TEST_CASE("the validate subcommand turns checks into assertions") {
    ScratchDir scratch("cli_validate");
    spit(scratch.path / "run.conf",
         "alpha = 2\n"
         "rate.kind = quadratic\n"
         "jump.kind = two_point\n"
         "jump.a = 2\n"
         "jump.b = -1\n"
         "n = 100\n"
         "experiment = validate\n");
    CHECK(run_cli("validate --config " + (scratch.path / "run.conf").string() +
                  " --out " + scratch.path.string()) == 0);
    const nlohmann::json summary =
        nlohmann::json::parse(slurp(scratch.path / "summary.json"));
    REQUIRE(summary.at("assertions").is_array());
    CHECK(summary.at("assertions").size() >= 5);
    for (const auto& assertion : summary.at("assertions")) {
        CHECK(assertion.at("pass").get<bool>());
    }
}
