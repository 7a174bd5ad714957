#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/config.hpp"
#include "cli/run.hpp"

using namespace hdl::cli;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
    return parse_config(args, env);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("flags produce a valid config") {
    const auto c = parse({"--command", "simulate-path", "--n", "1", "--T", "1", "--dt", "0.001", "--seed", "7"});
    CHECK(c.command == "simulate-path");
    CHECK(c.n == 1);
    CHECK(c.dt == 0.001);
    CHECK(c.seed == 7);
    CHECK(parse({"check-morphism"}).command == "check-morphism");
}

TEST_CASE("range and usage errors name the field") {
    auto message = [](std::vector<std::string> args) {
        try {
            (void)parse(std::move(args));
        } catch (const UsageError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message({"--command", "simulate-path", "--dt", "-1"}).find("dt") != std::string::npos);
    CHECK(message({"--command", "simulate-path", "--n", "0"}).find("n") != std::string::npos);
    CHECK(message({"--command", "fly"}).find("command") != std::string::npos);
    CHECK(message({"--command", "simulate-path", "--ball-center", "0,0"}).find("ball-center") != std::string::npos);
    CHECK(message({"--command", "simulate-path", "--bogus", "1"}).find("bogus") != std::string::npos);
    CHECK(message({"--n", "1"}).find("command") != std::string::npos);
}

TEST_CASE("flags override the environment, which overrides the file") {
    const fs::path file = fs::temp_directory_path() / "hdl_test_config.txt";
    {
        std::ofstream out(file);
        out << "# experiment\ncommand = simulate-path\ndt = 0.01\nseed = 3\nball_center = 0,0,1\n";
    }
    const auto from_file = parse({"--config", file.string()});
    CHECK(from_file.dt == 0.01);
    CHECK(from_file.seed == 3);
    CHECK(from_file.ball_center == std::vector<double>{0.0, 0.0, 1.0});
    CHECK(parse({"--config", file.string()}, {{"HDL_DT", "0.002"}}).dt == 0.002);
    CHECK(parse({"--config", file.string(), "--dt", "0.001"}, {{"HDL_DT", "0.002"}}).dt == 0.001);
    CHECK(parse({"--command", "simulate-path"}, {{"HDL_CONFIG", file.string()}}).seed == 3);

    {
        std::ofstream out(file);
        out << "command = simulate-path\nspeed = 3\n";
    }
    CHECK_THROWS_WITH_AS((void)parse({"--config", file.string()}), doctest::Contains("speed"), UsageError);
    fs::remove(file);
}

TEST_CASE("check-morphism verdicts") {
    auto c = parse({"check-morphism", "--map", "dilation:2", "--points", "200", "--workers", "2"});
    const Outcome pass = execute(c);
    CHECK(pass.pass());
    CHECK(pass.report["status"] == "pass");
    CHECK(pass.report["results"]["verdicts"]["harmonic_morphism"] == true);

    c.map = "projection";
    const Outcome fail = execute(c);
    CHECK_FALSE(fail.pass());
    CHECK(fail.report["failures"].size() == 1);
    CHECK(fail.report["failures"][0] == "contact");

    c.map = "anisotropic";
    c.p = 2;
    CHECK_THROWS_AS((void)execute(c), UsageError);
}

TEST_CASE("reports are a pure function of the config") {
    auto c = parse({"pushforward-test", "--map", "dilation:2", "--paths", "20", "--seed", "5", "--workers", "1"});
    const std::string a = execute(c).report.dump();
    const std::string b = execute(c).report.dump();
    CHECK(a == b);
    c.workers = 3;
    auto r3 = execute(c).report;
    auto r1 = nlohmann::ordered_json::parse(a);
    r1["config"].erase("workers");
    r3["config"].erase("workers");
    CHECK(r1.dump() == r3.dump());
}

TEST_CASE("run writes byte-identical reports and isolates the timestamp") {
    const fs::path out = fs::temp_directory_path() / "hdl_test_run";
    fs::remove_all(out);
    const auto c = parse({"simulate-path", "--T", "0.1", "--seed", "7", "--out", out.string()});
    CHECK(run(c) == kExitPass);
    const std::string first = slurp(out / "report.json");
    const std::string csv = slurp(out / "path.csv");
    CHECK(run(c) == kExitPass);
    CHECK(slurp(out / "report.json") == first);
    CHECK(slurp(out / "path.csv") == csv);
    CHECK(csv.rfind("t,x1,y1,eta\n", 0) == 0);
    CHECK(fs::exists(out / "metadata.json"));
    CHECK(slurp(out / "config.resolved").find("seed = 7") != std::string::npos);
    CHECK(first.find("timestamp") == std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("mean-value-check and dirichlet-solve") {
    auto c = parse({"mean-value-check", "--field", "t", "--ball-radius", "0.5"});
    CHECK(execute(c).pass());
    c.field = "|z|^2";
    const auto o = execute(c);
    CHECK(o.pass());
    CHECK(o.report["results"]["residual"].get<double>() > 0.0);
    c.field = "w";
    CHECK_THROWS_AS((void)execute(c), UsageError);

    auto d = parse({"dirichlet-solve", "--boundary", "t^2", "--samples", "2000", "--seed", "2"});
    const auto od = execute(d);
    CHECK(od.pass());
    REQUIRE(od.csv.count("exits.csv") == 1);
    CHECK(od.csv.at("exits.csv").rfind("t_exit,x1,y1,eta,steps,overshoot\n", 0) == 0);
}
