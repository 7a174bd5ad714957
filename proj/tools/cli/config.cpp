#include "config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

extern char** environ;

namespace hdl::cli {

namespace {

std::string num(double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + num(v[i]);
    return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError(key + ": '" + tok + "' is not a number");
        }
    }
    return out;
}

std::string env_name(std::string key) {
    std::ranges::transform(key, key.begin(), [](unsigned char c) { return c == '-' ? '_' : std::toupper(c); });
    return "HDL_" + key;
}

struct Binding {
    ExperimentConfig cfg;
    int p = 0;
    std::string ball_center, start;
    double tol_harmonic = 0, tol_conformal = 0, tol_contact = 0;
    std::string config_file;
};

void declare(CLI::App& app, Binding& b) {
    auto& c = b.cfg;
    app.add_option("--command", c.command, "experiment to run")->check(CLI::IsMember(commands()));
    app.add_option("--n", c.n, "source dimension of H^n")->check(CLI::PositiveNumber);
    app.add_option("--p", b.p, "target dimension (checked against the map)")->check(CLI::PositiveNumber);
    app.add_option("--T", c.T, "time horizon / unit window")->check(CLI::PositiveNumber);
    app.add_option("--dt", c.dt, "time step")->check(CLI::PositiveNumber);
    app.add_option("--samples", c.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    app.add_option("--paths", c.paths, "paths per battery")->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "RNG seed");
    app.add_option("--map", c.map, "map id");
    app.add_option("--ball-center", b.ball_center, "comma-separated coordinates x1,y1,...,t");
    app.add_option("--ball-radius", c.ball_radius, "Koranyi ball radius")->check(CLI::PositiveNumber);
    app.add_option("--start", b.start, "comma-separated start point (default: ball center)");
    app.add_option("--boundary", c.boundary, "boundary data for dirichlet-solve");
    app.add_option("--field", c.field, "function for mean-value-check");
    app.add_option("--points", c.points, "sample points for check-morphism")->check(CLI::PositiveNumber);
    app.add_option("--points-radius", c.points_radius, "Koranyi radius of the sample ball")->check(CLI::PositiveNumber);
    app.add_option("--substeps", c.substeps, "path steps per s-step in pushforward-test")->check(CLI::PositiveNumber);
    app.add_option("--time-change", c.time_change, "apply the clock in pushforward-test");
    app.add_option("--adaptive", c.adaptive, "shrink exit steps near the boundary");
    app.add_option("--resolution", c.resolution, "quadrature nodes in phi")->check(CLI::Range(4, 1 << 14));
    app.add_option("--out", c.out, "output directory");
    app.add_option("--workers", c.workers, "worker threads, 0 for all cores");
    app.add_option("--level", c.level, "significance level")->check(CLI::Range(0.0, 1.0));
    app.add_option("--tol-harmonic", b.tol_harmonic)->check(CLI::PositiveNumber);
    app.add_option("--tol-conformal", b.tol_conformal)->check(CLI::PositiveNumber);
    app.add_option("--tol-contact", b.tol_contact)->check(CLI::PositiveNumber);
    app.add_option("--qv-band", c.qv_band)->check(CLI::PositiveNumber);
    app.add_option("--quad-tol", c.quad_tol)->check(CLI::PositiveNumber);
    app.add_option("--mc-rel-tol", c.mc_rel_tol)->check(CLI::PositiveNumber);
    for (auto* opt : app.get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--config", b.config_file, "key = value file");
}

std::string long_name(const CLI::Option* opt) { return opt->get_lnames().empty() ? "" : opt->get_lnames().front(); }

std::vector<std::string> file_args(const CLI::App& app, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot read '" + path + "'");
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_config(in);
    } catch (const CLI::ParseError& e) {
        throw UsageError("config '" + path + "': " + e.what());
    }
    std::vector<std::string> out;
    for (const auto& item : items) {
        if (!item.parents.empty()) throw UsageError("config '" + path + "': sections are not supported");
        std::string key = item.name;
        std::ranges::replace(key, '_', '-');
        const auto* opt = app.get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config") {
            throw UsageError("config '" + path + "': unknown key '" + item.name + "'");
        }
        std::string value;
        for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
        out.push_back("--" + key);
        out.push_back(value);
    }
    return out;
}

std::vector<std::string> env_args(const CLI::App& app, const std::map<std::string, std::string>& env) {
    std::vector<std::string> out;
    for (const auto* opt : app.get_options()) {
        const std::string key = long_name(opt);
        if (key.empty() || key == "config" || key == "help") continue;
        const auto it = env.find(env_name(key));
        if (it == env.end()) continue;
        out.push_back("--" + key);
        out.push_back(it->second);
    }
    return out;
}

void parse_args(CLI::App& app, std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
    auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string("default"); };
    return {
        {"command", command},
        {"n", std::to_string(n)},
        {"p", p ? std::to_string(*p) : std::string("auto")},
        {"T", num(T)},
        {"dt", num(dt)},
        {"samples", std::to_string(samples)},
        {"paths", std::to_string(paths)},
        {"seed", std::to_string(seed)},
        {"map", map},
        {"ball-center", join(ball_center)},
        {"ball-radius", num(ball_radius)},
        {"start", join(start)},
        {"boundary", boundary},
        {"field", field},
        {"points", std::to_string(points)},
        {"points-radius", num(points_radius)},
        {"substeps", std::to_string(substeps)},
        {"time-change", time_change ? "true" : "false"},
        {"adaptive", adaptive ? "true" : "false"},
        {"resolution", std::to_string(resolution)},
        {"out", out},
        {"workers", std::to_string(workers)},
        {"level", num(level)},
        {"tol-harmonic", opt(tol_harmonic)},
        {"tol-conformal", opt(tol_conformal)},
        {"tol-contact", opt(tol_contact)},
        {"qv-band", num(qv_band)},
        {"quad-tol", num(quad_tol)},
        {"mc-rel-tol", num(mc_rel_tol)},
    };
}

ExperimentConfig parse_config(const std::vector<std::string>& raw, const std::map<std::string, std::string>& env) {
    std::vector<std::string> args = raw;
    if (!args.empty() && !args.front().empty() && args.front().front() != '-') {
        args.insert(args.begin(), "--command");
    }

    // First pass: locate --config only.
    std::string config_file;
    {
        CLI::App probe;
        probe.allow_extras();
        probe.set_help_flag();
        probe.add_option("--config", config_file);
        auto reversed = args;
        std::reverse(reversed.begin(), reversed.end());
        try {
            probe.parse(reversed);
        } catch (const CLI::ParseError& e) {
            throw UsageError(e.what());
        }
        if (config_file.empty()) {
            if (const auto it = env.find("HDL_CONFIG"); it != env.end()) config_file = it->second;
        }
    }

    Binding b;
    CLI::App app{"hdl: horizontal Brownian motion on Heisenberg groups", "hdl"};
    declare(app, b);
    std::vector<std::string> combined;
    if (!config_file.empty()) combined = file_args(app, config_file);
    for (auto& a : env_args(app, env)) combined.push_back(std::move(a));
    combined.insert(combined.end(), args.begin(), args.end());
    parse_args(app, combined);

    ExperimentConfig c = b.cfg;
    if (c.command.empty()) throw UsageError("command: required (one of simulate-path, dirichlet-solve, "
                                            "harmonic-measure-compare, check-morphism, pushforward-test, "
                                            "mean-value-check)");
    if (app.count("--p") > 0) c.p = b.p;
    c.ball_center = parse_list("ball-center", b.ball_center);
    c.start = parse_list("start", b.start);
    const auto width = 2 * static_cast<std::size_t>(c.n) + 1;
    if (!c.ball_center.empty() && c.ball_center.size() != width) {
        throw UsageError("ball-center: expected " + std::to_string(width) + " coordinates for n = " +
                         std::to_string(c.n));
    }
    if (!c.start.empty() && c.start.size() != width) {
        throw UsageError("start: expected " + std::to_string(width) + " coordinates for n = " + std::to_string(c.n));
    }
    if (c.dt >= c.T) throw UsageError("dt: must be smaller than T");
    if (!(c.level > 0.0 && c.level < 1.0)) throw UsageError("level: must lie in (0, 1)");
    if (c.out.empty()) throw UsageError("out: must not be empty");
    if (app.count("--tol-harmonic") > 0) c.tol_harmonic = b.tol_harmonic;
    if (app.count("--tol-conformal") > 0) c.tol_conformal = b.tol_conformal;
    if (app.count("--tol-contact") > 0) c.tol_contact = b.tol_contact;
    if (!config_file.empty()) c.config_file = config_file;
    return c;
}

ExperimentConfig parse_config(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::map<std::string, std::string> env;
    for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
        const std::string kv(*e);
        if (kv.rfind("HDL_", 0) != 0) continue;
        const auto eq = kv.find('=');
        if (eq != std::string::npos) env.emplace(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return parse_config(args, env);
}

std::string usage() {
    Binding b;
    CLI::App app{"hdl: horizontal Brownian motion on Heisenberg groups", "hdl"};
    declare(app, b);
    return app.help();
}

}  // namespace hdl::cli
