#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdl::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

/// Thrown for any invalid command line, config file, environment value or range violation.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string command;
    int n = 1;
    std::optional<int> p;
    double T = 1.0;
    double dt = 1e-3;
    std::uint64_t samples = 1000;
    std::uint64_t paths = 200;
    std::uint64_t seed = 0;
    std::string map = "identity";
    std::vector<double> ball_center;  ///< empty means the identity of H^n
    double ball_radius = 1.0;
    std::vector<double> start;        ///< empty means the ball center
    std::string boundary = "x1^2";    ///< dirichlet-solve boundary data
    std::string field = "x1";         ///< mean-value-check function
    std::uint64_t points = 1000;
    double points_radius = 2.0;
    int substeps = 4;
    bool time_change = true;
    bool adaptive = true;
    int resolution = 64;
    std::string out = "hdl_out";
    unsigned workers = 0;  ///< 0: hardware concurrency
    double level = 0.01;
    std::optional<double> tol_harmonic;
    std::optional<double> tol_conformal;
    std::optional<double> tol_contact;
    double qv_band = 0.04;
    double quad_tol = 1e-3;
    double mc_rel_tol = 0.02;
    std::optional<std::string> config_file;

    /// Every key with its resolved value, in a fixed order.
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"simulate-path",  "dirichlet-solve",   "harmonic-measure-compare",
                                                "check-morphism", "pushforward-test", "mean-value-check"};
    return names;
}

/// Flags override HDL_* environment variables, which override `--config` file values.
/// `env` maps variable names to values; pass the process environment in production.
[[nodiscard]] ExperimentConfig parse_config(const std::vector<std::string>& args,
                                            const std::map<std::string, std::string>& env);
[[nodiscard]] ExperimentConfig parse_config(int argc, const char* const* argv);

/// Text for --help.
[[nodiscard]] std::string usage();

}  // namespace hdl::cli
