#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hdl/fields.hpp"
#include "hdl/path_types.hpp"
#include "hdl/rng.hpp"

namespace hdl {

/// sigma(t_k) sampled on a path grid; nondecreasing with sigma(0) = 0.
struct TimeClock {
    std::vector<double> grid;
    std::vector<double> values;

    [[nodiscard]] double final_value() const { return values.back(); }
};

/// Integrands below this make the clock non-invertible and are rejected.
inline constexpr double kClockPlateau = 1e-14;

/// sigma(t) = int_0^t |grad_H f_c|^2(W(s)) ds by left-point sums; c = 0 is the first component f_1.
/// Analytic gradients are used when the component carries one.
[[nodiscard]] TimeClock sigma_clock(const SampledProcess& path, const GroupMap& f,
                                    double step = kDefaultStep, int component = 0);

/// sigma(t) = t on the path grid; used to push a path forward without a time change.
[[nodiscard]] TimeClock identity_clock(std::span<const double> grid);

/// Piecewise-linear inverse; exact at knots. Throws OutOfRange past the final clock value.
[[nodiscard]] double invert_clock(const TimeClock& clock, double s);

/// Z(s) = f(W(sigma^{-1}(s))) sampled on an s-grid.
struct PushforwardProcess : SampledProcess {
    std::string map_name;
    double source_horizon = 0.0;  ///< path time reached at the last s knot
};

/// W is interpolated linearly between path knots before f is applied.
[[nodiscard]] PushforwardProcess pushforward(const SampledProcess& path, const GroupMap& f,
                                             const TimeClock& clock, std::span<const double> s_grid);

struct PushforwardOptions {
    double ds = 1e-3;      ///< s-grid spacing
    double window = 1.0;   ///< s-window [0, window]
    int substeps = 4;      ///< path steps per s-step at the starting clock rate
    bool time_change = true;
    int component = 0;
    double step = kDefaultStep;
    std::size_t max_path_steps = 10'000'000;
};

/// One pushforward sample: simulate horizontal BM from g0 long enough for the clock to cover the
/// window, build the clock and resample f(W) on the uniform s-grid. The path step is
/// ds / (substeps * lambda(g0)) so constant-rate clocks land exactly on path knots.
[[nodiscard]] PushforwardProcess simulate_pushforward(const GroupMap& f, const GroupPoint& g0,
                                                      const PushforwardOptions& options, RngSpec rng);

}  // namespace hdl
