#include "hdl/timechange.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdl/error.hpp"
#include "hdl/paths.hpp"

namespace hdl {

namespace {

double squared_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

double clock_rate(const GroupMap& f, const GroupPoint& g, double step, int component) {
    return squared_norm(horizontal_gradient(f.components[static_cast<std::size_t>(component)], g, step,
                                            DerivativeMode::prefer_analytic));
}

}  // namespace

TimeClock sigma_clock(const SampledProcess& path, const GroupMap& f, double step, int component) {
    if (f.source_dim != path.n) throw DimensionError("sigma_clock: map source dimension differs from the path");
    if (component < 0 || component >= 2 * f.target_dim) throw DomainError("sigma_clock: component must be horizontal");
    if (path.size() == 0) throw DomainError("sigma_clock: empty path");
    TimeClock clock;
    clock.grid = path.grid;
    clock.values.assign(path.size(), 0.0);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const double rate = clock_rate(f, path.point(k), step, component);
        if (!(rate >= kClockPlateau)) {
            throw DomainError("sigma_clock: |grad_H f|^2 = " + std::to_string(rate) + " at knot " +
                              std::to_string(k) + "; the clock would not be strictly increasing");
        }
        clock.values[k + 1] = clock.values[k] + rate * (path.grid[k + 1] - path.grid[k]);
    }
    return clock;
}

TimeClock identity_clock(std::span<const double> grid) {
    validate_grid_from_zero(grid);
    TimeClock c;
    c.grid.assign(grid.begin(), grid.end());
    c.values = c.grid;
    return c;
}

double invert_clock(const TimeClock& clock, double s) {
    if (clock.values.empty()) throw DomainError("invert_clock: empty clock");
    if (!(s >= 0.0)) throw OutOfRange("invert_clock: s must be nonnegative");
    if (s > clock.values.back()) {
        throw OutOfRange("invert_clock: s = " + std::to_string(s) + " beyond final clock value " +
                         std::to_string(clock.values.back()));
    }
    const auto it = std::lower_bound(clock.values.begin(), clock.values.end(), s);
    const auto k = static_cast<std::size_t>(it - clock.values.begin());
    if (*it == s) return clock.grid[k];
    // values[k-1] < s < values[k]
    const double lo = clock.values[k - 1], hi = clock.values[k];
    const double theta = (s - lo) / (hi - lo);
    return clock.grid[k - 1] + theta * (clock.grid[k] - clock.grid[k - 1]);
}

PushforwardProcess pushforward(const SampledProcess& path, const GroupMap& f, const TimeClock& clock,
                               std::span<const double> s_grid) {
    if (f.source_dim != path.n) throw DimensionError("pushforward: map source dimension differs from the path");
    if (clock.grid.size() != path.size()) throw DimensionError("pushforward: clock and path grids differ");
    validate_grid(s_grid);
    PushforwardProcess z;
    z.n = f.target_dim;
    z.map_name = f.name;
    z.grid.reserve(s_grid.size());
    z.coords.reserve(s_grid.size() * z.stride());
    const std::size_t stride = path.stride();
    std::vector<double> w(stride);
    for (double s : s_grid) {
        const double t = invert_clock(clock, s);
        auto k = static_cast<std::size_t>(std::upper_bound(path.grid.begin(), path.grid.end(), t) - path.grid.begin());
        k = std::clamp<std::size_t>(k, 1, path.size() - 1);
        const auto a = path.row(k - 1);
        if (t == path.grid[k - 1] || path.size() == 1) {
            std::copy(a.begin(), a.end(), w.begin());
        } else if (t == path.grid[k]) {
            const auto b = path.row(k);
            std::copy(b.begin(), b.end(), w.begin());
        } else {
            const auto b = path.row(k);
            const double theta = (t - path.grid[k - 1]) / (path.grid[k] - path.grid[k - 1]);
            for (std::size_t c = 0; c < stride; ++c) w[c] = a[c] + theta * (b[c] - a[c]);
        }
        z.push_back(f(GroupPoint::from_coords(w)), s);
        z.source_horizon = t;
    }
    return z;
}

PushforwardProcess simulate_pushforward(const GroupMap& f, const GroupPoint& g0, const PushforwardOptions& opt,
                                        RngSpec rng) {
    if (!(opt.ds > 0.0) || !(opt.window > 0.0) || opt.substeps < 1) {
        throw DomainError("simulate_pushforward: ds, window and substeps must be positive");
    }
    if (g0.dim() != f.source_dim) throw DimensionError("simulate_pushforward: start point dimension");
    const double rate0 = opt.time_change ? clock_rate(f, g0, opt.step, opt.component) : 1.0;
    if (!(rate0 >= kClockPlateau)) throw DomainError("simulate_pushforward: clock rate vanishes at the start point");
    const double dt = opt.ds / (static_cast<double>(opt.substeps) * rate0);
    auto steps = static_cast<std::size_t>(std::ceil(opt.window / (rate0 * dt))) + static_cast<std::size_t>(opt.substeps);
    const auto s_grid = uniform_grid(opt.window, opt.ds);
    for (;;) {
        if (steps > opt.max_path_steps) {
            throw NonExitError("simulate_pushforward: clock did not cover the window within " +
                               std::to_string(opt.max_path_steps) + " path steps");
        }
        std::vector<double> grid(steps + 1);
        for (std::size_t k = 0; k <= steps; ++k) grid[k] = static_cast<double>(k) * dt;
        HorizontalPath path = simulate_hbm(g0, grid, rng);
        path.driver.reset();
        const TimeClock clock = opt.time_change ? sigma_clock(path, f, opt.step, opt.component) : identity_clock(path.grid);
        if (clock.final_value() >= opt.window) return pushforward(path, f, clock, s_grid);
        // Counter-based normals: the longer path extends this one.
        steps *= 2;
    }
}

}  // namespace hdl
