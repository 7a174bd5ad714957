#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hdl/group.hpp"
#include "hdl/path_types.hpp"
#include "hdl/rng.hpp"

namespace hdl {

/// Brownian motion in R^{2n} on `grid` (which must start at 0). Increment k uses normal blocks
/// [k n, (k + 1) n) of the stream, scaled by sqrt(grid[k+1] - grid[k]). Increments are retained.
[[nodiscard]] PlanarPath simulate_bm(int n, std::span<const double> grid, RngSpec rng);

/// S(t_k) = 2 sum_j sum_{m<k} [B^2_j(t_m) dB^1_j(t_m) - B^1_j(t_m) dB^2_j(t_m)], S(0) = 0.
[[nodiscard]] std::vector<double> levy_area(const PlanarPath& b);

/// W(t_k) = g0 * (B(t_k), S(t_k)) with the driver retained.
[[nodiscard]] HorizontalPath simulate_hbm(const GroupPoint& g0, std::span<const double> grid, RngSpec rng);

/// Sum of squared increments; 0 for fewer than two samples.
[[nodiscard]] double quadratic_variation(std::span<const double> series) noexcept;

/// Running left-point sums I_0 = 0, I_{k+1} = I_k + integrand[k] * increments[k].
[[nodiscard]] std::vector<double> ito_integral(std::span<const double> integrand,
                                               std::span<const double> increments);

/// Per-step simulation state shared by the path generator and the exit-time walker.
class HorizontalStepper {
public:
    HorizontalStepper(const GroupPoint& g0, RngSpec rng);

    /// Advance by a step of duration dt using step index k of the stream.
    void step(std::uint64_t k, double dt);
    [[nodiscard]] std::span<const double> coords() const noexcept { return state_; }
    [[nodiscard]] std::span<const double> last_increment() const noexcept { return dz_; }
    [[nodiscard]] int dim() const noexcept { return n_; }
    [[nodiscard]] GroupPoint point() const { return GroupPoint::from_coords(state_); }

private:
    int n_;
    NormalStream normals_;
    std::vector<double> state_;
    std::vector<double> dz_;
};

}  // namespace hdl
