#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hdl/domain.hpp"
#include "hdl/fields.hpp"
#include "hdl/rng.hpp"
#include "hdl/stats.hpp"

namespace hdl {

struct ExitOptions {
    double dt = 1e-3;
    /// Shrink the step near the boundary of domains that provide a distance hint:
    /// step = clamp(shrink * d^2, dt * min_step_ratio, dt).
    bool adaptive = true;
    double shrink = 0.1;
    double min_step_ratio = 0.01;
    std::uint64_t max_steps = 10'000'000;
};

/// The first grid point of a horizontal Brownian path outside the domain.
struct ExitRecord {
    std::uint64_t step_index = 0;  ///< number of steps taken; 0 when the start is outside
    double time = 0.0;
    GroupPoint point;
    GroupPoint last_inside;  ///< equals `point` when the start is outside
    std::optional<double> overshoot;  ///< rho(center^{-1} point) - radius, balls only
};

/// Walk W(t) = g0 * W0(t) until it leaves `domain`. Step k uses normal blocks [k n, (k+1) n) of
/// `rng`, so with adaptive stepping off the visited points coincide with simulate_hbm on a uniform
/// grid. Throws NonExitError after max_steps.
[[nodiscard]] ExitRecord run_to_exit(const GroupPoint& g0, const Domain& domain, const ExitOptions& options,
                                     RngSpec rng);

struct ExitBatch {
    std::vector<ExitRecord> records;  ///< exited samples in sample-index order
    std::size_t requested = 0;
    std::size_t discarded = 0;        ///< samples that hit max_steps
    ExitOptions options;
};

/// Run `samples` independent walks; sample i uses rng.substream(i). Throws NonExitError when more
/// than `discard_budget` of the samples fail to exit.
[[nodiscard]] ExitBatch simulate_exits(const Domain& domain, const GroupPoint& g0, const ExitOptions& options,
                                       std::size_t samples, RngSpec rng, unsigned workers = 1,
                                       double discard_budget = 0.01);

/// Monte Carlo mean of phi over the exit points of a batch.
[[nodiscard]] Estimate estimate_from_exits(const ExitBatch& batch, const ScalarField& phi);

/// u(g0) = E[phi(W(S_U)) | W(0) = g0] by exit-time Monte Carlo.
[[nodiscard]] Estimate dirichlet_estimate(const Domain& domain, const ScalarField& phi, const GroupPoint& g0,
                                          const ExitOptions& options, std::size_t samples, RngSpec rng,
                                          unsigned workers = 1);

}  // namespace hdl
