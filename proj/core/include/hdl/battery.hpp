#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hdl/path_types.hpp"
#include "hdl/stats.hpp"

namespace hdl {

struct BatteryOptions {
    double level = 0.01;
    double qv_band = 0.04;       ///< pass when |QV ratio - 1| <= qv_band
    double cross_sigmas = 4.0;   ///< cross-covariance band = cross_sigmas / sqrt(increments)
    std::size_t min_increments = 1000;
    unsigned workers = 1;
};

/// Statistics of one path of the batch.
struct PathStatistics {
    std::vector<double> qv_ratio;  ///< per horizontal component, sum (dZ)^2 / window
    double max_cross = 0.0;        ///< max |mean of normalized products| over distinct pairs
    double vertical_residual = 0.0;
};

/// Necessary conditions for horizontal Brownian motion, pooled over a batch of sampled paths on a
/// common uniform grid: Gaussian increments (KS per horizontal component, Bonferroni over the 2p
/// components), quadratic variation, cross-covariation, and the vertical identity
/// dZ_t = 2 sum_j (Z_yj dZ_xj - Z_xj dZ_yj) applied to Z's own horizontal increments.
/// Passing does not prove a process is Brownian.
struct BmTestReport {
    std::string header;
    int p = 1;
    std::size_t paths = 0;
    std::size_t increments = 0;  ///< per component, pooled over paths
    double ds = 0.0;
    double window = 0.0;
    double level = 0.01;

    std::vector<KsResult> ks;
    std::vector<bool> ks_pass;
    std::vector<double> qv_ratio;  ///< pooled
    std::vector<bool> qv_pass;
    double qv_band = 0.04;
    double max_cross = 0.0;  ///< pooled
    double cross_band = 0.0;
    bool cross_pass = false;
    double vertical_residual = 0.0;  ///< max over all paths and steps
    double vertical_scale = 0.0;     ///< 2 ds, the size of one step's Levy area
    double vertical_bound = 0.0;
    bool vertical_pass = false;
    bool pass = false;

    std::vector<PathStatistics> per_path;
};

/// Throws DomainError when the grids differ or are not uniform, or the batch has fewer than
/// min_increments increments per component.
[[nodiscard]] BmTestReport bm_test_battery(std::span<const SampledProcess* const> paths,
                                           const BatteryOptions& options = {});

template <class Process>
[[nodiscard]] BmTestReport bm_test_battery(std::span<const Process> paths, const BatteryOptions& options = {}) {
    std::vector<const SampledProcess*> ptrs;
    ptrs.reserve(paths.size());
    for (const auto& p : paths) ptrs.push_back(&p);
    return bm_test_battery(std::span<const SampledProcess* const>(ptrs), options);
}

template <class Process>
[[nodiscard]] BmTestReport bm_test_battery(const std::vector<Process>& paths, const BatteryOptions& options = {}) {
    return bm_test_battery(std::span<const Process>(paths), options);
}

/// Max-over-steps bound for the vertical residual: every step contributes a sum of p Levy areas of
/// scale 2 ds with density 1 / (2 cosh(pi v / 2)), union-bounded over all steps at `level`.
[[nodiscard]] double vertical_residual_bound(double ds, int p, std::size_t steps, double level);

}  // namespace hdl
