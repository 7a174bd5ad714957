#include "hdl/battery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hdl/error.hpp"
#include "hdl/parallel.hpp"

namespace hdl {

namespace {

struct PathData {
    PathStatistics stats;
    std::vector<std::vector<double>> normalized;  ///< per component
    std::vector<double> qv_sum;
    std::vector<double> cross_sum;  ///< per pair (a < b), sum of normalized products
};

double grid_spacing(const SampledProcess& z) {
    if (z.size() < 2) throw DomainError("bm_test_battery: a path needs at least two samples");
    const double ds = z.grid[1] - z.grid[0];
    if (!(ds > 0.0)) throw DomainError("bm_test_battery: grid must be increasing");
    for (std::size_t k = 1; k + 1 < z.size(); ++k) {
        if (std::abs((z.grid[k + 1] - z.grid[k]) - ds) > 1e-6 * ds) {
            throw DomainError("bm_test_battery: grid is not uniform at knot " + std::to_string(k));
        }
    }
    return ds;
}

PathData analyze(const SampledProcess& z, double ds, double window) {
    const auto comps = 2 * static_cast<std::size_t>(z.n);
    const std::size_t m = z.size() - 1;
    const double scale = 1.0 / std::sqrt(ds);
    PathData d;
    d.normalized.assign(comps, std::vector<double>(m));
    d.qv_sum.assign(comps, 0.0);
    double worst_vertical = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const auto a = z.row(k), b = z.row(k + 1);
        double area = 0.0;
        for (std::size_t j = 0; j < comps; j += 2) {
            const double dx = b[j] - a[j], dy = b[j + 1] - a[j + 1];
            area += a[j + 1] * dx - a[j] * dy;
        }
        worst_vertical = std::max(worst_vertical, std::abs((b[comps] - a[comps]) - 2.0 * area));
        for (std::size_t c = 0; c < comps; ++c) {
            const double inc = b[c] - a[c];
            d.qv_sum[c] += inc * inc;
            d.normalized[c][k] = inc * scale;
        }
    }
    d.stats.vertical_residual = worst_vertical;
    for (std::size_t c = 0; c < comps; ++c) d.stats.qv_ratio.push_back(d.qv_sum[c] / window);
    for (std::size_t a = 0; a < comps; ++a) {
        for (std::size_t b = a + 1; b < comps; ++b) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) s += d.normalized[a][k] * d.normalized[b][k];
            d.cross_sum.push_back(s);
            d.stats.max_cross = std::max(d.stats.max_cross, std::abs(s) / static_cast<double>(m));
        }
    }
    return d;
}

}  // namespace

double vertical_residual_bound(double ds, int p, std::size_t steps, double level) {
    const double pi = std::numbers::pi;
    const double count = static_cast<double>(p) * static_cast<double>(std::max<std::size_t>(steps, 1));
    const double tail = (2.0 / pi) * std::log(4.0 * count / (pi * level));
    return 2.0 * ds * p * std::max(tail, 0.0);
}

BmTestReport bm_test_battery(std::span<const SampledProcess* const> paths, const BatteryOptions& opt) {
    if (paths.empty()) throw DomainError("bm_test_battery: no paths");
    if (!(opt.level > 0.0 && opt.level < 1.0)) throw DomainError("bm_test_battery: level must lie in (0, 1)");
    const SampledProcess& first = *paths.front();
    const double ds = grid_spacing(first);
    for (const auto* z : paths) {
        if (z->n != first.n || z->size() != first.size()) {
            throw DomainError("bm_test_battery: paths differ in dimension or length");
        }
        if (std::abs(grid_spacing(*z) - ds) > 1e-6 * ds) throw DomainError("bm_test_battery: paths differ in spacing");
    }
    const std::size_t m = first.size() - 1;
    const std::size_t total = m * paths.size();
    if (total < opt.min_increments) {
        throw DomainError("bm_test_battery: " + std::to_string(total) + " increments per component, need at least " +
                          std::to_string(opt.min_increments));
    }
    const double window = first.grid.back() - first.grid.front();
    const int p = first.n;
    const auto comps = 2 * static_cast<std::size_t>(p);

    auto data = parallel_map(paths.size(), opt.workers,
                             [&](std::size_t i) { return analyze(*paths[i], ds, window); });

    BmTestReport r;
    r.header =
        "necessary conditions for horizontal Brownian motion (Gaussian increments, quadratic variation, "
        "cross-covariation, vertical Levy-area identity); passing does not characterize Brownian motion";
    r.p = p;
    r.paths = paths.size();
    r.increments = total;
    r.ds = ds;
    r.window = window;
    r.level = opt.level;
    r.qv_band = opt.qv_band;

    const double ks_level = opt.level / static_cast<double>(comps);
    for (std::size_t c = 0; c < comps; ++c) {
        std::vector<double> pooled;
        pooled.reserve(total);
        double qv = 0.0;
        for (const auto& d : data) {
            pooled.insert(pooled.end(), d.normalized[c].begin(), d.normalized[c].end());
            qv += d.qv_sum[c];
        }
        r.ks.push_back(ks_test_normal(std::move(pooled)));
        r.ks_pass.push_back(r.ks.back().p_value >= ks_level);
        r.qv_ratio.push_back(qv / (window * static_cast<double>(paths.size())));
        r.qv_pass.push_back(std::abs(r.qv_ratio.back() - 1.0) <= opt.qv_band);
    }

    const std::size_t pairs = comps * (comps - 1) / 2;
    for (std::size_t q = 0; q < pairs; ++q) {
        double s = 0.0;
        for (const auto& d : data) s += d.cross_sum[q];
        r.max_cross = std::max(r.max_cross, std::abs(s) / static_cast<double>(total));
    }
    r.cross_band = opt.cross_sigmas / std::sqrt(static_cast<double>(total));
    r.cross_pass = r.max_cross <= r.cross_band;

    for (const auto& d : data) r.vertical_residual = std::max(r.vertical_residual, d.stats.vertical_residual);
    r.vertical_scale = 2.0 * ds;
    r.vertical_bound = vertical_residual_bound(ds, p, total, opt.level);
    r.vertical_pass = r.vertical_residual <= r.vertical_bound;

    r.pass = r.cross_pass && r.vertical_pass && std::ranges::all_of(r.ks_pass, [](bool b) { return b; }) &&
             std::ranges::all_of(r.qv_pass, [](bool b) { return b; });
    r.per_path.reserve(data.size());
    for (auto& d : data) r.per_path.push_back(std::move(d.stats));
    return r;
}

}  // namespace hdl
