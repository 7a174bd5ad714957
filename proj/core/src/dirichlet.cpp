#include "hdl/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdl/error.hpp"
#include "hdl/parallel.hpp"
#include "hdl/paths.hpp"

namespace hdl {

ExitRecord run_to_exit(const GroupPoint& g0, const Domain& domain, const ExitOptions& opt, RngSpec rng) {
    if (!(opt.dt > 0.0)) throw DomainError("run_to_exit: dt must be positive");
    if (g0.dim() != domain.dim()) throw DimensionError("run_to_exit: start point and domain differ in dimension");
    ExitRecord rec;
    const auto start = g0.coords();
    if (!domain.contains_coords(start)) {
        rec.point = g0;
        rec.last_inside = g0;
        if (domain.as_ball()) rec.overshoot = domain.gauge_excess(start);
        return rec;
    }
    const double dt_min = opt.dt * opt.min_step_ratio;
    HorizontalStepper walker(g0, rng);
    std::vector<double> previous(start);
    double time = 0.0;
    for (std::uint64_t k = 0; k < opt.max_steps; ++k) {
        double dt = opt.dt;
        if (opt.adaptive) {
            if (const auto d = domain.boundary_distance(walker.coords())) {
                dt = std::clamp(opt.shrink * (*d) * (*d), dt_min, opt.dt);
            }
        }
        const auto cur = walker.coords();
        std::copy(cur.begin(), cur.end(), previous.begin());
        walker.step(k, dt);
        time += dt;
        if (!domain.contains_coords(walker.coords())) {
            rec.step_index = k + 1;
            rec.time = time;
            rec.point = walker.point();
            rec.last_inside = GroupPoint::from_coords(previous);
            if (domain.as_ball()) rec.overshoot = domain.gauge_excess(walker.coords());
            return rec;
        }
    }
    throw NonExitError("run_to_exit: no exit within " + std::to_string(opt.max_steps) + " steps");
}

ExitBatch simulate_exits(const Domain& domain, const GroupPoint& g0, const ExitOptions& opt, std::size_t samples,
                         RngSpec rng, unsigned workers, double discard_budget) {
    if (samples == 0) throw DomainError("simulate_exits: samples must be >= 1");
    auto results = parallel_map(samples, workers, [&](std::size_t i) -> std::optional<ExitRecord> {
        try {
            return run_to_exit(g0, domain, opt, rng.substream(i));
        } catch (const NonExitError&) {
            return std::nullopt;
        }
    });
    ExitBatch batch;
    batch.requested = samples;
    batch.options = opt;
    batch.records.reserve(samples);
    for (auto& r : results) {
        if (r) {
            batch.records.push_back(std::move(*r));
        } else {
            ++batch.discarded;
        }
    }
    if (static_cast<double>(batch.discarded) > discard_budget * static_cast<double>(samples)) {
        throw NonExitError("simulate_exits: " + std::to_string(batch.discarded) + " of " + std::to_string(samples) +
                           " samples did not exit (budget " + std::to_string(discard_budget) + ")");
    }
    return batch;
}

Estimate estimate_from_exits(const ExitBatch& batch, const ScalarField& phi) {
    std::vector<double> values;
    values.reserve(batch.records.size());
    for (const auto& r : batch.records) values.push_back(phi(r.point));
    std::string notes = "discrete exit detection at the first outside grid point";
    if (batch.options.adaptive) notes += "; adaptive boundary step shrink";
    if (batch.discarded > 0) notes += "; " + std::to_string(batch.discarded) + " non-exiting samples discarded";
    return estimate_mean(values, batch.options.dt, notes);
}

Estimate dirichlet_estimate(const Domain& domain, const ScalarField& phi, const GroupPoint& g0,
                            const ExitOptions& opt, std::size_t samples, RngSpec rng, unsigned workers) {
    if (!domain.contains(g0)) throw DomainError("dirichlet_estimate: start point must lie in the domain");
    return estimate_from_exits(simulate_exits(domain, g0, opt, samples, rng, workers), phi);
}

}  // namespace hdl
