#include "hdl/path_types.hpp"

#include <cmath>
#include <string>

#include "hdl/error.hpp"

namespace hdl {

void validate_grid(std::span<const double> grid) {
    if (grid.empty()) throw DomainError("time grid is empty");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(grid[k])) throw DomainError("time grid has a non-finite knot");
        if (k > 0 && !(grid[k] > grid[k - 1])) {
            throw DomainError("time grid is not strictly increasing at knot " + std::to_string(k));
        }
    }
}

void validate_grid_from_zero(std::span<const double> grid) {
    validate_grid(grid);
    if (grid.front() != 0.0) throw DomainError("time grid must start at 0");
}

std::vector<double> uniform_grid(double T, double dt) {
    if (!(dt > 0.0) || !(T > 0.0)) throw DomainError("uniform_grid needs T > 0 and dt > 0");
    const auto steps = static_cast<std::size_t>(std::llround(std::max(1.0, std::round(T / dt))));
    const double h = T / static_cast<double>(steps);
    std::vector<double> grid(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) grid[k] = static_cast<double>(k) * h;
    grid.back() = T;
    return grid;
}

std::span<const double> PlanarPath::increment(std::size_t k) const {
    if (!increments) throw DomainError("planar path has no retained increments");
    return {increments->data() + k * width(), width()};
}

std::vector<double> PlanarPath::component(std::size_t c) const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < size(); ++k) out[k] = values[k * width() + c];
    return out;
}

std::vector<double> SampledProcess::component(std::size_t c) const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < size(); ++k) out[k] = coords[k * stride() + c];
    return out;
}

void SampledProcess::push_back(const GroupPoint& g, double time) {
    if (g.dim() != n) throw DimensionError("process dimension mismatch");
    grid.push_back(time);
    coords.insert(coords.end(), g.horizontal.begin(), g.horizontal.end());
    coords.push_back(g.vertical);
}

}  // namespace hdl
