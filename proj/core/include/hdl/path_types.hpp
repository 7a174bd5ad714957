#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hdl/group.hpp"

namespace hdl {

/// Throws DomainError unless the grid has at least one knot, is finite and strictly increasing.
void validate_grid(std::span<const double> grid);
/// Same, and additionally requires grid[0] == 0.
void validate_grid_from_zero(std::span<const double> grid);
/// {0, dt, 2 dt, ..., T}; the final knot is T exactly when T/dt is (close to) an integer.
[[nodiscard]] std::vector<double> uniform_grid(double T, double dt);

/// A sampled curve in R^{2n}: (B^1_1, B^2_1, ..., B^1_n, B^2_n) at each knot.
struct PlanarPath {
    int n = 1;
    std::vector<double> grid;
    std::vector<double> values;                     ///< grid.size() rows of 2n
    std::optional<std::vector<double>> increments;  ///< grid.size()-1 rows of 2n

    [[nodiscard]] std::size_t size() const noexcept { return grid.size(); }
    [[nodiscard]] std::size_t width() const noexcept { return 2 * static_cast<std::size_t>(n); }
    [[nodiscard]] std::span<const double> value(std::size_t k) const {
        return {values.data() + k * width(), width()};
    }
    [[nodiscard]] std::span<const double> increment(std::size_t k) const;
    /// Single coordinate as a series over the grid.
    [[nodiscard]] std::vector<double> component(std::size_t c) const;
};

/// A time-indexed process in H^n stored densely as rows (x_1, y_1, ..., x_n, y_n, t).
struct SampledProcess {
    int n = 1;
    std::vector<double> grid;
    std::vector<double> coords;

    [[nodiscard]] std::size_t size() const noexcept { return grid.size(); }
    [[nodiscard]] std::size_t stride() const noexcept { return 2 * static_cast<std::size_t>(n) + 1; }
    [[nodiscard]] std::span<const double> row(std::size_t k) const {
        return {coords.data() + k * stride(), stride()};
    }
    [[nodiscard]] GroupPoint point(std::size_t k) const { return GroupPoint::from_coords(row(k)); }
    [[nodiscard]] std::vector<double> component(std::size_t c) const;
    void push_back(const GroupPoint& g, double time);
};

/// A horizontal trajectory; `driver` holds the planar Brownian increments that generated it.
struct HorizontalPath : SampledProcess {
    std::optional<PlanarPath> driver;
};

}  // namespace hdl
