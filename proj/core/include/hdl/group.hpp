#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hdl {

/// A point (z, t) of the Heisenberg group H^n.
///
/// The horizontal part is stored interleaved as (x_1, y_1, ..., x_n, y_n) and the
/// vertical coordinate separately. The group product is
///
///     (z, t) * (z', t') = (z + z', t + t' + 2 sum_j (y_j x'_j - x_j y'_j)).
struct GroupPoint {
    std::vector<double> horizontal;
    double vertical = 0.0;

    GroupPoint() = default;
    GroupPoint(std::vector<double> z, double t);
    /// Flat coordinates (x_1, y_1, ..., x_n, y_n, t); size must be odd.
    static GroupPoint from_coords(std::span<const double> coords);
    static GroupPoint identity(int n);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(horizontal.size() / 2); }
    [[nodiscard]] double x(int j) const { return horizontal[2 * static_cast<std::size_t>(j)]; }
    [[nodiscard]] double y(int j) const { return horizontal[2 * static_cast<std::size_t>(j) + 1]; }
    /// |z|^2
    [[nodiscard]] double horizontal_norm2() const noexcept;
    [[nodiscard]] std::vector<double> coords() const;
    [[nodiscard]] bool is_finite() const noexcept;

    friend bool operator==(const GroupPoint&, const GroupPoint&) = default;
};

/// Throws DimensionError unless the horizontal length is even and the point is finite.
void validate(const GroupPoint& g);

[[nodiscard]] GroupPoint group_mul(const GroupPoint& a, const GroupPoint& b);
[[nodiscard]] GroupPoint group_inv(const GroupPoint& a);

/// rho(z, t) = (|z|^4 + t^2)^{1/4}
[[nodiscard]] double koranyi_norm(const GroupPoint& g) noexcept;
/// rho(b^{-1} * a)
[[nodiscard]] double koranyi_dist(const GroupPoint& a, const GroupPoint& b);

/// delta_alpha(z, t) = (alpha z, alpha^2 t)
[[nodiscard]] GroupPoint dilate(const GroupPoint& g, double alpha);

/// Index of a left-invariant horizontal field in the order (X_1, Y_1, ..., X_n, Y_n).
struct Direction {
    int index = 0;
    [[nodiscard]] int coordinate() const noexcept { return index / 2; }
    [[nodiscard]] bool is_y() const noexcept { return (index % 2) == 1; }
};

/// g * exp(h V) for the horizontal field V: right multiplication by the point whose only
/// nonzero coordinate is h in the slot matching V.
[[nodiscard]] GroupPoint flow(const GroupPoint& g, Direction dir, double h);

/// In-place right multiplication g <- g * (dz, 0). The step primitive of horizontal Brownian motion.
void right_mul_horizontal(std::span<double> g_coords, std::span<const double> dz) noexcept;

}  // namespace hdl
