#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hdl/group.hpp"

namespace hdl {

/// B(center, radius) = { g : rho(center^{-1} g) < radius }.
struct KoranyiBall {
    GroupPoint center;
    double radius = 1.0;
};

/// An open set in H^n given by a membership predicate, optionally a Koranyi ball.
class Domain {
public:
    using Predicate = std::function<bool(const GroupPoint&)>;
    using DistanceHint = std::function<double(const GroupPoint&)>;

    static Domain ball(GroupPoint center, double radius);
    static Domain from_predicate(int n, Predicate contains, DistanceHint distance = {});

    [[nodiscard]] int dim() const noexcept { return n_; }
    [[nodiscard]] bool contains(const GroupPoint& g) const;
    /// Raw-coordinate membership used on the hot path of the exit walker.
    [[nodiscard]] bool contains_coords(std::span<const double> coords) const;
    [[nodiscard]] const std::optional<KoranyiBall>& as_ball() const noexcept { return ball_; }

    /// Lower bound on the Koranyi distance to the complement; radius - rho(center^{-1} g) for balls.
    /// Empty when no hint is available.
    [[nodiscard]] std::optional<double> boundary_distance(std::span<const double> coords) const;

    /// rho(center^{-1} g) - radius; positive outside. Balls only.
    [[nodiscard]] double gauge_excess(std::span<const double> coords) const;

private:
    int n_ = 1;
    Predicate contains_;
    DistanceHint distance_;
    std::optional<KoranyiBall> ball_;
    std::vector<double> center_coords_;
};

/// rho(b^{-1} a) on raw (x_1, y_1, ..., t) coordinates of equal length.
[[nodiscard]] double koranyi_dist_coords(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace hdl
