#include "hdl/domain.hpp"

#include <cmath>
#include <vector>

#include "hdl/error.hpp"

namespace hdl {

double koranyi_dist_coords(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t w = a.size() - 1;
    double r2 = 0.0, cross = 0.0;
    for (std::size_t j = 0; j < w; j += 2) {
        const double dx = a[j] - b[j];
        const double dy = a[j + 1] - b[j + 1];
        r2 += dx * dx + dy * dy;
        cross += b[j] * a[j + 1] - b[j + 1] * a[j];
    }
    const double t = a[w] - b[w] + 2.0 * cross;
    return std::sqrt(std::sqrt(r2 * r2 + t * t));
}

Domain Domain::ball(GroupPoint center, double radius) {
    validate(center);
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball radius must be positive");
    Domain d;
    d.n_ = center.dim();
    d.center_coords_ = center.coords();
    d.ball_ = KoranyiBall{std::move(center), radius};
    return d;
}

Domain Domain::from_predicate(int n, Predicate contains, DistanceHint distance) {
    if (n < 1) throw DimensionError("domain dimension must be >= 1");
    if (!contains) throw DomainError("domain needs a membership predicate");
    Domain d;
    d.n_ = n;
    d.contains_ = std::move(contains);
    d.distance_ = std::move(distance);
    return d;
}

bool Domain::contains(const GroupPoint& g) const {
    if (g.dim() != n_) throw DimensionError("domain membership: dimension mismatch");
    if (ball_) return koranyi_dist(g, ball_->center) < ball_->radius;
    return contains_(g);
}

bool Domain::contains_coords(std::span<const double> coords) const {
    if (ball_) {
        const auto& c = center_coords_;
        return koranyi_dist_coords(coords, c) < ball_->radius;
    }
    return contains_(GroupPoint::from_coords(coords));
}

std::optional<double> Domain::boundary_distance(std::span<const double> coords) const {
    if (ball_) {
        const auto& c = center_coords_;
        return ball_->radius - koranyi_dist_coords(coords, c);
    }
    if (distance_) return distance_(GroupPoint::from_coords(coords));
    return std::nullopt;
}

double Domain::gauge_excess(std::span<const double> coords) const {
    if (!ball_) throw DomainError("gauge_excess is defined for Koranyi balls only");
    const auto& c = center_coords_;
    return koranyi_dist_coords(coords, c) - ball_->radius;
}

}  // namespace hdl
