#include "hdl/group.hpp"

#include <cmath>
#include <string>

#include "hdl/error.hpp"

namespace hdl {

GroupPoint::GroupPoint(std::vector<double> z, double t) : horizontal(std::move(z)), vertical(t) {}

GroupPoint GroupPoint::from_coords(std::span<const double> coords) {
    if (coords.size() % 2 == 0) {
        throw DimensionError("group point needs 2n+1 coordinates, got " + std::to_string(coords.size()));
    }
    return GroupPoint({coords.begin(), coords.end() - 1}, coords.back());
}

GroupPoint GroupPoint::identity(int n) {
    return GroupPoint(std::vector<double>(2 * static_cast<std::size_t>(n), 0.0), 0.0);
}

double GroupPoint::horizontal_norm2() const noexcept {
    double s = 0.0;
    for (double c : horizontal) s += c * c;
    return s;
}

std::vector<double> GroupPoint::coords() const {
    std::vector<double> out(horizontal);
    out.push_back(vertical);
    return out;
}

bool GroupPoint::is_finite() const noexcept {
    if (!std::isfinite(vertical)) return false;
    for (double c : horizontal)
        if (!std::isfinite(c)) return false;
    return true;
}

void validate(const GroupPoint& g) {
    if (g.horizontal.size() % 2 != 0 || g.horizontal.empty()) {
        throw DimensionError("horizontal part must have even, nonzero length");
    }
    if (!g.is_finite()) throw DomainError("group point has non-finite components");
}

namespace {

void require_same_dim(const GroupPoint& a, const GroupPoint& b, const char* op) {
    if (a.horizontal.size() != b.horizontal.size()) {
        throw DimensionError(std::string(op) + ": dimension mismatch (" +
                             std::to_string(a.horizontal.size() / 2) + " vs " +
                             std::to_string(b.horizontal.size() / 2) + ")");
    }
}

}  // namespace

GroupPoint group_mul(const GroupPoint& a, const GroupPoint& b) {
    require_same_dim(a, b, "group_mul");
    GroupPoint out;
    out.horizontal.resize(a.horizontal.size());
    double cross = 0.0;
    for (std::size_t j = 0; j < a.horizontal.size(); j += 2) {
        const double xa = a.horizontal[j], ya = a.horizontal[j + 1];
        const double xb = b.horizontal[j], yb = b.horizontal[j + 1];
        out.horizontal[j] = xa + xb;
        out.horizontal[j + 1] = ya + yb;
        cross += ya * xb - xa * yb;
    }
    out.vertical = a.vertical + b.vertical + 2.0 * cross;
    return out;
}

GroupPoint group_inv(const GroupPoint& a) {
    GroupPoint out;
    out.horizontal.resize(a.horizontal.size());
    for (std::size_t i = 0; i < a.horizontal.size(); ++i) out.horizontal[i] = -a.horizontal[i];
    out.vertical = -a.vertical;
    return out;
}

double koranyi_norm(const GroupPoint& g) noexcept {
    const double r2 = g.horizontal_norm2();
    return std::sqrt(std::sqrt(r2 * r2 + g.vertical * g.vertical));
}

double koranyi_dist(const GroupPoint& a, const GroupPoint& b) {
    require_same_dim(a, b, "koranyi_dist");
    // rho(b^{-1} a) without materializing the product.
    double r2 = 0.0, cross = 0.0;
    for (std::size_t j = 0; j < a.horizontal.size(); j += 2) {
        const double dx = a.horizontal[j] - b.horizontal[j];
        const double dy = a.horizontal[j + 1] - b.horizontal[j + 1];
        r2 += dx * dx + dy * dy;
        cross += -b.horizontal[j + 1] * a.horizontal[j] + b.horizontal[j] * a.horizontal[j + 1];
    }
    const double t = a.vertical - b.vertical + 2.0 * cross;
    return std::sqrt(std::sqrt(r2 * r2 + t * t));
}

GroupPoint dilate(const GroupPoint& g, double alpha) {
    GroupPoint out = g;
    for (double& c : out.horizontal) c *= alpha;
    out.vertical *= alpha * alpha;
    return out;
}

GroupPoint flow(const GroupPoint& g, Direction dir, double h) {
    GroupPoint out = g;
    const auto j = static_cast<std::size_t>(dir.coordinate());
    if (dir.is_y()) {
        out.horizontal[2 * j + 1] += h;
        out.vertical -= 2.0 * g.horizontal[2 * j] * h;
    } else {
        out.horizontal[2 * j] += h;
        out.vertical += 2.0 * g.horizontal[2 * j + 1] * h;
    }
    return out;
}

void right_mul_horizontal(std::span<double> g, std::span<const double> dz) noexcept {
    double cross = 0.0;
    for (std::size_t j = 0; j < dz.size(); j += 2) {
        cross += g[j + 1] * dz[j] - g[j] * dz[j + 1];
        g[j] += dz[j];
        g[j + 1] += dz[j + 1];
    }
    g[dz.size()] += 2.0 * cross;
}

}  // namespace hdl
