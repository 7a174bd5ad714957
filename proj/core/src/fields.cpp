#include "hdl/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdl/error.hpp"

namespace hdl {

namespace {

void require_positive_step(double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw DomainError("finite-difference step must be positive, got " + std::to_string(step));
    }
}

void require_field_dim(const ScalarField& u, const GroupPoint& g) {
    if (g.dim() != u.n) {
        throw DimensionError("field lives on H^" + std::to_string(u.n) + " but point is in H^" +
                             std::to_string(g.dim()));
    }
}

}  // namespace

ScalarField coordinate_field(int n, int index) {
    if (index < 0 || index > 2 * n) throw DomainError("coordinate index out of range");
    ScalarField f;
    f.n = n;
    if (index == 2 * n) {
        f.value = [](const GroupPoint& g) { return g.vertical; };
        f.gradient = [](const GroupPoint& g) {
            std::vector<double> grad(g.horizontal.size());
            for (std::size_t j = 0; j < grad.size(); j += 2) {
                grad[j] = 2.0 * g.horizontal[j + 1];
                grad[j + 1] = -2.0 * g.horizontal[j];
            }
            return grad;
        };
    } else {
        const auto i = static_cast<std::size_t>(index);
        f.value = [i](const GroupPoint& g) { return g.horizontal[i]; };
        f.gradient = [i](const GroupPoint& g) {
            std::vector<double> grad(g.horizontal.size(), 0.0);
            grad[i] = 1.0;
            return grad;
        };
    }
    return f;
}

ScalarField constant_field(int n, double c) {
    return {n, [c](const GroupPoint&) { return c; },
            [](const GroupPoint& g) { return std::vector<double>(g.horizontal.size(), 0.0); }};
}

double horizontal_derivative(const ScalarField& u, const GroupPoint& g, Direction dir, double step,
                             DerivativeMode mode) {
    require_positive_step(step);
    require_field_dim(u, g);
    if (dir.index < 0 || dir.index >= 2 * u.n) throw DomainError("direction index out of range");
    if (mode == DerivativeMode::prefer_analytic && u.has_gradient()) {
        return u.gradient(g)[static_cast<std::size_t>(dir.index)];
    }
    return (u(flow(g, dir, step)) - u(flow(g, dir, -step))) / (2.0 * step);
}

std::vector<double> horizontal_gradient(const ScalarField& u, const GroupPoint& g, double step,
                                        DerivativeMode mode) {
    require_positive_step(step);
    require_field_dim(u, g);
    if (mode == DerivativeMode::prefer_analytic && u.has_gradient()) return u.gradient(g);
    std::vector<double> grad(2 * static_cast<std::size_t>(u.n));
    for (int i = 0; i < 2 * u.n; ++i) {
        grad[static_cast<std::size_t>(i)] = horizontal_derivative(u, g, Direction{i}, step);
    }
    return grad;
}

double hsub_laplacian(const ScalarField& u, const GroupPoint& g, double step) {
    require_positive_step(step);
    require_field_dim(u, g);
    const double centre = u(g);
    double sum = 0.0;
    for (int i = 0; i < 2 * u.n; ++i) {
        const Direction d{i};
        sum += u(flow(g, d, step)) - 2.0 * centre + u(flow(g, d, -step));
    }
    return sum / (step * step);
}

double gradient_consistency(const ScalarField& u, std::span<const GroupPoint> points, double step) {
    if (!u.has_gradient()) throw DomainError("gradient_consistency needs an analytic gradient");
    double worst = 0.0;
    for (const auto& g : points) {
        const auto analytic = u.gradient(g);
        const auto numeric = horizontal_gradient(u, g, step);
        for (std::size_t i = 0; i < numeric.size(); ++i) {
            worst = std::max(worst, std::abs(analytic[i] - numeric[i]));
        }
    }
    return worst;
}

GroupMap::GroupMap(std::string name_, int source, int target, std::vector<ScalarField> comps)
    : name(std::move(name_)), source_dim(source), target_dim(target), components(std::move(comps)) {
    if (source < 1 || target < 1) throw DimensionError("map dimensions must be >= 1");
    if (components.size() != 2 * static_cast<std::size_t>(target) + 1) {
        throw DimensionError("map into H^" + std::to_string(target) + " needs " +
                             std::to_string(2 * target + 1) + " components, got " +
                             std::to_string(components.size()));
    }
    for (const auto& c : components) {
        if (c.n != source) throw DimensionError("all map components must share the source dimension");
        if (!c.value) throw DomainError("map component without evaluator");
    }
}

GroupPoint GroupMap::operator()(const GroupPoint& g) const {
    if (g.dim() != source_dim) throw DimensionError("map " + name + ": source dimension mismatch");
    GroupPoint out;
    out.horizontal.resize(2 * static_cast<std::size_t>(target_dim));
    for (std::size_t k = 0; k < out.horizontal.size(); ++k) out.horizontal[k] = components[k](g);
    out.vertical = components.back()(g);
    return out;
}

bool GroupMap::has_gradients() const noexcept {
    return std::all_of(components.begin(), components.end(),
                       [](const ScalarField& c) { return c.has_gradient(); });
}

GroupMap GroupMap::without_gradients() const {
    std::vector<ScalarField> stripped;
    stripped.reserve(components.size());
    for (const auto& c : components) stripped.push_back(c.without_gradient());
    return GroupMap(name + " [fd]", source_dim, target_dim, std::move(stripped));
}

HorizontalPath horizontal_lift(const PlanarPath& planar, double eta0) {
    validate_grid(planar.grid);
    if (planar.values.size() != planar.grid.size() * planar.width()) {
        throw DimensionError("planar curve values do not match its grid");
    }
    HorizontalPath out;
    out.n = planar.n;
    out.grid = planar.grid;
    out.coords.reserve(planar.size() * out.stride());
    double eta = eta0;
    for (std::size_t k = 0; k < planar.size(); ++k) {
        const auto cur = planar.value(k);
        if (k > 0) {
            const auto prev = planar.value(k - 1);
            double area = 0.0;
            for (std::size_t j = 0; j < cur.size(); j += 2) {
                area += prev[j + 1] * (cur[j] - prev[j]) - prev[j] * (cur[j + 1] - prev[j + 1]);
            }
            eta += 2.0 * area;
        }
        out.coords.insert(out.coords.end(), cur.begin(), cur.end());
        out.coords.push_back(eta);
    }
    return out;
}

double horizontality_residual(const SampledProcess& path) {
    double worst = 0.0;
    const std::size_t w = 2 * static_cast<std::size_t>(path.n);
    for (std::size_t k = 1; k < path.size(); ++k) {
        const auto prev = path.row(k - 1);
        const auto cur = path.row(k);
        double area = 0.0;
        for (std::size_t j = 0; j < w; j += 2) {
            area += prev[j + 1] * (cur[j] - prev[j]) - prev[j] * (cur[j + 1] - prev[j + 1]);
        }
        worst = std::max(worst, std::abs((cur[w] - prev[w]) - 2.0 * area));
    }
    return worst;
}

}  // namespace hdl
