#include "hdl/paths.hpp"

#include <algorithm>
#include <cmath>

#include "hdl/error.hpp"

namespace hdl {

PlanarPath simulate_bm(int n, std::span<const double> grid, RngSpec rng) {
    if (n < 1) throw DimensionError("simulate_bm: n must be >= 1");
    validate_grid_from_zero(grid);
    PlanarPath path;
    path.n = n;
    path.grid.assign(grid.begin(), grid.end());
    const std::size_t w = path.width();
    const std::size_t steps = grid.size() - 1;
    path.values.assign(grid.size() * w, 0.0);
    std::vector<double> inc(steps * w);
    const NormalStream normals(rng);
    for (std::size_t k = 0; k < steps; ++k) {
        const double scale = std::sqrt(grid[k + 1] - grid[k]);
        std::span<double> dk(inc.data() + k * w, w);
        normals.fill(static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n), dk);
        for (std::size_t c = 0; c < w; ++c) {
            dk[c] *= scale;
            path.values[(k + 1) * w + c] = path.values[k * w + c] + dk[c];
        }
    }
    path.increments = std::move(inc);
    return path;
}

std::vector<double> levy_area(const PlanarPath& b) {
    if (!b.increments) throw DomainError("levy_area needs the driver increments");
    std::vector<double> s(b.size(), 0.0);
    const std::size_t w = b.width();
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        const auto v = b.value(k);
        const auto d = b.increment(k);
        double area = 0.0;
        for (std::size_t j = 0; j < w; j += 2) area += v[j + 1] * d[j] - v[j] * d[j + 1];
        s[k + 1] = s[k] + 2.0 * area;
    }
    return s;
}

HorizontalPath simulate_hbm(const GroupPoint& g0, std::span<const double> grid, RngSpec rng) {
    validate(g0);
    PlanarPath driver = simulate_bm(g0.dim(), grid, rng);
    const auto area = levy_area(driver);
    HorizontalPath path;
    path.n = g0.dim();
    path.grid = driver.grid;
    path.coords.reserve(driver.size() * path.stride());
    GroupPoint lifted = GroupPoint::identity(path.n);
    for (std::size_t k = 0; k < driver.size(); ++k) {
        const auto v = driver.value(k);
        std::copy(v.begin(), v.end(), lifted.horizontal.begin());
        lifted.vertical = area[k];
        const GroupPoint w = k == 0 ? g0 : group_mul(g0, lifted);
        path.coords.insert(path.coords.end(), w.horizontal.begin(), w.horizontal.end());
        path.coords.push_back(w.vertical);
    }
    path.driver = std::move(driver);
    return path;
}

double quadratic_variation(std::span<const double> series) noexcept {
    double qv = 0.0;
    for (std::size_t k = 1; k < series.size(); ++k) {
        const double d = series[k] - series[k - 1];
        qv += d * d;
    }
    return qv;
}

std::vector<double> ito_integral(std::span<const double> integrand, std::span<const double> increments) {
    if (integrand.size() != increments.size()) {
        throw DimensionError("ito_integral: integrand and increments differ in length");
    }
    std::vector<double> out(integrand.size() + 1, 0.0);
    for (std::size_t k = 0; k < integrand.size(); ++k) out[k + 1] = out[k] + integrand[k] * increments[k];
    return out;
}

HorizontalStepper::HorizontalStepper(const GroupPoint& g0, RngSpec rng)
    : n_(g0.dim()), normals_(rng), state_(g0.coords()), dz_(2 * static_cast<std::size_t>(g0.dim())) {}

void HorizontalStepper::step(std::uint64_t k, double dt) {
    normals_.fill(k * static_cast<std::uint64_t>(n_), dz_);
    const double scale = std::sqrt(dt);
    for (double& d : dz_) d *= scale;
    right_mul_horizontal(state_, dz_);
}

}  // namespace hdl
