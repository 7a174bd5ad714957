#include "hdl/harmonic_measure.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hdl/error.hpp"

namespace hdl {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int order) {
    const auto positive = boost::math::legendre_p_zeros<double>(order);
    GaussRule rule;
    auto push = [&](double x) {
        const double dp = boost::math::legendre_p_prime(order, x);
        rule.nodes.push_back(x);
        rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    };
    for (double x : positive) {
        push(x);
        if (x != 0.0) push(-x);
    }
    return rule;
}

double unit_sphere_area(int n) {
    // |S^{2n-1}| = 2 pi^n / Gamma(n)
    return 2.0 * std::pow(kPi, n) / std::tgamma(static_cast<double>(n));
}

void require_ball(int n, double rho0) {
    if (n < 1) throw DimensionError("harmonic measure: n must be >= 1");
    if (!(rho0 > 0.0) || !std::isfinite(rho0)) throw DomainError("harmonic measure: radius must be positive");
}

}  // namespace

double koranyi_gradient_norm(const GroupPoint& g) noexcept {
    const double r2 = g.horizontal_norm2();
    return std::sqrt(16.0 * r2 * r2 * r2 + 4.0 * g.vertical * g.vertical);
}

double kernel_profile(const GroupPoint& g0, const GroupPoint& g) {
    const GroupPoint q = group_mul(group_inv(g0), g);
    const double grad = koranyi_gradient_norm(q);
    if (grad == 0.0) return 0.0;
    return 2.0 * q.horizontal_norm2() / grad;
}

double kernel_profile_expanded(const GroupPoint& g0, const GroupPoint& g) {
    if (g0.dim() != g.dim()) throw DimensionError("kernel_profile_expanded: dimension mismatch");
    double dz2 = 0.0, im = 0.0;
    for (int j = 0; j < g.dim(); ++j) {
        const double dx = g.x(j) - g0.x(j), dy = g.y(j) - g0.y(j);
        dz2 += dx * dx + dy * dy;
        // Im(z_j conj(z0_j))
        im += g.y(j) * g0.x(j) - g.x(j) * g0.y(j);
    }
    const double tw = g.vertical - g0.vertical - 2.0 * im;
    const double denom = std::sqrt(4.0 * dz2 * dz2 * dz2 + tw * tw);
    if (denom == 0.0) return 0.0;
    return dz2 / denom;
}

double literature_kernel_constant(int n, double rho0) {
    require_ball(n, rho0);
    const double gamma = std::tgamma(1.0 / n);
    return std::pow(2.0, n - 2) * gamma * gamma / (std::pow(kPi, n + 1) * std::pow(rho0, 2 * n));
}

double chart_area_element(int n, double rho0, double phi) {
    const double t = rho0 * rho0 * std::sin(phi);
    const double r = rho0 * std::sqrt(std::cos(phi));
    const double r3 = r * r * r;
    const double slope_factor = std::sqrt(4.0 * r3 * r3 + t * t) / (2.0 * r3);  // sqrt(1 + r'(t)^2)
    const double dt_dphi = rho0 * rho0 * std::cos(phi);
    return std::pow(r, 2 * n - 1) * slope_factor * dt_dphi;
}

GroupPoint chart_point(double rho0, double phi, std::span<const double> omega) {
    const double r = rho0 * std::sqrt(std::cos(phi));
    GroupPoint q;
    q.horizontal.resize(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) q.horizontal[i] = r * omega[i];
    q.vertical = rho0 * rho0 * std::sin(phi);
    return q;
}

KernelNormalization kernel_normalization(int n, double rho0, int resolution) {
    require_ball(n, rho0);
    const auto rule = gauss_legendre(resolution);
    std::vector<double> omega(2 * static_cast<std::size_t>(n), 0.0);
    omega[0] = 1.0;
    const GroupPoint origin = GroupPoint::identity(n);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double phi = 0.5 * kPi * rule.nodes[i];
        const GroupPoint q = chart_point(rho0, phi, omega);
        integral += 0.5 * kPi * rule.weights[i] * kernel_profile(origin, q) * chart_area_element(n, rho0, phi);
    }
    KernelNormalization out;
    out.n = n;
    out.rho0 = rho0;
    out.unnormalized_mass = unit_sphere_area(n) * integral;
    out.constant = 1.0 / out.unnormalized_mass;
    out.literature_constant = literature_kernel_constant(n, rho0);
    out.ratio = out.constant / out.literature_constant;
    return out;
}

double expected_horizontal_norm2(int n, double rho0) {
    require_ball(n, rho0);
    // In the chart, kernel times area is proportional to cos^n(phi) and |z|^2 = rho0^2 cos(phi).
    return rho0 * rho0 * std::beta(0.5 * (n + 2), 0.5) / std::beta(0.5 * (n + 1), 0.5);
}

double harmonic_measure_density(const GroupPoint& g0, double rho0, const GroupPoint& g) {
    require_ball(g0.dim(), rho0);
    const double dist = koranyi_dist(g, g0);
    if (std::abs(dist - rho0) > kSphereTolerance) {
        throw DomainError("harmonic_measure_density: point at Koranyi distance " + std::to_string(dist) +
                          " is not on the sphere of radius " + std::to_string(rho0));
    }
    return kernel_normalization(g0.dim(), rho0).constant * kernel_profile(g0, g);
}

namespace {

double tensor_rule(const GroupPoint& g0, double rho0, const ScalarField& h, int resolution, double constant,
                   std::size_t& evaluations) {
    const auto rule = gauss_legendre(resolution);
    const int n_theta = 2 * resolution;
    const double dtheta = 2.0 * kPi / n_theta;
    const GroupPoint origin = GroupPoint::identity(1);
    double sum = 0.0;
    std::vector<double> omega(2);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double phi = 0.5 * kPi * rule.nodes[i];
        const double area = chart_area_element(1, rho0, phi);
        const double wphi = 0.5 * kPi * rule.weights[i];
        double ring = 0.0;
        for (int j = 0; j < n_theta; ++j) {
            const double theta = dtheta * j;
            omega[0] = std::cos(theta);
            omega[1] = std::sin(theta);
            const GroupPoint q = chart_point(rho0, phi, omega);
            ring += kernel_profile(origin, q) * h(group_mul(g0, q));
            ++evaluations;
        }
        sum += wphi * area * ring * dtheta;
    }
    return constant * sum;
}

}  // namespace

QuadratureResult sphere_quadrature(const GroupPoint& g0, double rho0, const ScalarField& h,
                                   const QuadratureOptions& opt) {
    const int n = g0.dim();
    require_ball(n, rho0);
    if (h.n != n) throw DimensionError("sphere_quadrature: field dimension differs from the ball");
    if (opt.resolution < 4) throw DomainError("sphere_quadrature: resolution must be >= 4");
    QuadratureResult res;
    if (n == 1) {
        const double c = kernel_normalization(1, rho0).constant;
        res.value = tensor_rule(g0, rho0, h, opt.resolution, c, res.evaluations);
        const double coarse = tensor_rule(g0, rho0, h, opt.resolution / 2, c, res.evaluations);
        res.error_estimate = std::abs(res.value - coarse);
        if (!(res.error_estimate <= opt.convergence_tolerance * std::max(1.0, std::abs(res.value)))) {
            throw ConvergenceError("sphere_quadrature: resolution " + std::to_string(opt.resolution) + " gives " +
                                   std::to_string(res.value) + " but half resolution gives " +
                                   std::to_string(coarse) + "; increase resolution or smooth the integrand");
        }
        return res;
    }
    // Self-normalized Monte Carlo over the chart: phi uniform, omega uniform on S^{2n-1}.
    res.monte_carlo = true;
    if (opt.mc_samples < 2) throw DomainError("sphere_quadrature: need at least two Monte Carlo samples");
    const NormalStream stream(opt.rng);
    const GroupPoint origin = GroupPoint::identity(n);
    std::vector<double> omega(2 * static_cast<std::size_t>(n));
    std::vector<double> w(opt.mc_samples), hv(opt.mc_samples);
    double wsum = 0.0, whsum = 0.0;
    for (std::size_t i = 0; i < opt.mc_samples; ++i) {
        const double phi = kPi * (stream.uniforms(i)[0] - 0.5);
        stream.fill(i * static_cast<std::uint64_t>(n), omega);
        double norm = 0.0;
        for (double o : omega) norm += o * o;
        norm = std::sqrt(norm);
        for (double& o : omega) o /= norm;
        const GroupPoint q = chart_point(rho0, phi, omega);
        w[i] = kernel_profile(origin, q) * chart_area_element(n, rho0, phi);
        hv[i] = h(group_mul(g0, q));
        wsum += w[i];
        whsum += w[i] * hv[i];
    }
    res.evaluations = opt.mc_samples;
    res.value = whsum / wsum;
    double var = 0.0;
    for (std::size_t i = 0; i < opt.mc_samples; ++i) {
        const double d = w[i] * (hv[i] - res.value);
        var += d * d;
    }
    res.error_estimate = std::sqrt(var) / wsum;
    return res;
}

QuadratureResult mean_value_residual(const ScalarField& u, const GroupPoint& g0, double rho0,
                                     const QuadratureOptions& opt) {
    QuadratureResult res = sphere_quadrature(g0, rho0, u, opt);
    res.value -= u(g0);
    return res;
}

}  // namespace hdl
