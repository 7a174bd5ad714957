#pragma once

#include <cstddef>

#include "hdl/fields.hpp"
#include "hdl/group.hpp"
#include "hdl/rng.hpp"

namespace hdl {

// Harmonic measure of the Koranyi ball B(g0, rho0) seen from its center.
//
// With respect to the Euclidean area element of the sphere the exit law has density
// proportional to 2 |z - z0|^2 / |grad rho^4|(g0^{-1} g), where |grad rho^4|(z, t) =
// (16 |z|^6 + 4 t^2)^{1/2}. The normalizing constant is computed by quadrature rather than
// taken from a closed form; kernel_normalization() reports it next to the closed-form constant
// 2^{n-2} Gamma(1/n)^2 / (pi^{n+1} rho0^{2n}) that appears in the literature.
//
// Sphere chart (centered sphere, then left-translated by g0):
//     t = rho0^2 sin(phi),  r = rho0 sqrt(cos(phi)),  z = r omega,  omega in S^{2n-1},
// for phi in (-pi/2, pi/2). The substitution t = sqrt(rho0^4 - r^4) removes the inverse square
// root singularity of the area element at the equator r = rho0.

/// |grad rho^4|(z, t) = (16 |z|^6 + 4 t^2)^{1/2}
[[nodiscard]] double koranyi_gradient_norm(const GroupPoint& g) noexcept;

/// Unnormalized kernel 2 |z - z0|^2 / |grad rho^4|(g0^{-1} g).
[[nodiscard]] double kernel_profile(const GroupPoint& g0, const GroupPoint& g);

/// The same kernel written out in coordinates as
///     |z - z0|^2 / (4 |z - z0|^6 + (t - t0 - 2 Im sum_j z_j conj(z0_j))^2)^{1/2}.
/// Agrees with kernel_profile when z0 = 0; the sign of the twist term differs from the group
/// law's left translation otherwise.
[[nodiscard]] double kernel_profile_expanded(const GroupPoint& g0, const GroupPoint& g);

struct KernelNormalization {
    int n = 1;
    double rho0 = 1.0;
    double unnormalized_mass = 0.0;  ///< integral of kernel_profile against Euclidean area
    double constant = 0.0;           ///< 1 / unnormalized_mass
    double literature_constant = 0.0;
    double ratio = 0.0;              ///< constant / literature_constant
};

/// 2^{n-2} Gamma(1/n)^2 / (pi^{n+1} rho0^{2n})
[[nodiscard]] double literature_kernel_constant(int n, double rho0);

/// Numeric normalization by Gauss-Legendre quadrature in phi; the kernel and area element do not
/// depend on omega, so the omega integral is the area of S^{2n-1}.
[[nodiscard]] KernelNormalization kernel_normalization(int n, double rho0, int resolution = 256);

/// Mean of |z|^2 under the harmonic measure of the centered ball:
/// rho0^2 B((n+2)/2, 1/2) / B((n+1)/2, 1/2), pi rho0^2 / 4 for n = 1.
[[nodiscard]] double expected_horizontal_norm2(int n, double rho0);

/// Tolerance for a point to count as lying on the sphere.
inline constexpr double kSphereTolerance = 1e-8;

/// Normalized density w.r.t. Euclidean surface area at a point of the sphere.
/// Throws DomainError when |rho(g0^{-1} g) - rho0| > kSphereTolerance.
[[nodiscard]] double harmonic_measure_density(const GroupPoint& g0, double rho0, const GroupPoint& g);

/// Euclidean area element of the (phi, omega) chart of the centered sphere, per unit phi and
/// per unit surface measure of S^{2n-1}: r^{2n-1} sqrt(1 + r'(t)^2) dt/dphi.
[[nodiscard]] double chart_area_element(int n, double rho0, double phi);

/// Centered-sphere point of the chart.
[[nodiscard]] GroupPoint chart_point(double rho0, double phi, std::span<const double> omega);

struct QuadratureOptions {
    int resolution = 64;              ///< Gauss-Legendre nodes in phi; 2x that trapezoid nodes in theta (n = 1)
    std::size_t mc_samples = 200'000; ///< n > 1
    RngSpec rng{0x5eed, 0};
    double convergence_tolerance = 1e-6;  ///< n = 1: |I(R) - I(R/2)| bound
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  ///< |I(R) - I(R/2)| for n = 1; Monte Carlo stderr for n > 1
    std::size_t evaluations = 0;
    bool monte_carlo = false;
};

/// Integral of h over the sphere against the normalized harmonic measure of B(g0, rho0).
/// The sphere is reached as g0 * q with q on the centered sphere.
[[nodiscard]] QuadratureResult sphere_quadrature(const GroupPoint& g0, double rho0, const ScalarField& h,
                                                 const QuadratureOptions& options = {});

/// sphere_quadrature(u) - u(g0).
[[nodiscard]] QuadratureResult mean_value_residual(const ScalarField& u, const GroupPoint& g0, double rho0,
                                                   const QuadratureOptions& options = {});

}  // namespace hdl
