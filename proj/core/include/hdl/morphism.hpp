#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hdl/catalog.hpp"
#include "hdl/fields.hpp"
#include "hdl/rng.hpp"

namespace hdl {

struct ResidualStats {
    double max = 0.0;
    double mean = 0.0;
    std::size_t argmax = 0;  ///< index of the sample point attaining max
};

/// Uniform sample of the Koranyi ball B(0, radius) in H^n (rejection from the unit box, then dilation).
[[nodiscard]] std::vector<GroupPoint> sample_points(int n, std::size_t count, double radius, RngSpec rng);

/// |Delta_H f_k| for every component k = 0..2p at every point.
struct HarmonicCheck {
    std::vector<ResidualStats> components;
    double max = 0.0;
};

/// Gram matrix G_ij = <grad_H f_i, grad_H f_j> of the first 2p components.
struct ConformalCheck {
    std::vector<double> lambda;          ///< mean diagonal of G at each point
    std::vector<double> gram_residual;   ///< max |G - lambda I| at each point
    std::vector<double> diagonal_spread; ///< max_i G_ii - min_i G_ii at each point
    ResidualStats residual;              ///< over gram_residual
    ResidualStats spread;                ///< over diagonal_spread
};

/// X_i h - 2 sum_j (v_j X_i u_j - u_j X_i v_j), one equation per source field X_1, Y_1, ..., X_n, Y_n.
struct ContactCheck {
    std::vector<ResidualStats> equations;
    double max = 0.0;
};

/// Gradients come from the components when every one of them carries an analytic gradient and
/// from central differences along the flows otherwise. The sub-Laplacian is always a difference.
[[nodiscard]] HarmonicCheck check_harmonic(const GroupMap& f, std::span<const GroupPoint> points,
                                           double step = kDefaultStep, unsigned workers = 1);
[[nodiscard]] ConformalCheck check_conformal(const GroupMap& f, std::span<const GroupPoint> points,
                                             double step = kDefaultStep, unsigned workers = 1);
[[nodiscard]] ContactCheck check_contact(const GroupMap& f, std::span<const GroupPoint> points,
                                         double step = kDefaultStep, unsigned workers = 1);

inline constexpr double kAnalyticTolerance = 1e-6;
inline constexpr double kDifferenceTolerance = 1e-4;

struct MorphismTolerances {
    double harmonic = kDifferenceTolerance;
    double conformal = kDifferenceTolerance;
    double contact = kDifferenceTolerance;

    /// 1e-6 when f has analytic gradients, 1e-4 otherwise.
    static MorphismTolerances for_map(const GroupMap& f);
};

struct MorphismReport {
    std::string map_name;
    int source_dim = 1;
    int target_dim = 1;
    std::size_t points = 0;
    bool analytic_gradients = false;
    double step = kDefaultStep;
    MorphismTolerances tolerances;
    HarmonicCheck harmonic;
    ConformalCheck conformal;
    ContactCheck contact;
    bool harmonic_ok = false;
    bool conformal_ok = false;  ///< judged on max |G - lambda I|
    bool contact_ok = false;

    [[nodiscard]] bool pass() const noexcept { return harmonic_ok && conformal_ok && contact_ok; }
};

/// Throws DomainError on an empty point set.
[[nodiscard]] MorphismReport is_harmonic_morphism(const GroupMap& f, std::span<const GroupPoint> points,
                                                  const MorphismTolerances& tolerances,
                                                  double step = kDefaultStep, unsigned workers = 1);
[[nodiscard]] MorphismReport is_harmonic_morphism(const GroupMap& f, std::span<const GroupPoint> points,
                                                  double step = kDefaultStep, unsigned workers = 1);

/// | ||D_H f||^{2n+2} - |det J_f| | with ||.|| the operator norm of the 2n x 2n horizontal block.
struct DistortionCheck {
    ResidualStats absolute;
    ResidualStats relative;
    std::vector<double> operator_norm;
    std::vector<double> jacobian;
};

[[nodiscard]] DistortionCheck distortion_check(const CatalogMap& f, int n, std::span<const GroupPoint> points);

// Maps outside the catalog, shipped as controls.

/// H^2 -> H^1, (z_1, z_2, t) -> (z_1, t). Harmonic, not contact.
[[nodiscard]] GroupMap projection_map();
/// H^1 -> H^1, (x, y, t) -> (2x, y, 2t). Harmonic and contact, not conformal.
[[nodiscard]] GroupMap anisotropic_map();
/// H^1 -> H^1, (x, y, t) -> (x^2, y, t). Not harmonic.
[[nodiscard]] GroupMap square_map();

/// Catalog ids on H^n plus "projection", "anisotropic" and "square", which fix their own
/// dimensions and ignore n. Throws DomainError on an unknown id.
[[nodiscard]] GroupMap map_from_id(const std::string& id, int n);

}  // namespace hdl
