#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hdl/group.hpp"
#include "hdl/path_types.hpp"

namespace hdl {

inline constexpr double kDefaultStep = 1e-3;

/// A real function on H^n with an optional analytic horizontal gradient
/// ordered (X_1 u, Y_1 u, ..., X_n u, Y_n u).
///
/// Evaluators must be free of side effects: every operator below may call them
/// concurrently from several threads.
struct ScalarField {
    using Evaluator = std::function<double(const GroupPoint&)>;
    using Gradient = std::function<std::vector<double>(const GroupPoint&)>;

    int n = 1;
    Evaluator value;
    Gradient gradient;

    double operator()(const GroupPoint& g) const { return value(g); }
    [[nodiscard]] bool has_gradient() const noexcept { return static_cast<bool>(gradient); }
    [[nodiscard]] ScalarField without_gradient() const { return {n, value, {}}; }
};

/// Coordinate functions with exact gradients. `index` runs over (x_1, y_1, ..., x_n, y_n, t).
[[nodiscard]] ScalarField coordinate_field(int n, int index);
[[nodiscard]] ScalarField constant_field(int n, double c);

enum class DerivativeMode {
    finite_difference,
    prefer_analytic,  ///< use ScalarField::gradient when it is present
};

/// Central difference of u along the group flow of the chosen left-invariant field.
[[nodiscard]] double horizontal_derivative(const ScalarField& u, const GroupPoint& g, Direction dir,
                                           double step = kDefaultStep,
                                           DerivativeMode mode = DerivativeMode::finite_difference);

[[nodiscard]] std::vector<double> horizontal_gradient(
    const ScalarField& u, const GroupPoint& g, double step = kDefaultStep,
    DerivativeMode mode = DerivativeMode::finite_difference);

/// Sum over the 2n horizontal flows of the symmetric three-point second difference.
[[nodiscard]] double hsub_laplacian(const ScalarField& u, const GroupPoint& g, double step = kDefaultStep);

/// max |analytic - finite difference| over the points and directions; throws if u has no gradient.
[[nodiscard]] double gradient_consistency(const ScalarField& u, std::span<const GroupPoint> points,
                                          double step = kDefaultStep);

/// f : H^n -> H^p with components (u_1, v_1, ..., u_p, v_p, h).
struct GroupMap {
    std::string name;
    int source_dim = 1;
    int target_dim = 1;
    std::vector<ScalarField> components;

    GroupMap() = default;
    GroupMap(std::string name, int source_dim, int target_dim, std::vector<ScalarField> components);

    [[nodiscard]] GroupPoint operator()(const GroupPoint& g) const;
    [[nodiscard]] bool has_gradients() const noexcept;
    [[nodiscard]] GroupMap without_gradients() const;
};

/// Lift a planar curve by left-point sums of eta' = 2 sum_j (xi'_j zeta_j - zeta'_j xi_j).
[[nodiscard]] HorizontalPath horizontal_lift(const PlanarPath& planar, double eta0);

/// max_k |d eta_k - 2 sum_j (zeta_j(t_k) d xi_j - xi_j(t_k) d zeta_j)|; 0 for fewer than two samples.
[[nodiscard]] double horizontality_residual(const SampledProcess& path);

}  // namespace hdl
