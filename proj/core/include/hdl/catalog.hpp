#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hdl/fields.hpp"
#include "hdl/group.hpp"

namespace hdl {

/// Row-major dense matrix; small sizes only (at most (2n+1) x (2n+1)).
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0.0) {}
    static Matrix identity(int size);

    double& operator()(int r, int c) { return data[static_cast<std::size_t>(r * cols + c)]; }
    double operator()(int r, int c) const { return data[static_cast<std::size_t>(r * cols + c)]; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
};

class CatalogMap;

/// pi_b(g) = b * g
struct Translation {
    GroupPoint b;
};

/// phi_A(z, t) = (A z, t) with A the real 2n x 2n form of a unitary matrix on C^n.
struct Rotation {
    Matrix a;
    /// Diagonal unitary diag(e^{i theta_1}, ..., e^{i theta_n}).
    static Rotation from_angles(std::span<const double> angles);
};

/// delta_alpha(z, t) = (alpha z, alpha^2 t)
struct Dilation {
    double alpha = 1.0;
};

/// parts[0] o parts[1] o ... o parts[k-1]; the last part acts first.
struct Composition {
    std::vector<CatalogMap> parts;
};

/// Translations, rotations, dilations and their compositions, with exact differentials.
class CatalogMap {
public:
    using Variant = std::variant<Translation, Rotation, Dilation, Composition>;

    CatalogMap(Variant v);  // NOLINT: implicit by design of the tagged alternative
    CatalogMap(Translation t) : v_(std::move(t)) {}  // NOLINT
    CatalogMap(Rotation r) : v_(std::move(r)) {}     // NOLINT
    CatalogMap(Dilation d) : v_(d) {}                // NOLINT
    CatalogMap(Composition c);                        // NOLINT

    [[nodiscard]] const Variant& variant() const noexcept { return v_; }
    [[nodiscard]] std::string id() const;

    /// Throws DomainError on a non-unitary rotation, alpha <= 0, or a dimension mismatch with n.
    void validate(int n) const;

    [[nodiscard]] GroupPoint apply(const GroupPoint& g) const;
    /// (2n+1) x 2n matrix: entry (k, i) is the i-th horizontal field (X_1, Y_1, ...) applied to component k.
    [[nodiscard]] Matrix horizontal_differential(const GroupPoint& g) const;
    /// (2n+1) x (2n+1) Euclidean Jacobian in coordinates (x_1, y_1, ..., t).
    [[nodiscard]] Matrix euclidean_jacobian(const GroupPoint& g) const;

private:
    Variant v_;
};

/// GroupMap H^n -> H^n with analytic horizontal gradients attached.
[[nodiscard]] GroupMap catalog_to_map(const CatalogMap& c, int n);

/// Parse "identity", "dilation:<a>", "translation:<x1>,<y1>,...,<t>", "rotation:<theta_1>,...",
/// "compose:<id>;<id>;...". Throws DomainError on malformed ids.
[[nodiscard]] CatalogMap parse_catalog_id(std::string_view id);

/// Max deviation of A^T A from I and of AJ from JA (J the standard complex structure).
[[nodiscard]] double unitarity_defect(const Matrix& a);

inline constexpr double kUnitaryTolerance = 1e-10;

}  // namespace hdl
