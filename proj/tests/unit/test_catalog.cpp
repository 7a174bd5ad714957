#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hdl/catalog.hpp"
#include "hdl/error.hpp"
#include "support.hpp"

using namespace hdl;
using hdl::test::max_abs_diff;
using hdl::test::random_points;

namespace {

// Central differences of every component along every horizontal flow.
Matrix fd_horizontal(const CatalogMap& f, const GroupPoint& g, double h = 1e-5) {
    const int n = g.dim();
    Matrix m(2 * n + 1, 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        const auto plus = f.apply(flow(g, Direction{i}, h)).coords();
        const auto minus = f.apply(flow(g, Direction{i}, -h)).coords();
        for (int k = 0; k <= 2 * n; ++k) m(k, i) = (plus[k] - minus[k]) / (2 * h);
    }
    return m;
}

Matrix fd_euclidean(const CatalogMap& f, const GroupPoint& g, double h = 1e-5) {
    const auto c = g.coords();
    const int m = static_cast<int>(c.size());
    Matrix jac(m, m);
    for (int j = 0; j < m; ++j) {
        auto cp = c, cm = c;
        cp[j] += h;
        cm[j] -= h;
        const auto fp = f.apply(GroupPoint::from_coords(cp)).coords();
        const auto fm = f.apply(GroupPoint::from_coords(cm)).coords();
        for (int k = 0; k < m; ++k) jac(k, j) = (fp[k] - fm[k]) / (2 * h);
    }
    return jac;
}

double max_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

std::vector<CatalogMap> sample_catalog() {
    const double angles[] = {0.3, -1.1};
    return {
        Dilation{2.0},
        Dilation{0.5},
        Translation{GroupPoint({0.3, -0.7, 1.2, 0.1}, 0.4)},
        Rotation::from_angles(angles),
        Composition{{Dilation{1.5}, Translation{GroupPoint({1.0, 0.0, 0.0, -1.0}, 2.0)}, Rotation::from_angles(angles)}},
    };
}

}  // namespace

TEST_CASE("apply by hand") {
    const GroupPoint g({1.0, 1.0}, 1.0);
    CHECK(max_abs_diff(CatalogMap(Dilation{2.0}).apply(g), GroupPoint({2.0, 2.0}, 4.0)) == 0.0);
    const GroupPoint b({0.0, 1.0}, 0.0);
    CHECK(max_abs_diff(CatalogMap(Translation{b}).apply(g), group_mul(b, g)) == 0.0);
    const double quarter[] = {std::numbers::pi / 2};
    CHECK(max_abs_diff(CatalogMap(Rotation::from_angles(quarter)).apply(g), GroupPoint({-1.0, 1.0}, 1.0)) <= 1e-15);
}

TEST_CASE("composition applies the last part first") {
    const GroupPoint b({1.0, 0.0}, 0.0);
    const CatalogMap c = Composition{{Dilation{2.0}, Translation{b}}};
    const GroupPoint g({0.0, 1.0}, 0.0);
    CHECK(max_abs_diff(c.apply(g), dilate(group_mul(b, g), 2.0)) <= 1e-15);
}

TEST_CASE("rotations, dilations and translations are group homomorphisms up to translation") {
    for (const auto& f : sample_catalog()) {
        if (std::holds_alternative<Translation>(f.variant()) || std::holds_alternative<Composition>(f.variant())) continue;
        const auto pts = random_points(2, 20, 4);
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
            const auto lhs = f.apply(group_mul(pts[i], pts[i + 1]));
            const auto rhs = group_mul(f.apply(pts[i]), f.apply(pts[i + 1]));
            CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
        }
    }
}

TEST_CASE("analytic differentials match finite differences") {
    for (const auto& f : sample_catalog()) {
        for (const auto& g : random_points(2, 10, 9)) {
            CHECK(max_diff(f.horizontal_differential(g), fd_horizontal(f, g)) <= 1e-7);
            CHECK(max_diff(f.euclidean_jacobian(g), fd_euclidean(f, g)) <= 1e-7);
        }
    }
}

TEST_CASE("ids round-trip through the parser") {
    for (const auto& f : sample_catalog()) {
        const CatalogMap parsed = parse_catalog_id(f.id());
        for (const auto& g : random_points(2, 5, 2)) CHECK(max_abs_diff(parsed.apply(g), f.apply(g)) <= 1e-12);
    }
    CHECK(parse_catalog_id("identity").id() == "identity");
    CHECK(parse_catalog_id("dilation:2").id() == "dilation:2");
}

TEST_CASE("malformed ids and invalid maps are rejected") {
    CHECK_THROWS_AS((void)parse_catalog_id("dilation:abc"), DomainError);
    CHECK_THROWS_AS((void)parse_catalog_id("shear:1"), DomainError);
    CHECK_THROWS_AS((void)parse_catalog_id("translation:1,2"), DomainError);
    CHECK_THROWS_AS(CatalogMap(Dilation{-1.0}).validate(1), DomainError);
    CHECK_THROWS_AS(CatalogMap(Translation{GroupPoint::identity(2)}).validate(1), DomainError);
    Rotation skew{Matrix::identity(2)};
    skew.a(0, 1) = 0.5;
    CHECK(unitarity_defect(skew.a) > kUnitaryTolerance);
    CHECK_THROWS_AS(CatalogMap(skew).validate(1), DomainError);
}

TEST_CASE("catalog maps as group maps carry consistent gradients") {
    for (const auto& f : sample_catalog()) {
        const GroupMap m = catalog_to_map(f, 2);
        CHECK(m.has_gradients());
        const auto pts = random_points(2, 10, 3);
        for (const auto& c : m.components) CHECK(gradient_consistency(c, pts) <= 1e-6);
        CHECK(max_abs_diff(m(pts[0]), f.apply(pts[0])) == 0.0);
    }
}
