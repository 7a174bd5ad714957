#include <doctest.h>

#include <cmath>

#include "hdl/error.hpp"
#include "hdl/group.hpp"
#include "support.hpp"

using namespace hdl;
using hdl::test::max_abs_diff;
using hdl::test::random_points;

TEST_CASE("product of basis vectors picks up the symplectic term") {
    const GroupPoint a({1.0, 0.0}, 0.0);
    const GroupPoint b({0.0, 1.0}, 0.0);
    const GroupPoint ab = group_mul(a, b);
    CHECK(ab.horizontal == std::vector<double>{1.0, 1.0});
    CHECK(ab.vertical == doctest::Approx(-2.0));
    CHECK(group_mul(b, a).vertical == doctest::Approx(2.0));
}

TEST_CASE("hand-computed product in H^2") {
    const GroupPoint a({1.0, 2.0, 3.0, 4.0}, 5.0);
    const GroupPoint b({-1.0, 0.5, 2.0, -3.0}, 1.0);
    // 2 * [(2 * -1 - 1 * 0.5) + (4 * 2 - 3 * -3)] = 2 * (-2.5 + 17) = 29
    const GroupPoint ab = group_mul(a, b);
    CHECK(ab.vertical == doctest::Approx(5.0 + 1.0 + 29.0));
    CHECK(ab.horizontal == std::vector<double>{0.0, 2.5, 5.0, 1.0});
}

TEST_CASE("identity and inverse") {
    for (int n : {1, 2, 3}) {
        for (const auto& g : random_points(n, 50, 11)) {
            const auto e = GroupPoint::identity(n);
            CHECK(max_abs_diff(group_mul(g, e), g) == 0.0);
            CHECK(max_abs_diff(group_mul(e, g), g) == 0.0);
            CHECK(max_abs_diff(group_mul(g, group_inv(g)), e) <= 1e-14);
            CHECK(max_abs_diff(group_mul(group_inv(g), g), e) <= 1e-14);
        }
    }
}

TEST_CASE("associativity on random triples") {
    const auto pts = random_points(2, 300, 5, 2.0);
    for (std::size_t i = 0; i + 2 < pts.size(); i += 3) {
        const auto lhs = group_mul(group_mul(pts[i], pts[i + 1]), pts[i + 2]);
        const auto rhs = group_mul(pts[i], group_mul(pts[i + 1], pts[i + 2]));
        CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("Koranyi norm") {
    CHECK(koranyi_norm(GroupPoint({1.0, 1.0}, -2.0)) == doctest::Approx(std::pow(8.0, 0.25)));
    CHECK(koranyi_norm(GroupPoint({0.0, 0.0}, 3.0)) == doctest::Approx(std::sqrt(3.0)));
    CHECK(koranyi_norm(GroupPoint::identity(3)) == 0.0);
}

TEST_CASE("distance is left-invariant and symmetric") {
    const auto pts = random_points(1, 200, 8, 1.5);
    for (std::size_t i = 0; i + 2 < pts.size(); i += 3) {
        const auto& a = pts[i];
        const auto& b = pts[i + 1];
        const auto& c = pts[i + 2];
        CHECK(koranyi_dist(group_mul(c, a), group_mul(c, b)) == doctest::Approx(koranyi_dist(a, b)).epsilon(1e-12));
        CHECK(koranyi_dist(a, b) == doctest::Approx(koranyi_dist(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("dilations are automorphisms and scale the norm") {
    const auto pts = random_points(2, 40, 3);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        const double alpha = 0.5 + 0.1 * static_cast<double>(i);
        const auto lhs = dilate(group_mul(pts[i], pts[i + 1]), alpha);
        const auto rhs = group_mul(dilate(pts[i], alpha), dilate(pts[i + 1], alpha));
        CHECK(max_abs_diff(lhs, rhs) <= 1e-11);
        CHECK(koranyi_norm(dilate(pts[i], alpha)) == doctest::Approx(alpha * koranyi_norm(pts[i])));
    }
}

TEST_CASE("flows move along X and Y") {
    const GroupPoint g({0.5, -1.0}, 2.0);
    const auto gx = flow(g, Direction{0}, 0.1);
    CHECK(gx.x(0) == doctest::Approx(0.6));
    CHECK(gx.vertical == doctest::Approx(2.0 + 2.0 * -1.0 * 0.1));
    const auto gy = flow(g, Direction{1}, 0.1);
    CHECK(gy.y(0) == doctest::Approx(-0.9));
    CHECK(gy.vertical == doctest::Approx(2.0 - 2.0 * 0.5 * 0.1));
}

TEST_CASE("in-place right multiplication matches the product") {
    for (const auto& g : random_points(3, 20, 21)) {
        const std::vector<double> dz{0.1, -0.2, 0.3, 0.0, -0.5, 0.25};
        auto coords = g.coords();
        right_mul_horizontal(coords, dz);
        CHECK(max_abs_diff(GroupPoint::from_coords(coords), group_mul(g, GroupPoint(dz, 0.0))) <= 1e-14);
    }
}

TEST_CASE("malformed points are rejected") {
    const std::vector<double> even{1.0, 2.0};
    CHECK_THROWS_AS(GroupPoint::from_coords(even), DimensionError);
    CHECK_THROWS_AS((void)group_mul(GroupPoint::identity(1), GroupPoint::identity(2)), DimensionError);
    CHECK_THROWS_AS(validate(GroupPoint({1.0, NAN}, 0.0)), DomainError);
}
