#include <doctest.h>

#include "hdl/domain.hpp"
#include "hdl/error.hpp"
#include "support.hpp"

using namespace hdl;

TEST_CASE("ball membership uses the left-invariant gauge") {
    const GroupPoint c({1.0, 0.0}, 0.0);
    const Domain d = Domain::ball(c, 1.0);
    CHECK(d.contains(c));
    // c^{-1} * (1, 0.5, t) = (0, 0.5, t + 2 * (0 * 1 - (-1) * 0.5)) = (0, 0.5, t + 1)
    CHECK(d.contains(GroupPoint({1.0, 0.5}, -1.0)));
    CHECK_FALSE(d.contains(GroupPoint({1.0, 0.5}, 1.0)));
    const auto coords = GroupPoint({1.0, 0.5}, -1.0).coords();
    CHECK(d.boundary_distance(coords).value() == doctest::Approx(0.5));
    CHECK(d.gauge_excess(coords) == doctest::Approx(-0.5));
}

TEST_CASE("coordinate distance agrees with the group distance") {
    const auto pts = hdl::test::random_points(2, 40, 17);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        CHECK(koranyi_dist_coords(pts[i].coords(), pts[i + 1].coords()) ==
              doctest::Approx(koranyi_dist(pts[i], pts[i + 1])).epsilon(1e-13));
    }
}

TEST_CASE("predicate domains") {
    const Domain slab = Domain::from_predicate(1, [](const GroupPoint& g) { return std::abs(g.vertical) < 1.0; });
    CHECK(slab.contains(GroupPoint({5.0, 5.0}, 0.5)));
    CHECK_FALSE(slab.boundary_distance(GroupPoint::identity(1).coords()).has_value());
    CHECK_FALSE(slab.as_ball().has_value());
    CHECK_THROWS_AS((void)slab.gauge_excess(GroupPoint::identity(1).coords()), DomainError);
    CHECK_THROWS_AS((void)slab.contains(GroupPoint::identity(2)), DimensionError);
    CHECK_THROWS_AS(Domain::ball(GroupPoint::identity(1), 0.0), DomainError);
}
