#include <doctest.h>

#include <cmath>

#include "hdl/catalog.hpp"
#include "hdl/error.hpp"
#include "hdl/morphism.hpp"
#include "hdl/paths.hpp"
#include "hdl/timechange.hpp"
#include "support.hpp"

using namespace hdl;

TEST_CASE("clock of a dilation is alpha^2 t") {
    const auto grid = uniform_grid(1.0, 1e-3);
    const auto w = simulate_hbm(GroupPoint::identity(1), grid, RngSpec{1, 0});
    const auto f = catalog_to_map(Dilation{2.0}, 1);
    const TimeClock c = sigma_clock(w, f);
    for (std::size_t k = 0; k < grid.size(); k += 100) CHECK(c.values[k] == doctest::Approx(4.0 * grid[k]));
    CHECK(c.final_value() == doctest::Approx(4.0));
}

TEST_CASE("clocks built from different components agree for conformal maps") {
    const auto grid = uniform_grid(0.5, 1e-3);
    const auto w = simulate_hbm(GroupPoint({0.2, 0.1, -0.3, 0.4}, 0.5), grid, RngSpec{2, 0});
    const double angles[] = {0.7, -0.2};
    const auto f = catalog_to_map(
        Composition{{Dilation{1.7}, Rotation::from_angles(angles), Translation{GroupPoint({1, 2, 3, 4}, 5)}}}, 2);
    const TimeClock c0 = sigma_clock(w, f, kDefaultStep, 0);
    for (int comp = 1; comp < 4; ++comp) {
        const TimeClock c = sigma_clock(w, f, kDefaultStep, comp);
        for (std::size_t k = 1; k < grid.size(); k += 50) {
            CHECK(std::abs(c.values[k] - c0.values[k]) <= 1e-6 * c0.values[k]);
        }
    }
}

TEST_CASE("clock inversion") {
    TimeClock c;
    c.grid = {0.0, 1.0, 2.0, 3.0};
    c.values = {0.0, 2.0, 3.0, 7.0};
    CHECK(invert_clock(c, 2.0) == 1.0);
    CHECK(invert_clock(c, 7.0) == 3.0);
    CHECK(invert_clock(c, 1.0) == doctest::Approx(0.5));
    CHECK(invert_clock(c, 5.0) == doctest::Approx(2.5));
    CHECK_THROWS_AS((void)invert_clock(c, 7.5), OutOfRange);
    CHECK_THROWS_AS((void)invert_clock(c, -1.0), OutOfRange);
}

TEST_CASE("a flat clock is rejected") {
    std::vector<ScalarField> comps{constant_field(1, 0.0), coordinate_field(1, 1), coordinate_field(1, 2)};
    const GroupMap flat("flat", 1, 1, comps);
    const auto w = simulate_hbm(GroupPoint::identity(1), uniform_grid(0.01, 1e-3), RngSpec{});
    CHECK_THROWS_AS((void)sigma_clock(w, flat), DomainError);
    CHECK_THROWS_AS((void)sigma_clock(w, catalog_to_map(Dilation{1.0}, 1), kDefaultStep, 2), DomainError);
}

TEST_CASE("pushforward under the identity clock is f(W) at the knots") {
    const auto grid = uniform_grid(0.1, 1e-3);
    const auto w = simulate_hbm(GroupPoint::identity(1), grid, RngSpec{3, 0});
    const auto f = catalog_to_map(Dilation{2.0}, 1);
    const auto z = pushforward(w, f, identity_clock(grid), grid);
    for (std::size_t k = 0; k < grid.size(); k += 10) {
        CHECK(hdl::test::max_abs_diff(z.point(k), dilate(w.point(k), 2.0)) <= 1e-14);
    }
    CHECK(z.map_name == "dilation:2");
}

TEST_CASE("simulated pushforward of a dilation lands on path knots") {
    PushforwardOptions opt;
    opt.ds = 1e-3;
    opt.window = 1.0;
    opt.substeps = 4;
    const auto f = catalog_to_map(Dilation{2.0}, 1);
    const auto z = simulate_pushforward(f, GroupPoint::identity(1), opt, RngSpec{4, 0});
    CHECK(z.size() == 1001);
    CHECK(z.grid.back() == doctest::Approx(1.0));
    CHECK(z.source_horizon == doctest::Approx(0.25));
    // Z is delta_2 of a horizontal path, so it is itself horizontal up to within-step areas.
    CHECK(horizontality_residual(z) < 0.05);

    opt.time_change = false;
    const auto raw = simulate_pushforward(f, GroupPoint::identity(1), opt, RngSpec{4, 0});
    CHECK(raw.source_horizon == doctest::Approx(1.0));
}

TEST_CASE("simulated pushforward is deterministic") {
    PushforwardOptions opt;
    const auto f = anisotropic_map();
    const auto a = simulate_pushforward(f, GroupPoint::identity(1), opt, RngSpec{9, 1});
    const auto b = simulate_pushforward(f, GroupPoint::identity(1), opt, RngSpec{9, 1});
    CHECK(a.coords == b.coords);
}
