#include <doctest.h>

#include <cmath>

#include "hdl/catalog.hpp"
#include "hdl/error.hpp"
#include "hdl/morphism.hpp"

using namespace hdl;

namespace {

std::vector<CatalogMap> catalog(int n) {
    std::vector<double> angles(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) angles[static_cast<std::size_t>(j)] = 0.4 + 0.9 * j;
    std::vector<double> b(2 * static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = 0.5 - 0.3 * static_cast<double>(i);
    const auto tr = Translation{GroupPoint::from_coords(b)};
    const auto rot = Rotation::from_angles(angles);
    return {Dilation{1.0}, Dilation{2.0}, Dilation{0.3}, tr, rot,
            Composition{{Dilation{2.0}, tr}}, Composition{{rot, Dilation{0.5}, tr}}};
}

}  // namespace

TEST_CASE("sample points fill the Koranyi ball reproducibly") {
    const auto a = sample_points(2, 500, 2.0, RngSpec{1, 0});
    const auto b = sample_points(2, 500, 2.0, RngSpec{1, 0});
    CHECK(a.size() == 500);
    CHECK(a == b);
    double max_rho = 0.0, mean_t = 0.0;
    for (const auto& g : a) {
        max_rho = std::max(max_rho, koranyi_norm(g));
        mean_t += g.vertical;
    }
    CHECK(max_rho < 2.0);
    CHECK(max_rho > 1.8);
    CHECK(std::abs(mean_t / 500.0) < 0.3);
}

TEST_CASE("every catalog map is a harmonic morphism") {
    for (int n : {1, 2}) {
        const auto pts = sample_points(n, 1000, 2.0, RngSpec{7, 0});
        for (const auto& c : catalog(n)) {
            const GroupMap f = catalog_to_map(c, n);
            const MorphismReport r = is_harmonic_morphism(f, pts);
            INFO(f.name);
            CHECK(r.tolerances.harmonic == kAnalyticTolerance);
            CHECK(r.harmonic.max <= 1e-6);
            CHECK(r.conformal.residual.max <= 1e-6);
            CHECK(r.contact.max <= 1e-6);
            CHECK(r.pass());
            const MorphismReport fd = is_harmonic_morphism(f.without_gradients(), pts);
            CHECK(fd.tolerances.contact == kDifferenceTolerance);
            CHECK(fd.pass());
        }
    }
}

TEST_CASE("conformal factor of rotations and dilations") {
    const auto pts = sample_points(2, 200, 2.0, RngSpec{2, 0});
    const double angles[] = {1.0, -0.5};
    const auto rot = check_conformal(catalog_to_map(Rotation::from_angles(angles), 2), pts);
    for (double l : rot.lambda) CHECK(l == doctest::Approx(1.0));
    const auto dil = check_conformal(catalog_to_map(Dilation{3.0}, 2), pts);
    for (double l : dil.lambda) CHECK(l == doctest::Approx(9.0));
}

TEST_CASE("square map fails the harmonic check by 2") {
    const auto pts = sample_points(1, 100, 2.0, RngSpec{3, 0});
    const auto h = check_harmonic(square_map(), pts);
    CHECK(h.components[0].max == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(h.components[0].mean == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(h.components[1].max <= 1e-6);
    CHECK_FALSE(is_harmonic_morphism(square_map(), pts).harmonic_ok);
}

TEST_CASE("anisotropic map is harmonic and contact but not conformal") {
    const auto pts = sample_points(1, 100, 2.0, RngSpec{3, 0});
    const MorphismReport r = is_harmonic_morphism(anisotropic_map(), pts);
    CHECK(r.harmonic_ok);
    CHECK(r.contact_ok);
    CHECK_FALSE(r.conformal_ok);
    // G = diag(4, 1): lambda = 2.5, |G - lambda I| = 1.5, spread 3
    CHECK(r.conformal.residual.max == doctest::Approx(1.5));
    CHECK(r.conformal.spread.max == doctest::Approx(3.0));
}

TEST_CASE("projection fails the contact check by 2|y_2|") {
    const std::vector<GroupPoint> pts{GroupPoint({0.3, -0.1, 0.5, 1.0}, 0.2), GroupPoint({1.0, 1.0, 0.0, -0.25}, 0.0)};
    const ContactCheck c = check_contact(projection_map(), pts);
    // Equation of X_2: X_2 t = 2 y_2 while the right-hand side vanishes.
    CHECK(c.equations[2].max == doctest::Approx(2.0));
    CHECK(c.equations[2].argmax == 0);
    CHECK(c.equations[3].max == doctest::Approx(1.0));  // Y_2: -2 x_2
    CHECK(c.equations[0].max <= 1e-12);
    const MorphismReport r = is_harmonic_morphism(projection_map(), pts);
    CHECK(r.harmonic_ok);
    CHECK(r.conformal_ok);
    CHECK_FALSE(r.contact_ok);
    CHECK_FALSE(r.pass());
}

TEST_CASE("exactly the catalog passes among the shipped maps") {
    const auto p1 = sample_points(1, 300, 2.0, RngSpec{5, 0});
    const auto p2 = sample_points(2, 300, 2.0, RngSpec{5, 0});
    for (const auto& c : catalog(1)) CHECK(is_harmonic_morphism(catalog_to_map(c, 1), p1).pass());
    for (const auto& c : catalog(2)) CHECK(is_harmonic_morphism(catalog_to_map(c, 2), p2).pass());
    CHECK_FALSE(is_harmonic_morphism(projection_map(), p2).pass());
    CHECK_FALSE(is_harmonic_morphism(anisotropic_map(), p1).pass());
    CHECK_FALSE(is_harmonic_morphism(square_map(), p1).pass());
}

TEST_CASE("distortion identity on the catalog") {
    for (int n : {1, 2, 3}) {
        const auto pts = sample_points(n, 100, 2.0, RngSpec{9, 0});
        for (const auto& c : catalog(n)) {
            const DistortionCheck d = distortion_check(c, n, pts);
            CHECK(d.absolute.max <= 1e-8);
        }
        const DistortionCheck dil = distortion_check(Dilation{2.0}, n, pts);
        CHECK(dil.operator_norm[0] == doctest::Approx(2.0));
        CHECK(dil.jacobian[0] == doctest::Approx(std::pow(2.0, 2 * n + 2)));
    }
}

TEST_CASE("map ids") {
    CHECK(map_from_id("projection", 1).source_dim == 2);
    CHECK(map_from_id("dilation:3", 2).target_dim == 2);
    CHECK_THROWS_AS((void)map_from_id("inversion", 1), DomainError);
    CHECK_THROWS_AS((void)is_harmonic_morphism(anisotropic_map(), std::vector<GroupPoint>{}), DomainError);
    CHECK_THROWS_AS((void)check_harmonic(anisotropic_map(), std::vector<GroupPoint>{GroupPoint::identity(2)}),
                    DimensionError);
}
