#include "pslab/measure.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pslab/extremal.hpp"
#include "pslab/geometry.hpp"
#include "pslab/grid_field.hpp"

using namespace pslab;

namespace {

constexpr double kPi = 3.14159265358979323846;

ExtremalSpec frustrum_spec() {
    return family_cone_frustrum(2, 0.5, 0.5, 0.3, Point{0.2, 0.0, 0.0});
}

ExtremalSpec cone_spec() {
    RadialProfile prof;
    prof.knots = {{0.0, 1.0}, {1.0, 0.0}};
    return build_extremal(2, prof, CenterPath::constant({0.0, 0.0, 0.0}));
}

ExtremalSpec staircase_spec() {
    const std::vector<std::pair<double, double>> levels{
        {0.2, 0.9}, {0.5, 0.6}, {0.8, 0.2}};
    const std::vector<Point> centers{
        {0.0, 0.0, 0.0}, {0.3, 0.0, 0.0}, {0.7, 0.0, 0.0}};
    return family_staircase(2, levels, centers);
}

GridField two_bump_field(int n, int cells) {
    const Point c1{-0.6, 0.0, 0.0}, c2{0.6, 0.0, 0.0};
    return field_from_function(
        n,
        [&](const Point& x) {
            const double v1 = 1.0 - dist(x, c1) / 0.35;
            const double v2 = 1.0 - dist(x, c2) / 0.35;
            return std::max({v1, v2, 0.0});
        },
        Point{-1.2, -1.2, -1.2}, Point{1.2, 1.2, 1.2}, cells);
}

} // namespace

TEST_CASE("decomposing a cone distribution: purely absolutely continuous") {
    const auto spec = cone_spec();
    const auto dec = decompose(exact_distribution(spec));
    CHECK(dec.analytic);
    CHECK(dec.n == 2);
    CHECK(dec.ess_sup == doctest::Approx(1.0));
    CHECK(dec.jump_heights.empty());
    CHECK(dec.sc_heights.empty());
    CHECK_FALSE(dec.top_plateau_flagged);
    CHECK(dec.top_plateau_mass == 0.0);
    CHECK(dec.total_mass == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(dec.ac_mass() == doctest::Approx(kPi).epsilon(1e-12));
    // F(t) = pi (1-t)^2 is quadratic, so interval-averaged densities
    // coincide with -F' at interval midpoints.
    double prev = 0.0;
    for (size_t i = 0; i < dec.thresholds.size(); ++i) {
        const double mid = 0.5 * (prev + dec.thresholds[i]);
        CHECK(dec.ac_density[i] ==
              doctest::Approx(2.0 * kPi * (1.0 - mid)).epsilon(1e-12));
        prev = dec.thresholds[i];
    }
}

TEST_CASE("decomposing a cone-frustrum distribution isolates the plateau") {
    const auto dec = decompose(exact_distribution(frustrum_spec()));
    CHECK(dec.analytic);
    REQUIRE(dec.jump_heights.size() == 1);
    CHECK(dec.jump_heights[0] == doctest::Approx(0.5));
    CHECK(dec.jump_masses[0] == doctest::Approx(0.16 * kPi).epsilon(1e-12));
    CHECK(dec.sc_heights.empty());
    CHECK_FALSE(dec.top_plateau_flagged);
    CHECK(dec.total_mass == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(dec.ac_mass() == doctest::Approx(0.84 * kPi).epsilon(1e-12));
    CHECK(dec.singular_mass() == doctest::Approx(0.16 * kPi).epsilon(1e-12));
    CHECK(dec.singular_distribution(0.3) ==
          doctest::Approx(0.16 * kPi).epsilon(1e-12));
    CHECK(dec.singular_distribution(0.7) == 0.0);
}

TEST_CASE("decomposing a plateau tower flags the top ball") {
    const auto dec = decompose(exact_distribution(staircase_spec()));
    REQUIRE(dec.jump_heights.size() == 2);
    CHECK(dec.jump_heights[0] == doctest::Approx(0.2));
    CHECK(dec.jump_masses[0] == doctest::Approx(0.45 * kPi).epsilon(1e-12));
    CHECK(dec.jump_heights[1] == doctest::Approx(0.5));
    CHECK(dec.jump_masses[1] == doctest::Approx(0.32 * kPi).epsilon(1e-12));
    CHECK(dec.top_plateau_flagged);
    CHECK(dec.top_plateau_mass == doctest::Approx(0.04 * kPi).epsilon(1e-12));
    CHECK(dec.total_mass == doctest::Approx(0.77 * kPi).epsilon(1e-12));
    CHECK(dec.ac_mass() == doctest::Approx(0.0));
}

TEST_CASE("decomposing the cantor tower reports singular-continuous mass") {
    const auto dec = decompose(exact_distribution(family_devils_staircase(2, 6)));
    CHECK(dec.jump_heights.empty());
    CHECK(dec.ac_mass() == doctest::Approx(0.0));
    double sc = 0.0;
    for (double m : dec.sc_masses)
        sc += m;
    CHECK(sc == doctest::Approx(0.75 * kPi).epsilon(1e-12));
    CHECK(dec.top_plateau_flagged);
    CHECK(dec.top_plateau_mass == doctest::Approx(0.25 * kPi).epsilon(1e-12));
    CHECK(dec.total_mass == doctest::Approx(0.75 * kPi).epsilon(1e-12));
    CHECK(center_variation_bound(dec) ==
          doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
}

TEST_CASE("recovering the plateau atom from a sampled grid") {
    const auto spec = frustrum_spec();
    const auto u = sample_grid(spec, 512);
    const auto F = distribution_function(u, default_thresholds(u, 1024));
    const auto dec = decompose(F);
    CHECK_FALSE(dec.analytic);

    REQUIRE(!dec.jump_heights.empty());
    const size_t main = size_t(
        std::max_element(dec.jump_masses.begin(), dec.jump_masses.end()) -
        dec.jump_masses.begin());
    CHECK(dec.jump_heights[main] == doctest::Approx(0.5).epsilon(0.02));
    CHECK(dec.jump_masses[main] == doctest::Approx(0.16 * kPi).epsilon(0.05));
    double spurious = 0.0;
    for (size_t i = 0; i < dec.jump_masses.size(); ++i)
        if (i != main)
            spurious += dec.jump_masses[i];
    CHECK(spurious <= 0.01);
    CHECK_FALSE(dec.top_plateau_flagged);
    CHECK(dec.ac_mass() == doctest::Approx(0.84 * kPi).epsilon(0.05));
    CHECK(dec.total_mass == doctest::Approx(kPi).epsilon(0.02));
    // Exact conservation by construction.
    CHECK(dec.ac_mass() + dec.singular_mass() + dec.top_plateau_mass ==
          doctest::Approx(dec.total_mass).epsilon(1e-10));
}

TEST_CASE("recovering a plateau tower from a sampled grid") {
    const auto spec = staircase_spec();
    const auto u = sample_grid(spec, 512);
    const auto F = distribution_function(u, default_thresholds(u, 1024));
    const auto dec = decompose(F);
    REQUIRE(dec.jump_heights.size() == 2);
    CHECK(dec.jump_heights[0] == doctest::Approx(0.2).epsilon(0.05));
    CHECK(dec.jump_masses[0] == doctest::Approx(0.45 * kPi).epsilon(0.05));
    CHECK(dec.jump_heights[1] == doctest::Approx(0.5).epsilon(0.05));
    CHECK(dec.jump_masses[1] == doctest::Approx(0.32 * kPi).epsilon(0.05));
    CHECK(dec.top_plateau_flagged);
    CHECK(dec.top_plateau_mass == doctest::Approx(0.04 * kPi).epsilon(0.1));
}

TEST_CASE("caller-chosen jump tolerance, and when it cannot work") {
    const auto u = sample_grid(frustrum_spec(), 512);
    const auto F = distribution_function(u, default_thresholds(u, 1024));

    const auto dec = decompose(F, 0.05);
    REQUIRE(dec.jump_heights.size() == 1);
    CHECK(dec.jump_masses[0] == doctest::Approx(0.16 * kPi).epsilon(0.05));

    CHECK_THROWS_AS(decompose(F, 2e-4), std::runtime_error);

    DistFn empty;
    CHECK_THROWS_AS(decompose(empty), std::invalid_argument);
}

TEST_CASE("near-critical cells cover the plateau annulus") {
    const auto u = sample_grid(frustrum_spec(), 512);
    const auto cs = critical_set(u, 0.05);
    CHECK(cs.measure == doctest::Approx(0.16 * kPi).epsilon(0.05));
    CHECK(cs.mask.size() == u.values.size());

    const auto cone = sample_grid(cone_spec(), 256);
    CHECK(critical_set(cone, 0.05).measure <= 0.02);

    CHECK_THROWS_AS(critical_set(u, 0.0), std::invalid_argument);
}

TEST_CASE("radius transform turns a cone into the distance function") {
    const auto u = field_from_function(
        2,
        [](const Point& x) { return std::max(0.0, 1.0 - norm(x)); },
        Point{-1.3, -1.3, 0.0}, Point{1.3, 1.3, 0.0}, 256);
    const auto F = distribution_function(u, default_thresholds(u, 1024));
    const auto R = radius_function(u, F);
    REQUIRE(R.values.size() == u.values.size());

    double worst = 0.0;
    for (long f = 0; f < u.size(); ++f) {
        const double r = norm(u.cell_center(f));
        if (r < 0.3 || r > 0.9)
            continue;
        worst = std::max(worst, std::abs(R.values[size_t(f)] - r));
    }
    CHECK(worst <= 0.02);

    // Cells outside the support report the full support radius.
    const double rim = R.values[size_t(u.flat_index(1, 1, 0))];
    CHECK(rim == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("radius transform of an off-center field has unit slope") {
    const auto u = sample_grid(frustrum_spec(), 512);
    const auto F = distribution_function(u, default_thresholds(u, 1024));
    const auto R = radius_function(u, F);
    const auto g = gradient_magnitude(R);
    std::vector<double> on_support;
    for (size_t i = 0; i < u.values.size(); ++i)
        if (u.values[i] > 0.0)
            on_support.push_back(g[i]);
    std::sort(on_support.begin(), on_support.end());
    const double median = on_support[on_support.size() / 2];
    CHECK(median == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("center path of a drifting frustrum follows the drift") {
    const auto u = sample_grid(frustrum_spec(), 512);
    const auto path = center_path(u, {0.25, 0.75, 1.5});
    REQUIRE(path.heights.size() == 2);
    CHECK(path.heights[0] == doctest::Approx(0.25));
    CHECK(norm(path.centers[0]) <= 0.02);
    CHECK(dist(path.centers[1], Point{0.2, 0.0, 0.0}) <= 0.02);
    CHECK(dist(path.xi_infinity, Point{0.2, 0.0, 0.0}) <= 0.02);

    const auto exact = center_path(frustrum_spec());
    CHECK(exact.at(0.25)[0] == 0.0);
    CHECK(exact.at(0.75)[0] == doctest::Approx(0.2));
    CHECK(exact.xi_infinity[0] == doctest::Approx(0.2));
}

TEST_CASE("center path rejects disconnected level sets") {
    const auto u2 = two_bump_field(2, 256);
    CHECK_THROWS_WITH_AS(center_path(u2, {0.5}), "level set not a ball",
                         std::runtime_error);

    const auto u1 = two_bump_field(1, 512);
    CHECK_THROWS_WITH_AS(center_path(u1, {0.5}), "level set not a ball",
                         std::runtime_error);

    const auto u3 = two_bump_field(3, 48);
    CHECK_THROWS_WITH_AS(center_path(u3, {0.5}), "level set not a ball",
                         std::runtime_error);
}

TEST_CASE("center path accepts round level sets in every dimension") {
    const auto tent = field_from_function(
        1, [](const Point& x) { return std::max(0.0, 1.0 - std::abs(x[0])); },
        Point{-1.3, 0.0, 0.0}, Point{1.3, 0.0, 0.0}, 512);
    const auto p1 = center_path(tent, {0.5});
    CHECK(std::abs(p1.centers[0][0]) <= 0.01);

    const auto ball3 = field_from_function(
        3, [](const Point& x) { return std::max(0.0, 1.0 - norm(x)); },
        Point{-1.3, -1.3, -1.3}, Point{1.3, 1.3, 1.3}, 64);
    const auto p3 = center_path(ball3, {0.4});
    CHECK(norm(p3.centers[0]) <= 0.05);

    CHECK_THROWS_AS(center_path(tent, std::vector<double>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(center_path(tent, {-0.5}), std::invalid_argument);
    GridField zero = tent;
    std::fill(zero.values.begin(), zero.values.end(), 0.0);
    CHECK_THROWS_AS(center_path(zero, {0.5}), std::invalid_argument);
}

TEST_CASE("center variation bounds dominate the actual drift") {
    const auto spec = frustrum_spec();
    const auto dec = decompose(exact_distribution(spec));
    CHECK(center_variation_bound(dec) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(spec.centers.total_jump() <= center_variation_bound(dec));

    CHECK(center_variation_bound(dec, 0.25, 0.75) ==
          doctest::Approx(0.4).epsilon(1e-12));
    const auto path = center_path(spec);
    CHECK(dist(path.at(0.25), path.at(0.75)) <=
          center_variation_bound(dec, 0.25, 0.75));
    CHECK(center_variation_bound(dec, 0.6, 0.9) == 0.0);
    CHECK_THROWS_AS(center_variation_bound(dec, 0.0, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(center_variation_bound(dec, 0.5, 1.5),
                    std::invalid_argument);
}
