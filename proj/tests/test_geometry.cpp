#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "pslab/geometry.hpp"
#include "pslab/quadrature.hpp"

using namespace pslab;

namespace {

constexpr double kPi = std::numbers::pi;

// Monte-Carlo estimate of the symmetric difference of two balls of radii
// r1, r2 whose centers are (0,...) and (d,0,...). Independent of the
// closed forms under test.
double mc_symdiff(int n, double r1, double r2, double d, long samples,
                  unsigned seed) {
    std::mt19937_64 rng(seed);
    const double rmax = std::max(r1, r2);
    const double lo = -rmax, hi = d + rmax;
    std::uniform_real_distribution<double> ux(lo, hi);
    std::uniform_real_distribution<double> uy(-rmax, rmax);
    double box = (hi - lo);
    for (int k = 1; k < n; ++k)
        box *= 2.0 * rmax;
    long hits = 0;
    for (long i = 0; i < samples; ++i) {
        double x[3] = {ux(rng), 0.0, 0.0};
        for (int k = 1; k < n; ++k)
            x[k] = uy(rng);
        double q1 = 0.0, q2 = 0.0;
        for (int k = 0; k < n; ++k) {
            q1 += x[k] * x[k];
            const double s = (k == 0) ? x[k] - d : x[k];
            q2 += s * s;
        }
        const bool in1 = q1 < r1 * r1;
        const bool in2 = q2 < r2 * r2;
        if (in1 != in2)
            ++hits;
    }
    return box * double(hits) / double(samples);
}

} // namespace

TEST_CASE("unit ball volumes match the closed forms") {
    CHECK(unit_ball_volume(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(unit_ball_volume(4) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-14));
    CHECK(ball_volume(2, 0.5) == doctest::Approx(kPi * 0.25).epsilon(1e-14));
    CHECK_THROWS(ball_volume(2, -1.0));
}

TEST_CASE("kn_constant equals the reciprocal cosine-power integral") {
    // Oracle: adaptive quadrature of int_0^{pi/2} cos^n.
    for (int n = 1; n <= 10; ++n) {
        auto q = integrate([n](double t) { return std::pow(std::cos(t), n); },
                           0.0, 0.5 * kPi, 1e-13, 1e-15);
        const double oracle = 1.0 / q.value;
        CHECK(std::abs(kn_constant(n) - oracle) / oracle <= 1e-10);
    }
    CHECK(kn_constant(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kn_constant(2) == doctest::Approx(4.0 / kPi).epsilon(1e-14));
    CHECK(kn_constant(3) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("kn_constant approaches sqrt(2n/pi) from above") {
    double prev = 2.0;
    for (int n = 1; n <= 40; ++n) {
        const double ratio = kn_constant(n) / std::sqrt(2.0 * n / kPi);
        CHECK(ratio > 1.0);
        CHECK(ratio < prev);
        prev = ratio;
    }
    CHECK(kn_constant(10) / std::sqrt(20.0 / kPi) < 1.03);
}

TEST_CASE("cf_constant closed form") {
    CHECK(cf_constant(2, 2.0) ==
          doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-14));
    // p -> infinity limit is 2 * omega_n^{-1/n}; large p approx.
    CHECK(cf_constant(2, 1e6) ==
          doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-4));
    CHECK_THROWS(cf_constant(2, 1.0));
}

TEST_CASE("interval symmetric difference is exactly linear in 1d") {
    for (double r : {0.25, 0.5, 1.0, 2.0}) {
        for (int i = 0; i <= 20; ++i) {
            const double d = 2.0 * r * i / 20.0;
            CHECK(std::abs(ball_symdiff_volume(1, r, d) - 2.0 * d) <= 1e-12);
            CHECK(std::abs(symdiff_bound(1, ball_volume(1, r), d) - 2.0 * d) <=
                  1e-12);
        }
        // Saturation beyond separation.
        CHECK(ball_symdiff_volume(1, r, 3.0 * r) ==
              doctest::Approx(4.0 * r).epsilon(1e-14));
    }
    CHECK(std::abs(ball_symdiff_volume(1, 1.0, 0.5) - 1.0) <= 1e-14);
    CHECK(std::abs(symdiff_bound(1, 2.0, 0.5) - 1.0) <= 1e-14);
}

TEST_CASE("planar lens value and its linear bound") {
    const double exact = ball_symdiff_volume(2, 1.0, 0.2);
    CHECK(std::abs(exact - 0.7986646594888867) <= 1e-12);
    CHECK(std::abs(symdiff_bound(2, kPi, 0.2) - 0.8) <= 1e-14);
    CHECK(exact <= 0.8);

    // Monte-Carlo oracle, 1e7 samples, fixed seed; stays within 4 sigma.
    const double mc = mc_symdiff(2, 1.0, 1.0, 0.2, 10000000, 20260815u);
    CHECK(std::abs(mc - exact) <= 2.5e-3);
}

TEST_CASE("spherical cap symmetric difference in 3d") {
    const double inter = kPi * (4.0 + 0.4) * (2.0 - 0.4) * (2.0 - 0.4) / 12.0;
    const double exact = ball_symdiff_volume(3, 1.0, 0.4);
    CHECK(exact == doctest::Approx(2.0 * (4.0 * kPi / 3.0 - inter)).epsilon(1e-13));
    const double mc = mc_symdiff(3, 1.0, 1.0, 0.4, 10000000, 77001u);
    CHECK(std::abs(mc - exact) <= 6e-3);
}

TEST_CASE("asymmetric ball intersections") {
    // Containment: the small ball is inside the big one.
    CHECK(ball_intersection_volume(2, 2.0, 0.5, 1.0) ==
          doctest::Approx(kPi * 0.25).epsilon(1e-14));
    CHECK(ball_intersection_volume(3, 1.0, 0.3, 0.2) ==
          doctest::Approx(ball_volume(3, 0.3)).epsilon(1e-14));
    // Disjoint.
    CHECK(ball_intersection_volume(2, 1.0, 1.0, 2.5) == 0.0);
    // Symmetry in the radii.
    CHECK(ball_intersection_volume(2, 1.3, 0.7, 1.1) ==
          doctest::Approx(ball_intersection_volume(2, 0.7, 1.3, 1.1))
              .epsilon(1e-14));
    // Monte-Carlo check of one partial-overlap instance per dimension.
    for (int n = 1; n <= 3; ++n) {
        const double exact = ball_intersection_volume(n, 1.2, 0.8, 1.3);
        std::mt19937_64 rng(9000u + n);
        std::uniform_real_distribution<double> u(-1.2, 2.1);
        long hits = 0;
        const long N = 2000000;
        double box = 1.0;
        for (int k = 0; k < n; ++k)
            box *= 3.3;
        for (long i = 0; i < N; ++i) {
            double q1 = 0.0, q2 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double x = u(rng);
                q1 += x * x;
                const double s = (k == 0) ? x - 1.3 : x;
                q2 += s * s;
            }
            if (q1 < 1.44 && q2 < 0.64)
                ++hits;
        }
        const double mc = box * double(hits) / double(N);
        CHECK(std::abs(mc - exact) <= 5e-3 * box);
    }
}

TEST_CASE("exact symmetric difference never exceeds the linear bound") {
    for (int n = 1; n <= 3; ++n) {
        for (int ir = 1; ir <= 20; ++ir) {
            const double r = 0.1 * ir;
            double prev = -1.0;
            for (int id = 0; id <= 20; ++id) {
                const double d = 2.0 * r * id / 20.0;
                const double exact = ball_symdiff_volume(n, r, d);
                const double bound = symdiff_bound(n, ball_volume(n, r), d);
                CHECK(exact <= bound + 1e-12);
                CHECK(exact >= prev - 1e-12); // monotone in d
                prev = exact;
            }
            // Continuity at touching distance.
            const double just_below = ball_symdiff_volume(n, r, 2.0 * r - 1e-9);
            const double at = ball_symdiff_volume(n, r, 2.0 * r);
            CHECK(std::abs(at - just_below) <= 1e-6 * std::max(1.0, at));
        }
    }
}

TEST_CASE("geometry argument validation") {
    CHECK_THROWS(ball_symdiff_volume(4, 1.0, 0.1));
    CHECK_THROWS(ball_symdiff_volume(2, -1.0, 0.1));
    CHECK_THROWS(ball_symdiff_volume(2, 1.0, -0.1));
    CHECK_THROWS(symdiff_bound(0, 1.0, 0.1));
    CHECK_THROWS(kn_constant(0));
}
