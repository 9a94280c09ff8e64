#include "pslab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pslab {

namespace {
constexpr double kPi = std::numbers::pi;

void check_dim(int n) {
    if (n < 1 || n > 3)
        throw std::invalid_argument("dimension must be 1, 2 or 3");
}
} // namespace

double unit_ball_volume(int n) {
    if (n < 0)
        throw std::invalid_argument("dimension must be nonnegative");
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double ball_volume(int n, double r) {
    if (r < 0.0)
        throw std::invalid_argument("radius must be nonnegative");
    return unit_ball_volume(n) * std::pow(r, n);
}

double kn_constant(int n) {
    if (n < 1)
        throw std::invalid_argument("dimension must be positive");
    return 2.0 * unit_ball_volume(n - 1) / unit_ball_volume(n);
}

double cf_constant(int n, double p) {
    if (p <= 1.0)
        throw std::invalid_argument("p must exceed 1");
    const double pp = p / (p - 1.0);
    return std::pow(2.0, 1.0 / pp) * std::pow(unit_ball_volume(n), -1.0 / n);
}

double ball_intersection_volume(int n, double r1, double r2, double d) {
    check_dim(n);
    if (r1 < 0.0 || r2 < 0.0 || d < 0.0)
        throw std::invalid_argument("radii and distance must be nonnegative");
    if (d >= r1 + r2)
        return 0.0;
    const double rs = std::min(r1, r2);
    const double rl = std::max(r1, r2);
    if (d <= rl - rs)
        return ball_volume(n, rs);
    switch (n) {
    case 1:
        return r1 + r2 - d;
    case 2: {
        const double a1 = (d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1);
        const double a2 = (d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2);
        const double tri = 0.5 * std::sqrt(std::max(0.0,
            (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)));
        return r1 * r1 * std::acos(std::clamp(a1, -1.0, 1.0)) +
               r2 * r2 * std::acos(std::clamp(a2, -1.0, 1.0)) - tri;
    }
    case 3: {
        const double num = kPi * (r1 + r2 - d) * (r1 + r2 - d) *
            (d * d + 2.0 * d * (r1 + r2) - 3.0 * (r1 - r2) * (r1 - r2));
        return num / (12.0 * d);
    }
    }
    return 0.0;
}

double ball_symdiff_volume(int n, double r, double d) {
    check_dim(n);
    if (r < 0.0 || d < 0.0)
        throw std::invalid_argument("radius and distance must be nonnegative");
    return 2.0 * (ball_volume(n, r) - ball_intersection_volume(n, r, r, d));
}

double symdiff_bound(int n, double V, double d) {
    check_dim(n);
    if (V < 0.0 || d < 0.0)
        throw std::invalid_argument("volume and distance must be nonnegative");
    const double ratio = V / unit_ball_volume(n);
    return 2.0 * unit_ball_volume(n - 1) *
           std::pow(ratio, double(n - 1) / n) * d;
}

} // namespace pslab
