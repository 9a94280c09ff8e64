#include "pslab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pslab {

void RadialProfile::validate() const {
    if (knots.size() < 2)
        throw std::invalid_argument("radius profile needs at least two knots");
    if (knots.front().t != 0.0)
        throw std::invalid_argument("radius profile must start at height 0");
    if (knots.front().r <= 0.0)
        throw std::invalid_argument("support radius must be positive");
    for (size_t i = 0; i < knots.size(); ++i) {
        const auto& k = knots[i];
        if (!std::isfinite(k.t) || !std::isfinite(k.r) || k.r < 0.0)
            throw std::invalid_argument("radius profile has invalid knot");
        if (i == 0)
            continue;
        const auto& prev = knots[i - 1];
        if (k.t < prev.t)
            throw std::invalid_argument("radius profile heights must not decrease");
        if (k.r > prev.r)
            throw std::invalid_argument("radius profile must be nonincreasing");
        if (k.t == prev.t) {
            if (k.r >= prev.r)
                throw std::invalid_argument("repeated knot height without a radius drop");
            if (i >= 2 && knots[i - 2].t == k.t)
                throw std::invalid_argument("more than two knots at one height");
            if (k.t == 0.0)
                throw std::invalid_argument("radius jump at height 0");
            if (k.t == knots.back().t)
                throw std::invalid_argument("radius jump at the top height");
        } else if (k.sc) {
            throw std::invalid_argument("sc tag on a non-jump knot");
        }
    }
    if (top_height() <= 0.0)
        throw std::invalid_argument("top height must be positive");
}

double RadialProfile::radius_at(double t) const {
    if (t < 0.0)
        t = 0.0;
    if (t >= top_height())
        return 0.0;
    // Last knot with height <= t; equal-height pairs resolve to the
    // post-jump value, giving right continuity.
    size_t lo = 0, hi = knots.size();
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        if (knots[mid].t <= t)
            lo = mid;
        else
            hi = mid;
    }
    const auto& a = knots[lo];
    const auto& b = knots[lo + 1];
    if (b.t == a.t)
        return b.r;
    return a.r + (b.r - a.r) * (t - a.t) / (b.t - a.t);
}

double RadialProfile::left_radius_at(double t) const {
    if (t <= 0.0)
        return knots.front().r;
    if (t > top_height())
        return 0.0;
    // First knot with height >= t carries the pre-jump value.
    const auto it = std::lower_bound(
        knots.begin(), knots.end(), t,
        [](const ProfileKnot& k, double v) { return k.t < v; });
    if (it != knots.end() && it->t == t)
        return it->r;
    const auto& b = *it;
    const auto& a = *(it - 1);
    return a.r + (b.r - a.r) * (t - a.t) / (b.t - a.t);
}

std::vector<ProfileSegment> RadialProfile::segments() const {
    std::vector<ProfileSegment> out;
    for (size_t i = 0; i + 1 < knots.size(); ++i)
        if (knots[i + 1].t > knots[i].t)
            out.push_back({knots[i].t, knots[i + 1].t, knots[i].r, knots[i + 1].r});
    return out;
}

std::vector<ProfileJump> RadialProfile::jumps() const {
    std::vector<ProfileJump> out;
    for (size_t i = 0; i + 1 < knots.size(); ++i)
        if (knots[i + 1].t == knots[i].t)
            out.push_back({knots[i].t, knots[i].r, knots[i + 1].r, knots[i + 1].sc});
    return out;
}

bool RadialProfile::has_flat_segment() const {
    for (const auto& s : segments())
        if (s.flat())
            return true;
    return false;
}

bool RadialProfile::has_sc_jump() const {
    for (const auto& j : jumps())
        if (j.sc)
            return true;
    return false;
}

Point CenterPath::at(double t) const {
    const auto it = std::upper_bound(heights.begin(), heights.end(), t);
    if (it == heights.begin())
        return centers.front();
    return centers[size_t(it - heights.begin()) - 1];
}

double CenterPath::total_jump() const {
    double v = 0.0;
    for (size_t i = 1; i < centers.size(); ++i)
        v += dist(centers[i], centers[i - 1]);
    return v;
}

CenterPath CenterPath::constant(const Point& c) {
    CenterPath p;
    p.heights = {0.0};
    p.centers = {c};
    p.xi_infinity = c;
    return p;
}

} // namespace pslab
