#pragma once

#include <vector>

#include "pslab/point.hpp"

namespace pslab {

// One knot of a piecewise-linear cadlag radius profile r(t). Two
// consecutive knots sharing a height encode a downward jump of r there,
// i.e. a plateau of the represented function at that height. `sc` marks
// jumps that stand in for singular-continuous variation in a
// depth-truncated family rather than a genuine plateau.
struct ProfileKnot {
    double t = 0.0;
    double r = 0.0;
    bool sc = false;
};

struct ProfileSegment {
    double t0 = 0.0, t1 = 0.0;
    double r0 = 0.0, r1 = 0.0;
    bool flat() const { return r0 == r1; }
    double slope() const { return (r1 - r0) / (t1 - t0); }
};

struct ProfileJump {
    double t = 0.0;
    double r_before = 0.0;
    double r_after = 0.0;
    bool sc = false;
};

// Nonincreasing, right-continuous radius profile on [0, top_height].
// r(t) is the volume radius of the super-level set at height t; flat
// segments are value jumps of the represented function, knot pairs with
// equal heights are plateaus.
struct RadialProfile {
    std::vector<ProfileKnot> knots;

    void validate() const;
    double top_height() const { return knots.back().t; }
    double support_radius() const { return knots.front().r; }
    // Right-continuous evaluation; 0 for t >= top_height.
    double radius_at(double t) const;
    // Limit from below; equals radius_at at continuity heights.
    double left_radius_at(double t) const;
    std::vector<ProfileSegment> segments() const;
    std::vector<ProfileJump> jumps() const;
    bool has_flat_segment() const;
    bool has_sc_jump() const;
};

// Piecewise-constant center path: centers[i] applies on
// [heights[i], heights[i+1]). heights[0] is always 0.
struct CenterPath {
    std::vector<double> heights;
    std::vector<Point> centers;
    Point xi_infinity{{0.0, 0.0, 0.0}};

    Point at(double t) const;
    double total_jump() const;
    static CenterPath constant(const Point& c);
};

} // namespace pslab
