#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pslab {

// Convex nondecreasing function Phi on [0, inf) with Phi(0) = 0.
// Two representations: a pure power t^q (q >= 1), or a convex
// piecewise-linear interpolant of breakpoints.
class YoungFunction {
public:
    static YoungFunction power(double exponent);
    // Breakpoints (t_i, Phi(t_i)), t_0 = 0, Phi(t_0) = 0, t_i increasing.
    // Slopes must be nonnegative and nondecreasing.
    static YoungFunction piecewise_linear(
        std::vector<std::pair<double, double>> breakpoints);

    double value(double t) const;
    double operator()(double t) const { return value(t); }
    // Right derivative.
    double derivative(double t) const;
    // Slope at infinity (lim Phi(t)/t); +inf for powers with q > 1.
    double slope_at_infinity() const;
    bool strictly_increasing() const;
    bool derivative_vanishes_at_zero() const;

    bool is_power() const { return power_; }
    double exponent() const { return q_; }

    // Maximal open intervals of affinity, merged across collinear pieces.
    // An unbounded final interval is encoded as (a, +inf).
    std::vector<std::pair<double, double>> affine_intervals() const;
    bool affine_at(double s) const;

    // Atoms (location, mass) of the second-derivative measure. Empty for
    // powers, whose curvature is the density q(q-1) s^{q-2}.
    std::vector<std::pair<double, double>> curvature_atoms() const;

    // The defining breakpoints of a piecewise-linear representation;
    // empty for powers.
    std::vector<std::pair<double, double>> breakpoints() const;

    std::string describe() const;

private:
    YoungFunction() = default;
    bool power_ = true;
    double q_ = 2.0;
    std::vector<double> xs_, ys_, slopes_; // piecewise-linear data
};

} // namespace pslab
