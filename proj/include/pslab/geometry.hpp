#pragma once

namespace pslab {

// Volume of the unit ball in R^n (Gamma closed form). Valid for n >= 0.
double unit_ball_volume(int n);

// Volume of the radius-r ball in R^n.
double ball_volume(int n, double r);

// 2 * omega_{n-1} / omega_n. Equals the reciprocal of
// int_0^{pi/2} cos^n(theta) dtheta and grows like sqrt(2n/pi).
double kn_constant(int n);

// 2^{1/p'} * omega_n^{-1/n} with p' = p/(p-1).
double cf_constant(int n, double p);

// Volume of the intersection of balls B(x1, r1), B(x2, r2) with
// |x1 - x2| = d. Closed forms for n = 1, 2, 3.
double ball_intersection_volume(int n, double r1, double r2, double d);

// Volume of the symmetric difference of two radius-r balls whose centers
// are d apart. Closed forms for n = 1, 2, 3.
double ball_symdiff_volume(int n, double r, double d);

// Linear-in-d upper bound for the symmetric difference of two translates
// of a ball of volume V: 2 * omega_{n-1} * (V / omega_n)^{(n-1)/n} * d.
double symdiff_bound(int n, double V, double d);

} // namespace pslab
