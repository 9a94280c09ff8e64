#pragma once

#include <functional>

namespace pslab {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
// Splits the worst panel until the summed error estimate drops below
// max(abs_tol, rel_tol * |value|) or the panel budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 1e-14,
                     int max_panels = 4000);

// Single fixed G7/K15 pass, no subdivision.
QuadResult gk15(const std::function<double(double)>& f, double a, double b);

} // namespace pslab
