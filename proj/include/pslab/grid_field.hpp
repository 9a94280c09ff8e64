#pragma once

#include <array>
#include <functional>
#include <vector>

#include "pslab/dist_fn.hpp"
#include "pslab/point.hpp"
#include "pslab/young.hpp"

namespace pslab {

// Uniform grid sample of a nonnegative compactly supported function.
// Values live at cell centers, x varies fastest. The outermost cell
// layer must be identically zero so that level sets never touch the
// domain boundary.
struct GridField {
    int n = 2;
    Point origin{0.0, 0.0, 0.0}; // lower corner of the box
    double h = 1.0;
    std::array<int, 3> dims{1, 1, 1};
    std::vector<double> values;

    long size() const { return long(dims[0]) * dims[1] * dims[2]; }
    double cell_volume() const;
    long flat_index(int i, int j, int k) const {
        return i + long(dims[0]) * (j + long(dims[1]) * k);
    }
    Point cell_center(long flat) const;
    double max_value() const;

    // Checks dims/values consistency, nonnegativity and the zero
    // boundary layer; throws std::invalid_argument on violation.
    void validate() const;
};

// Samples f at cell centers of a uniform grid over [lo, hi]^axes with
// `cells` cells along the first axis (spacing is shared by all axes).
GridField field_from_function(int n, const std::function<double(const Point&)>& f,
                              const Point& lo, const Point& hi, int cells);

double lq_norm(const GridField& u, double q);

// Centered differences, switching to one-sided at support edges.
std::vector<double> gradient_magnitude(const GridField& u);
double gradient_norm_lp(const GridField& u, double p);

std::vector<double> default_thresholds(const GridField& u, int count = 512);
DistFn distribution_function(const GridField& u,
                             const std::vector<double>& thresholds);

struct PsiIntegralResult {
    double direct = 0.0;     // sum of Psi(u) over cells
    double layer_cake = 0.0; // integral of F(t) Psi'(t) dt
    double tolerance = 0.0;
};

// Evaluates int Psi(u) dx both directly and through the layer-cake
// integral of the distribution function; throws if the two routes
// disagree beyond rel_tol.
PsiIntegralResult psi_integral(const GridField& u, const YoungFunction& psi,
                               int levels = 2048, double rel_tol = 5e-3);

} // namespace pslab
