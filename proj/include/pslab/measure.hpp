#pragma once

#include <cstdint>
#include <vector>

#include "pslab/dist_fn.hpp"
#include "pslab/extremal.hpp"
#include "pslab/grid_field.hpp"
#include "pslab/profile.hpp"

namespace pslab {

// Lebesgue decomposition of the height measure mu((a,b]) = F(a) - F(b)
// on (0, ess sup): absolutely continuous density, plateau atoms, and the
// singular-continuous masses tracked exactly for analytic inputs. The
// drop at the top height (a plateau at the maximum) is excluded from the
// atom list and reported separately.
struct MeasureDecomposition {
    int n = 2;
    bool analytic = false;
    double ess_sup = 0.0;
    double total_mass = 0.0; // F(0+) - F(ess_sup-)
    std::vector<double> thresholds;
    std::vector<double> ac_density; // -F' on each threshold interval
    std::vector<double> jump_heights;
    std::vector<double> jump_masses;
    std::vector<double> sc_heights;
    std::vector<double> sc_masses;
    double top_plateau_mass = 0.0;
    bool top_plateau_flagged = false;

    double ac_mass() const;
    double singular_mass() const; // jumps plus sc, i.e. F^s(0+)
    // F^s(t): singular mass strictly above height t.
    double singular_distribution(double t) const;
    std::vector<double> singular_heights() const;
};

// jump_tol <= 0 selects the automatic threshold 4 * (max AC interval
// density) * (interval width), fixed-point iterated. A caller-supplied
// tolerance below twice the steepest unflagged interval mass is rejected
// as unresolvable.
MeasureDecomposition decompose(const DistFn& distfn, double jump_tol = 0.0);

struct CriticalSet {
    std::vector<std::uint8_t> mask; // per cell
    double measure = 0.0;
    double eps = 0.0;
};

// Cells with 0 < u < max and finite-difference |grad u| < eps.
CriticalSet critical_set(const GridField& field, double eps);

// Per-cell volume radius of the level set through the cell:
// R(x) = (F(u(x)) / omega_n)^{1/n}; cells with u = 0 carry the support
// radius. The output shares the input geometry and is not zero-padded.
GridField radius_function(const GridField& field, const DistFn& distfn);

// Centroid path of the thresholded super-level sets. Every level set
// must pass a ball-shape test (isoperimetric quotient in 2D, single-run
// in 1D, symmetric difference against the centroid ball in 3D); failure
// throws, since center paths are meaningful only for ball-level-set
// functions. xi_infinity is the centroid of the smallest nonempty set.
CenterPath center_path(const GridField& field,
                       const std::vector<double>& thresholds);
CenterPath center_path(const ExtremalSpec& spec);

// Total-variation bound (singular_mass / omega_n)^{1/n}.
double center_variation_bound(const MeasureDecomposition& dec);
// Two-height bound (mu^s((s,t]) / omega_n)^{1/n} for 0 < s < t.
double center_variation_bound(const MeasureDecomposition& dec, double s,
                              double t);

} // namespace pslab
