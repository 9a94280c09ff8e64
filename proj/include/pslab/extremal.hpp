#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pslab/dist_fn.hpp"
#include "pslab/grid_field.hpp"
#include "pslab/profile.hpp"
#include "pslab/young.hpp"

namespace pslab {

// A function whose super-level sets are balls: radius profile r(t) plus a
// piecewise-constant center path with jumps only at plateau heights. This
// is exactly the class for which symmetrization preserves gradient
// integrals, so all derived quantities admit closed forms.
struct ExtremalSpec {
    int n = 2;
    RadialProfile profile;
    CenterPath centers;
    std::string family = "custom";
    std::map<std::string, double> params;

    double top() const { return profile.top_height(); }
    bool bv_only() const { return profile.has_flat_segment(); }
};

// Validates and assembles a spec. Rejects center jumps at heights where
// the radius is continuous (no plateau there means centers cannot move),
// nestedness violations |delta xi| > radius drop, and invalid profiles.
ExtremalSpec build_extremal(int n, RadialProfile profile, CenterPath centers);

// u(x) = sup{t : |x - xi_t| < r(t)}, resolved exactly by a monotone
// bisection over the knot heights followed by a linear solve in the
// crossing segment.
double eval_extremal(const ExtremalSpec& spec, const Point& x);

// Exact statistics of a spec, all in closed form (flat radius segments
// are value jumps; their Sobolev gradient norms are infinite and only the
// variation term below is meaningful).
struct ExtremalStats {
    ExtremalSpec spec;
    double omega = 0.0;               // unit-ball volume in dimension n
    double ess_sup = 0.0;
    double support_measure = 0.0;     // F(0+)
    double critical_measure = 0.0;    // measure of {0 < u < max, grad u = 0}
    double singular_mass = 0.0;       // plateau mass of the height measure
    double singular_variation = 0.0;  // value-jump variation ||D^s u||
    bool bv_only = false;
    std::vector<ProfileJump> jump_list;
    std::vector<double> jump_masses;

    double distribution(double t) const;          // F(t)
    double singular_distribution(double t) const; // F^s(t): jump mass above t
    double lq_norm(double q) const;
    double lq_norm_on_critical(double q) const;
    double grad_norm_lp(double p) const; // +inf for p > 1 when bv_only
    double psi_mass(const YoungFunction& psi) const; // integral of psi(u)
    double psi_mass_on_critical(const YoungFunction& psi) const;
    // Integral of psi(u) over {t0 < u < t1} (open height band).
    double psi_mass_on_open_band(double t0, double t1,
                                 const YoungFunction& psi) const;
};

ExtremalStats extremal_exact_stats(const ExtremalSpec& spec);

// Analytic distribution function; at() evaluates omega_n r(t)^n exactly.
DistFn exact_distribution(const ExtremalSpec& spec);

// Small cone stacked off-center on the frustum of a large cone: profile
// linear 1 -> rho on [0,a], plateau drop rho -> rho_prime at a, linear
// rho_prime -> 0 on [a,1]; centers 0 below a and e above.
ExtremalSpec family_cone_frustrum(int n, double a, double rho,
                                  double rho_prime, const Point& e);

// Pure plateau tower: levels are (height, radius) with radii strictly
// decreasing; one center per level.
ExtremalSpec family_staircase(int n,
                              const std::vector<std::pair<double, double>>& levels,
                              const std::vector<Point>& level_centers);

// Depth-truncated Cantor radius profile r(t) = 1 - C_d(t)/2: 2^depth
// plateau jumps tagged as singular-continuous stand-ins, total mass
// independent of depth. center_scale in [0,1] adds admissible alternating
// center micro-jumps of that fraction of each radius drop.
ExtremalSpec family_devils_staircase(int n, int cantor_depth,
                                     double center_scale = 0.0);

ExtremalSpec translate_spec(const ExtremalSpec& spec, const Point& v);
ExtremalSpec dilate_spec(const ExtremalSpec& spec, double lambda);
// Same profile with centers frozen at xi_infinity: the symmetrized
// function composed with the optimal translation.
ExtremalSpec rearranged_translate(const ExtremalSpec& spec);
// Same profile centered at the origin: the symmetrized function itself.
ExtremalSpec concentric_rearrangement(const ExtremalSpec& spec);
// Split u = min(u,a) + (u-a)_+ at a height a (exact for any knot height).
std::pair<ExtremalSpec, ExtremalSpec> split_at_height(const ExtremalSpec& spec,
                                                      double a);

// Samples the spec onto a centered grid with zero-padding margin.
GridField sample_grid(const ExtremalSpec& spec, int cells,
                      double margin = 0.25);

} // namespace pslab
