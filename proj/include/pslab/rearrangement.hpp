#pragma once

#include <utility>
#include <vector>

#include "pslab/extremal.hpp"
#include "pslab/grid_field.hpp"
#include "pslab/measure.hpp"
#include "pslab/profile.hpp"

namespace pslab {

// Symmetric decreasing rearrangement of a grid sample: the value multiset
// is redistributed onto cells sorted by distance from the grid center
// (exact integer keys, lexicographic tie-break), so equimeasurability is
// exact by construction. The output grid is centered at the origin.
GridField rearrange(const GridField& u);

// Radial profile r(t) = (F(t) / omega_n)^{1/n}. Analytic inputs return
// the generating profile exactly; sampled inputs interpolate linearly
// between thresholds.
RadialProfile rearrange_profile(const DistFn& distfn);

// Half-open height interval [first, second).
using HeightInterval = std::pair<double, double>;

// lambda_1([0, t] \ I) for a disjoint ordered union I of intervals;
// throws on overlapping, unordered or negative intervals.
double slice_map(const std::vector<HeightInterval>& intervals, double t);

// Composition with the slice map f(t) = lambda_1([0, t] \ I): heights
// inside I collapse, so plateaus of the input become jumps of the output.
GridField slice_removal(const GridField& u,
                        const std::vector<HeightInterval>& intervals);
RadialProfile slice_removal(const RadialProfile& profile,
                            const std::vector<HeightInterval>& intervals);
ExtremalSpec slice_removal(const ExtremalSpec& spec,
                           const std::vector<HeightInterval>& intervals);

// The open height set S_m removed at approximation step m: [0, 1/m),
// (m, inf) when the essential supremum exceeds m, and a neighborhood of
// total length 2^{-m} of the singular-continuous heights. Genuine jump
// heights stay. Overlaps are merged; the result is disjoint and ordered.
std::vector<HeightInterval> singular_slices(const MeasureDecomposition& dec,
                                            int m);

// u_m = f_m(u) for the slice map of singular_slices(dec, m). Pointwise
// nondecreasing in m, u_m <= u, and every level set of u_m is a level
// set of u.
GridField approximation_sequence(const GridField& u,
                                 const MeasureDecomposition& dec, int m);
ExtremalSpec approximation_sequence(const ExtremalSpec& spec,
                                    const MeasureDecomposition& dec, int m);

// Exact L1 distance between the extremal and its m-th approximation,
// integral of the distribution function over the removed height set.
double approximation_l1_gap(const ExtremalSpec& spec,
                            const MeasureDecomposition& dec, int m);

} // namespace pslab
