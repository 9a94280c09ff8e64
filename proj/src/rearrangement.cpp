#include "pslab/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pslab/geometry.hpp"
#include "pslab/quadrature.hpp"

namespace pslab {

namespace {

// Squared distance from the grid center in half-cell units; exact
// integers, so equidistant cells tie exactly and the flat-index
// tie-break is deterministic.
long long center_key(const GridField& u, int i, int j, int k) {
    const long long ax = 2LL * i + 1 - u.dims[0];
    const long long ay = 2LL * j + 1 - u.dims[1];
    const long long az = 2LL * k + 1 - u.dims[2];
    return ax * ax + ay * ay + az * az;
}

std::vector<HeightInterval>
check_intervals(const std::vector<HeightInterval>& intervals) {
    for (const auto& iv : intervals)
        if (!(iv.first >= 0.0) || !(iv.second > iv.first))
            throw std::invalid_argument(
                "removal intervals must be nonnegative with positive length");
    std::vector<HeightInterval> out = intervals;
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i].first < out[i - 1].second)
            throw std::invalid_argument(
                "removal intervals must be ordered and disjoint");
    // Touching intervals have the same union; merge them so heights are
    // mapped through a single subtraction.
    std::vector<HeightInterval> merged;
    for (const auto& iv : out) {
        if (!merged.empty() && iv.first == merged.back().second)
            merged.back().second = iv.second;
        else
            merged.push_back(iv);
    }
    return merged;
}

double map_height(const std::vector<HeightInterval>& norm, double t) {
    double removed = 0.0;
    for (const auto& iv : norm) {
        if (t <= iv.first)
            break;
        removed += std::min(t, iv.second) - iv.first;
    }
    return t - removed;
}

// Index of the interval whose closure contains t, or -1. The slice map
// is constant there, so all heights of one interval must be mapped by
// the same evaluation to stay exactly equal in floating point.
int containing_interval(const std::vector<HeightInterval>& norm, double t) {
    for (size_t k = 0; k < norm.size(); ++k)
        if (norm[k].first <= t && t <= norm[k].second)
            return int(k);
    return -1;
}

double mapped_height(const std::vector<HeightInterval>& norm, double t) {
    const int k = containing_interval(norm, t);
    return map_height(norm, k < 0 ? t : norm[size_t(k)].first);
}

} // namespace

GridField rearrange(const GridField& u) {
    u.validate();
    struct Cell {
        long long key;
        long flat;
    };
    std::vector<Cell> cells;
    cells.reserve(size_t(u.size()));
    for (int k = 0; k < u.dims[2]; ++k)
        for (int j = 0; j < u.dims[1]; ++j)
            for (int i = 0; i < u.dims[0]; ++i)
                cells.push_back({center_key(u, i, j, k), u.flat_index(i, j, k)});
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return a.key != b.key ? a.key < b.key : a.flat < b.flat;
    });

    std::vector<double> vals = u.values;
    std::sort(vals.begin(), vals.end(), std::greater<double>());

    GridField out = u;
    for (int a = 0; a < 3; ++a)
        out.origin[a] = -0.5 * u.h * u.dims[a];
    for (size_t i = 0; i < cells.size(); ++i)
        out.values[size_t(cells[i].flat)] = vals[i];
    return out;
}

RadialProfile rearrange_profile(const DistFn& distfn) {
    if (distfn.provenance == Provenance::analytic && distfn.source)
        return distfn.source->profile;
    if (distfn.thresholds.empty())
        throw std::invalid_argument("distribution function has no thresholds");
    const double omega = unit_ball_volume(distfn.n);
    const double inv = 1.0 / distfn.n;
    RadialProfile p;
    p.knots.push_back({0.0, std::pow(distfn.support_measure / omega, inv)});
    for (size_t i = 0; i < distfn.thresholds.size(); ++i) {
        const double r = std::pow(distfn.values[i] / omega, inv);
        p.knots.push_back({distfn.thresholds[i], r});
        if (r == 0.0)
            break;
    }
    return p;
}

double slice_map(const std::vector<HeightInterval>& intervals, double t) {
    return map_height(check_intervals(intervals), t);
}

GridField slice_removal(const GridField& u,
                        const std::vector<HeightInterval>& intervals) {
    const auto norm = check_intervals(intervals);
    GridField out = u;
    for (auto& v : out.values)
        v = map_height(norm, v);
    return out;
}

RadialProfile slice_removal(const RadialProfile& profile,
                            const std::vector<HeightInterval>& intervals) {
    const auto norm = check_intervals(intervals);
    const double top = profile.top_height();

    // Refine: add knots at interval endpoints interior to a segment, so
    // every removed height range is delimited by knots.
    std::vector<double> cuts;
    for (const auto& iv : norm) {
        if (iv.first > 0.0 && iv.first < top)
            cuts.push_back(iv.first);
        if (iv.second > 0.0 && iv.second < top)
            cuts.push_back(iv.second);
    }
    std::vector<ProfileKnot> ref;
    const auto& ks = profile.knots;
    for (size_t i = 0; i < ks.size(); ++i) {
        if (i > 0 && ks[i].t > ks[i - 1].t) {
            const double t0 = ks[i - 1].t, t1 = ks[i].t;
            const double slope = (ks[i].r - ks[i - 1].r) / (t1 - t0);
            for (double c : cuts)
                if (c > t0 && c < t1)
                    ref.push_back({c, ks[i - 1].r + slope * (c - t0)});
        }
        ref.push_back(ks[i]);
    }

    // Heights within one interval share a single slice-map evaluation
    // (mapped_height), so their images compare exactly equal and the
    // whole interval collapses into one run.
    std::vector<double> nt(ref.size());
    for (size_t i = 0; i < ref.size(); ++i)
        nt[i] = mapped_height(norm, ref[i].t);

    RadialProfile out;
    size_t i = 0;
    while (i < ref.size()) {
        size_t j = i;
        while (j + 1 < ref.size() && nt[j + 1] == nt[i])
            ++j;
        const bool merged_run = ref[j].t > ref[i].t;
        if (nt[i] == 0.0) {
            out.knots.push_back({0.0, ref[j].r});
        } else if (j + 1 == ref.size()) {
            out.knots.push_back({nt[i], ref[i].r});
        } else if (i == j) {
            out.knots.push_back({nt[i], ref[i].r, ref[i].sc});
        } else if (ref[i].r > ref[j].r) {
            out.knots.push_back({nt[i], ref[i].r});
            out.knots.push_back({nt[i], ref[j].r, merged_run ? false : ref[j].sc});
        } else {
            out.knots.push_back({nt[i], ref[i].r});
        }
        i = j + 1;
    }
    if (out.knots.size() < 2 || out.knots.front().r <= 0.0)
        throw std::invalid_argument("slice removal empties the profile");
    return out;
}

ExtremalSpec slice_removal(const ExtremalSpec& spec,
                           const std::vector<HeightInterval>& intervals) {
    const auto norm = check_intervals(intervals);
    RadialProfile prof = slice_removal(spec.profile, intervals);
    const double new_top = prof.top_height();

    CenterPath path;
    for (size_t i = 0; i < spec.centers.heights.size(); ++i) {
        const double v = mapped_height(norm, spec.centers.heights[i]);
        if (v >= new_top && i > 0)
            continue;
        if (!path.heights.empty() && v == path.heights.back())
            path.centers.back() = spec.centers.centers[i];
        else {
            path.heights.push_back(v);
            path.centers.push_back(spec.centers.centers[i]);
        }
    }
    auto out = build_extremal(spec.n, std::move(prof), std::move(path));
    out.family = spec.family;
    out.params = spec.params;
    return out;
}

std::vector<HeightInterval> singular_slices(const MeasureDecomposition& dec,
                                            int m) {
    if (m < 1)
        throw std::invalid_argument("approximation index must be >= 1");
    std::vector<HeightInterval> raw;
    raw.push_back({0.0, 1.0 / m});
    if (!dec.sc_heights.empty()) {
        const double delta =
            std::pow(2.0, -m) / (2.0 * double(dec.sc_heights.size()));
        for (double s : dec.sc_heights)
            raw.push_back({std::max(0.0, s - delta), s + delta});
    }
    if (dec.ess_sup > double(m))
        raw.push_back({double(m), dec.ess_sup + 1.0});
    std::sort(raw.begin(), raw.end());
    std::vector<HeightInterval> merged;
    for (const auto& iv : raw) {
        if (!merged.empty() && iv.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    return merged;
}

GridField approximation_sequence(const GridField& u,
                                 const MeasureDecomposition& dec, int m) {
    return slice_removal(u, singular_slices(dec, m));
}

ExtremalSpec approximation_sequence(const ExtremalSpec& spec,
                                    const MeasureDecomposition& dec, int m) {
    return slice_removal(spec, singular_slices(dec, m));
}

double approximation_l1_gap(const ExtremalSpec& spec,
                            const MeasureDecomposition& dec, int m) {
    const auto slices = singular_slices(dec, m);
    const auto st = extremal_exact_stats(spec);
    const double top = spec.top();

    std::vector<double> breaks;
    for (const auto& k : spec.profile.knots)
        breaks.push_back(k.t);

    double gap = 0.0;
    for (const auto& iv : slices) {
        const double a = std::max(iv.first, 0.0);
        const double b = std::min(iv.second, top);
        if (b <= a)
            continue;
        std::vector<double> pts{a, b};
        for (double t : breaks)
            if (t > a && t < b)
                pts.push_back(t);
        std::sort(pts.begin(), pts.end());
        for (size_t i = 0; i + 1 < pts.size(); ++i)
            gap += integrate([&](double t) { return st.distribution(t); },
                             pts[i], pts[i + 1], 1e-12, 1e-14)
                       .value;
    }
    return gap;
}

} // namespace pslab
