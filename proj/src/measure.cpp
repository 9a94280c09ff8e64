#include "pslab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pslab/geometry.hpp"

namespace pslab {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

struct LevelMask {
    std::vector<std::uint8_t> cells;
    long count = 0;
};

LevelMask level_mask(const GridField& u, double t) {
    LevelMask m;
    m.cells.assign(u.values.size(), 0);
    for (size_t i = 0; i < u.values.size(); ++i)
        if (u.values[i] > t) {
            m.cells[i] = 1;
            ++m.count;
        }
    return m;
}

Point mask_centroid(const GridField& u, const LevelMask& m) {
    Point c{0.0, 0.0, 0.0};
    for (long f = 0; f < u.size(); ++f)
        if (m.cells[size_t(f)])
            c = add(c, u.cell_center(f));
    return scale(c, 1.0 / double(m.count));
}

// Four-direction Cauchy-Crofton perimeter estimate of a 2D mask; exact
// for rasterized discs in the limit, about 5% low for squares.
double crofton_perimeter(const GridField& u, const LevelMask& m) {
    const int nx = u.dims[0], ny = u.dims[1];
    const auto at = [&](int i, int j) -> bool {
        if (i < 0 || j < 0 || i >= nx || j >= ny)
            return false;
        return m.cells[size_t(u.flat_index(i, j, 0))] != 0;
    };
    long s0 = 0, s90 = 0, s45 = 0, s135 = 0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i <= nx; ++i)
            s0 += at(i - 1, j) != at(i, j);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j <= ny; ++j)
            s90 += at(i, j - 1) != at(i, j);
    for (int j = -1; j < ny; ++j)
        for (int i = -1; i < nx; ++i) {
            s45 += at(i, j) != at(i + 1, j + 1);
            s135 += at(i, j + 1) != at(i + 1, j);
        }
    const double pi = 3.14159265358979323846;
    return (pi / 8.0) * u.h *
           (double(s0) + double(s90) + (double(s45) + double(s135)) / kSqrt2);
}

void ball_shape_test(const GridField& u, const LevelMask& m, double t) {
    const double vol = double(m.count) * u.cell_volume();
    if (u.n == 1) {
        int lo = -1, hi = -1;
        for (int i = 0; i < u.dims[0]; ++i)
            if (m.cells[size_t(i)]) {
                if (lo < 0)
                    lo = i;
                hi = i;
            }
        const double extent = double(hi - lo + 1);
        if (extent > 1.1 * double(m.count))
            throw std::runtime_error("level set not a ball");
        return;
    }
    if (u.n == 2) {
        // Below a few dozen cells the rasterization error dominates the
        // isoperimetric deficit and no shape is distinguishable from a
        // ball at this resolution.
        if (m.count < 32)
            return;
        const double per = crofton_perimeter(u, m);
        const double pi = 3.14159265358979323846;
        if (per * per > 1.1 * 4.0 * pi * vol)
            throw std::runtime_error("level set not a ball");
        return;
    }
    // 3D: symmetric difference against the centroid ball of equal volume.
    if (m.count < 64)
        return;
    const Point c = mask_centroid(u, m);
    const double r = std::cbrt(vol / unit_ball_volume(3));
    long mismatch = 0;
    for (long f = 0; f < u.size(); ++f) {
        const bool in_mask = m.cells[size_t(f)] != 0;
        const bool in_ball = dist(u.cell_center(f), c) < r;
        mismatch += in_mask != in_ball;
    }
    if (double(mismatch) > 0.10 * double(m.count))
        throw std::runtime_error("level set not a ball");
    (void)t;
}

} // namespace

double MeasureDecomposition::ac_mass() const {
    double m = 0.0;
    double prev = 0.0;
    for (size_t i = 0; i < thresholds.size(); ++i) {
        m += ac_density[i] * (thresholds[i] - prev);
        prev = thresholds[i];
    }
    return m;
}

double MeasureDecomposition::singular_mass() const {
    return std::accumulate(jump_masses.begin(), jump_masses.end(), 0.0) +
           std::accumulate(sc_masses.begin(), sc_masses.end(), 0.0);
}

double MeasureDecomposition::singular_distribution(double t) const {
    double m = 0.0;
    for (size_t i = 0; i < jump_heights.size(); ++i)
        if (jump_heights[i] > t)
            m += jump_masses[i];
    for (size_t i = 0; i < sc_heights.size(); ++i)
        if (sc_heights[i] > t)
            m += sc_masses[i];
    return m;
}

std::vector<double> MeasureDecomposition::singular_heights() const {
    std::vector<double> all = jump_heights;
    all.insert(all.end(), sc_heights.begin(), sc_heights.end());
    std::sort(all.begin(), all.end());
    return all;
}

namespace {

MeasureDecomposition decompose_analytic(const DistFn& distfn) {
    const ExtremalSpec& spec = *distfn.source;
    const double omega = unit_ball_volume(spec.n);
    MeasureDecomposition dec;
    dec.n = spec.n;
    dec.analytic = true;
    dec.ess_sup = spec.top();
    const double top_left = spec.profile.left_radius_at(spec.top());
    dec.top_plateau_mass = omega * std::pow(top_left, spec.n);
    dec.top_plateau_flagged = dec.top_plateau_mass > 0.0;
    dec.total_mass = distfn.support_measure - dec.top_plateau_mass;

    for (const auto& seg : spec.profile.segments()) {
        const int sub = seg.flat() ? 1 : 16;
        for (int s = 0; s < sub; ++s) {
            const double ta = seg.t0 + (seg.t1 - seg.t0) * s / sub;
            const double tb = seg.t0 + (seg.t1 - seg.t0) * (s + 1) / sub;
            const double ra = seg.r0 + seg.slope() * (ta - seg.t0);
            const double rb = seg.r0 + seg.slope() * (tb - seg.t0);
            const double drop = omega * (std::pow(ra, spec.n) -
                                         std::pow(rb, spec.n));
            dec.thresholds.push_back(tb);
            dec.ac_density.push_back(drop / (tb - ta));
        }
    }
    for (const auto& j : spec.profile.jumps()) {
        const double m =
            omega * (std::pow(j.r_before, spec.n) - std::pow(j.r_after, spec.n));
        if (j.sc) {
            dec.sc_heights.push_back(j.t);
            dec.sc_masses.push_back(m);
        } else {
            dec.jump_heights.push_back(j.t);
            dec.jump_masses.push_back(m);
        }
    }
    return dec;
}

MeasureDecomposition decompose_empirical(const DistFn& distfn,
                                         double jump_tol) {
    const size_t K = distfn.thresholds.size();
    MeasureDecomposition dec;
    dec.n = distfn.n;
    dec.ess_sup = distfn.ess_sup;

    std::vector<double> mass(K), width(K);
    double prev_t = 0.0, prev_v = distfn.support_measure;
    for (size_t i = 0; i < K; ++i) {
        width[i] = distfn.thresholds[i] - prev_t;
        mass[i] = prev_v - distfn.values[i];
        prev_t = distfn.thresholds[i];
        prev_v = distfn.values[i];
    }

    std::vector<char> flag(K, 0);
    if (jump_tol > 0.0) {
        for (size_t i = 0; i < K; ++i)
            flag[i] = mass[i] > jump_tol;
        double steepest = 0.0;
        for (size_t i = 0; i < K; ++i)
            if (!flag[i])
                steepest = std::max(steepest, mass[i]);
        if (jump_tol < 2.0 * steepest)
            throw std::runtime_error(
                "jump tolerance cannot separate plateaus from steep "
                "absolutely continuous variation");
    } else {
        // Start from the median interval density, then iterate the
        // 4 * maxAC * width rule to a fixed point.
        std::vector<double> dens(K);
        for (size_t i = 0; i < K; ++i)
            dens[i] = width[i] > 0.0 ? mass[i] / width[i] : 0.0;
        std::vector<double> sorted = dens;
        std::sort(sorted.begin(), sorted.end());
        double max_ac = sorted[K / 2];
        for (int iter = 0; iter < 32; ++iter) {
            std::vector<char> next(K, 0);
            for (size_t i = 0; i < K; ++i)
                next[i] = mass[i] > 4.0 * max_ac * width[i];
            double m2 = 0.0;
            for (size_t i = 0; i < K; ++i)
                if (!next[i])
                    m2 = std::max(m2, dens[i]);
            if (next == flag)
                break;
            flag = std::move(next);
            max_ac = m2;
        }
    }

    for (size_t i = 0; i < K; ++i) {
        if (!flag[i]) {
            dec.thresholds.push_back(distfn.thresholds[i]);
            dec.ac_density.push_back(width[i] > 0.0 ? mass[i] / width[i] : 0.0);
            continue;
        }
        // Merge a run of flagged intervals into one atom at its right end.
        double m = 0.0;
        size_t j = i;
        while (j < K && flag[j]) {
            m += mass[j];
            dec.thresholds.push_back(distfn.thresholds[j]);
            dec.ac_density.push_back(0.0);
            ++j;
        }
        const double height = distfn.thresholds[j - 1];
        if (height >= dec.ess_sup - 0.5 * width[j - 1]) {
            dec.top_plateau_mass = m;
            dec.top_plateau_flagged = true;
        } else {
            dec.jump_heights.push_back(height);
            dec.jump_masses.push_back(m);
        }
        i = j - 1;
    }
    dec.total_mass = distfn.support_measure -
                     (K ? distfn.values.back() : 0.0) - dec.top_plateau_mass;
    return dec;
}

} // namespace

MeasureDecomposition decompose(const DistFn& distfn, double jump_tol) {
    if (distfn.provenance == Provenance::analytic && distfn.source)
        return decompose_analytic(distfn);
    if (distfn.thresholds.empty())
        throw std::invalid_argument("cannot decompose an empty distribution");
    return decompose_empirical(distfn, jump_tol);
}

CriticalSet critical_set(const GridField& field, double eps) {
    if (eps <= 0.0)
        throw std::invalid_argument("gradient threshold must be positive");
    CriticalSet cs;
    cs.eps = eps;
    cs.mask.assign(field.values.size(), 0);
    const auto g = gradient_magnitude(field);
    const double top = field.max_value();
    for (size_t i = 0; i < field.values.size(); ++i) {
        const double v = field.values[i];
        if (v > 0.0 && v < top && g[i] < eps) {
            cs.mask[i] = 1;
            cs.measure += field.cell_volume();
        }
    }
    return cs;
}

GridField radius_function(const GridField& field, const DistFn& distfn) {
    const double omega = unit_ball_volume(field.n);
    GridField out = field;
    for (size_t i = 0; i < field.values.size(); ++i) {
        const double v = field.values[i];
        const double f = v > 0.0 ? distfn.at(v) : distfn.support_measure;
        out.values[i] = std::pow(f / omega, 1.0 / field.n);
    }
    return out;
}

CenterPath center_path(const GridField& field,
                       const std::vector<double>& thresholds) {
    if (thresholds.empty())
        throw std::invalid_argument("center path needs thresholds");
    CenterPath path;
    for (double t : thresholds) {
        if (t <= 0.0)
            throw std::invalid_argument("thresholds must be positive");
        const auto m = level_mask(field, t);
        if (m.count == 0)
            break;
        ball_shape_test(field, m, t);
        path.heights.push_back(t);
        path.centers.push_back(mask_centroid(field, m));
    }
    if (path.heights.empty())
        throw std::invalid_argument("no nonempty level sets below the top");
    path.xi_infinity = path.centers.back();
    return path;
}

CenterPath center_path(const ExtremalSpec& spec) {
    CenterPath path = spec.centers;
    path.xi_infinity = spec.centers.centers.back();
    return path;
}

double center_variation_bound(const MeasureDecomposition& dec) {
    return std::pow(dec.singular_mass() / unit_ball_volume(dec.n),
                    1.0 / dec.n);
}

double center_variation_bound(const MeasureDecomposition& dec, double s,
                              double t) {
    if (!(s > 0.0 && s < t && t < dec.ess_sup))
        throw std::invalid_argument("need 0 < s < t < ess sup");
    const double m =
        dec.singular_distribution(s) - dec.singular_distribution(t);
    return std::pow(m / unit_ball_volume(dec.n), 1.0 / dec.n);
}

} // namespace pslab
