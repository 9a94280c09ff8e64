#include "pslab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "pslab/geometry.hpp"
#include "pslab/quadrature.hpp"

namespace pslab {

namespace {

Point center_left_of(const CenterPath& path, double t) {
    const auto it =
        std::lower_bound(path.heights.begin(), path.heights.end(), t);
    if (it == path.heights.begin())
        return path.centers.front();
    return path.centers[size_t(it - path.heights.begin()) - 1];
}

void check_point_dim(int n, const Point& p, const char* what) {
    for (int k = n; k < 3; ++k)
        if (p[k] != 0.0)
            throw std::invalid_argument(std::string(what) +
                                        " has components beyond the dimension");
}

// Integrates f over [a, b] split at the interior kink positions of psi,
// so piecewise-smooth integrands are resolved panel-exactly.
double integrate_split(const std::function<double(double)>& f, double a,
                       double b, const YoungFunction* psi) {
    std::vector<double> cuts{a, b};
    if (psi) {
        for (const auto& atom : psi->curvature_atoms())
            if (atom.first > a && atom.first < b)
                cuts.push_back(atom.first);
        std::sort(cuts.begin(), cuts.end());
    }
    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate(f, cuts[i], cuts[i + 1], 1e-13, 1e-15).value;
    return total;
}

} // namespace

ExtremalSpec build_extremal(int n, RadialProfile profile, CenterPath centers) {
    if (n < 1 || n > 3)
        throw std::invalid_argument("dimension must be 1, 2, or 3");
    profile.validate();
    if (centers.heights.empty() || centers.heights.front() != 0.0)
        throw std::invalid_argument("center path must start at height 0");
    if (centers.heights.size() != centers.centers.size())
        throw std::invalid_argument("center path heights/centers mismatch");
    for (size_t i = 1; i < centers.heights.size(); ++i)
        if (centers.heights[i] <= centers.heights[i - 1])
            throw std::invalid_argument("center path heights must increase");
    for (const auto& c : centers.centers)
        check_point_dim(n, c, "center");

    const auto jumps = profile.jumps();
    for (size_t i = 1; i < centers.heights.size(); ++i) {
        const double h = centers.heights[i];
        const ProfileJump* match = nullptr;
        for (const auto& j : jumps)
            if (j.t == h) {
                match = &j;
                break;
            }
        if (!match)
            throw std::invalid_argument("center jump without plateau");
        const double step = dist(centers.centers[i], centers.centers[i - 1]);
        if (step > match->r_before - match->r_after + 1e-12)
            throw std::invalid_argument("nestedness violation: center jump "
                                        "exceeds radius drop");
    }

    centers.xi_infinity = centers.centers.back();
    ExtremalSpec spec;
    spec.n = n;
    spec.profile = std::move(profile);
    spec.centers = std::move(centers);
    return spec;
}

double eval_extremal(const ExtremalSpec& spec, const Point& x) {
    const auto& ks = spec.profile.knots;
    const auto gval = [&](size_t i) {
        const auto& k = ks[i];
        const bool pre_jump = (i + 1 < ks.size() && ks[i + 1].t == k.t);
        const Point c = pre_jump ? center_left_of(spec.centers, k.t)
                                 : spec.centers.at(k.t);
        return k.r - dist(x, c);
    };
    // g is nonincreasing along the knot sequence; locate the sign change.
    size_t lo = 0, hi = ks.size();
    while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        if (gval(mid) <= 0.0)
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo == ks.size())
        return spec.top();
    if (lo == 0)
        return 0.0;
    const auto& kb = ks[lo - 1];
    const auto& ka = ks[lo];
    if (ka.t == kb.t)
        return ka.t;
    const double s = (ka.r - kb.r) / (ka.t - kb.t);
    if (s == 0.0)
        return ka.t;
    const double d = dist(x, spec.centers.at(kb.t));
    return std::clamp(kb.t + (d - kb.r) / s, kb.t, ka.t);
}

double ExtremalStats::distribution(double t) const {
    return omega * std::pow(spec.profile.radius_at(t), spec.n);
}

double ExtremalStats::singular_distribution(double t) const {
    double m = 0.0;
    for (size_t i = 0; i < jump_list.size(); ++i)
        if (jump_list[i].t > t)
            m += jump_masses[i];
    return m;
}

double ExtremalStats::lq_norm(double q) const {
    if (q < 1.0)
        throw std::invalid_argument("norm exponent must be >= 1");
    double total = 0.0;
    for (const auto& seg : spec.profile.segments()) {
        const double vol = omega * std::pow(seg.r0, spec.n);
        if (seg.flat()) {
            total += vol * (std::pow(seg.t1, q) - std::pow(seg.t0, q));
        } else {
            const auto f = [&](double t) {
                const double r =
                    seg.r0 + seg.slope() * (t - seg.t0);
                return q * std::pow(t, q - 1.0) * omega * std::pow(r, spec.n);
            };
            total += integrate_split(f, seg.t0, seg.t1, nullptr);
        }
    }
    return std::pow(total, 1.0 / q);
}

double ExtremalStats::lq_norm_on_critical(double q) const {
    if (q < 1.0)
        throw std::invalid_argument("norm exponent must be >= 1");
    double total = 0.0;
    for (size_t i = 0; i < jump_list.size(); ++i)
        total += std::pow(jump_list[i].t, q) * jump_masses[i];
    return std::pow(total, 1.0 / q);
}

double ExtremalStats::grad_norm_lp(double p) const {
    if (p < 1.0)
        throw std::invalid_argument("gradient exponent must be >= 1");
    if (bv_only && p > 1.0)
        return std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (const auto& seg : spec.profile.segments()) {
        if (seg.flat())
            continue;
        const double drop =
            omega * (std::pow(seg.r0, spec.n) - std::pow(seg.r1, spec.n));
        total += std::pow(std::abs(seg.slope()), -p) * drop;
    }
    return std::pow(total, 1.0 / p);
}

double ExtremalStats::psi_mass(const YoungFunction& psi) const {
    double total = 0.0;
    for (const auto& seg : spec.profile.segments()) {
        if (seg.flat()) {
            total += omega * std::pow(seg.r0, spec.n) *
                     (psi.value(seg.t1) - psi.value(seg.t0));
        } else {
            const auto f = [&](double t) {
                const double r = seg.r0 + seg.slope() * (t - seg.t0);
                return psi.derivative(t) * omega * std::pow(r, spec.n);
            };
            total += integrate_split(f, seg.t0, seg.t1, &psi);
        }
    }
    return total;
}

double ExtremalStats::psi_mass_on_critical(const YoungFunction& psi) const {
    double total = 0.0;
    for (size_t i = 0; i < jump_list.size(); ++i)
        total += psi.value(jump_list[i].t) * jump_masses[i];
    return total;
}

double ExtremalStats::psi_mass_on_open_band(double t0, double t1,
                                            const YoungFunction& psi) const {
    const double f1 =
        omega * std::pow(spec.profile.left_radius_at(t1), spec.n);
    const auto f = [&](double t) {
        return psi.derivative(t) * (distribution(t) - f1);
    };
    return psi.value(t0) * (distribution(t0) - f1) +
           integrate_split(f, t0, t1, &psi);
}

ExtremalStats extremal_exact_stats(const ExtremalSpec& spec) {
    ExtremalStats st;
    st.spec = spec;
    st.omega = unit_ball_volume(spec.n);
    st.ess_sup = spec.top();
    st.support_measure =
        st.omega * std::pow(spec.profile.support_radius(), spec.n);
    st.bv_only = spec.bv_only();
    st.jump_list = spec.profile.jumps();
    for (const auto& j : st.jump_list) {
        const double m = st.omega * (std::pow(j.r_before, spec.n) -
                                     std::pow(j.r_after, spec.n));
        st.jump_masses.push_back(m);
        st.critical_measure += m;
    }
    st.singular_mass = st.critical_measure;
    for (const auto& seg : spec.profile.segments())
        if (seg.flat())
            st.singular_variation += (seg.t1 - seg.t0) * spec.n * st.omega *
                                     std::pow(seg.r0, spec.n - 1);
    return st;
}

DistFn exact_distribution(const ExtremalSpec& spec) {
    auto shared = std::make_shared<const ExtremalSpec>(spec);
    const double omega = unit_ball_volume(spec.n);
    const int n = spec.n;
    DistFn f;
    f.n = n;
    f.provenance = Provenance::analytic;
    f.source = shared;
    f.ess_sup = spec.top();
    f.support_measure = omega * std::pow(spec.profile.support_radius(), n);
    f.exact_eval = [shared, omega, n](double t) {
        return omega * std::pow(shared->profile.radius_at(t), n);
    };
    std::vector<double> ts;
    for (const auto& seg : spec.profile.segments()) {
        if (seg.t0 > 0.0)
            ts.push_back(seg.t0);
        ts.push_back(0.5 * (seg.t0 + seg.t1));
    }
    ts.push_back(spec.top());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    f.thresholds = ts;
    for (double t : ts)
        f.values.push_back(f.exact_eval(t));
    return f;
}

ExtremalSpec family_cone_frustrum(int n, double a, double rho,
                                  double rho_prime, const Point& e) {
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("plateau height must lie in (0,1)");
    if (!(rho_prime > 0.0 && rho_prime < rho && rho < 1.0))
        throw std::invalid_argument("radii must satisfy 0 < rho' < rho < 1");
    if (norm(e) > rho - rho_prime)
        throw std::invalid_argument("top cone off the plateau: |e| > rho - rho'");
    RadialProfile prof;
    prof.knots = {{0.0, 1.0}, {a, rho}, {a, rho_prime}, {1.0, 0.0}};
    CenterPath path;
    path.heights = {0.0, a};
    path.centers = {Point{0.0, 0.0, 0.0}, e};
    auto spec = build_extremal(n, std::move(prof), std::move(path));
    spec.family = "cone_frustrum";
    spec.params = {{"a", a},    {"rho", rho}, {"rho_prime", rho_prime},
                   {"ex", e[0]}, {"ey", e[1]}, {"ez", e[2]}};
    return spec;
}

ExtremalSpec family_staircase(
    int n, const std::vector<std::pair<double, double>>& levels,
    const std::vector<Point>& level_centers) {
    if (levels.size() < 2)
        throw std::invalid_argument("staircase needs at least two levels");
    if (level_centers.size() != levels.size())
        throw std::invalid_argument("one center per level required");
    RadialProfile prof;
    prof.knots.push_back({0.0, levels.front().second});
    for (size_t i = 0; i + 1 < levels.size(); ++i) {
        prof.knots.push_back({levels[i].first, levels[i].second});
        prof.knots.push_back({levels[i].first, levels[i + 1].second});
    }
    prof.knots.push_back({levels.back().first, levels.back().second});
    CenterPath path;
    path.heights = {0.0};
    path.centers = {level_centers.front()};
    for (size_t i = 0; i + 1 < levels.size(); ++i) {
        path.heights.push_back(levels[i].first);
        path.centers.push_back(level_centers[i + 1]);
    }
    auto spec = build_extremal(n, std::move(prof), std::move(path));
    spec.family = "staircase";
    spec.params = {{"levels", double(levels.size())}};
    return spec;
}

ExtremalSpec family_devils_staircase(int n, int cantor_depth,
                                     double center_scale) {
    if (cantor_depth < 1 || cantor_depth > 20)
        throw std::invalid_argument("cantor depth must be in [1, 20]");
    if (center_scale < 0.0 || center_scale > 1.0)
        throw std::invalid_argument("center scale must be in [0, 1]");
    // Midpoints of the depth-d Cantor intervals, in increasing order.
    std::vector<double> mids{0.5};
    for (int d = 0; d < cantor_depth; ++d) {
        std::vector<double> next;
        next.reserve(mids.size() * 2);
        const double off = 0.5 / std::pow(3.0, d + 1);
        for (double m : mids) {
            next.push_back(m - 2.0 * off);
            next.push_back(m + 2.0 * off);
        }
        mids = std::move(next);
    }
    const double step = 0.5 / double(mids.size());
    RadialProfile prof;
    prof.knots.push_back({0.0, 1.0});
    double r = 1.0;
    for (double m : mids) {
        prof.knots.push_back({m, r});
        r -= step;
        prof.knots.push_back({m, r, true});
    }
    prof.knots.push_back({1.0, 0.5});

    CenterPath path;
    path.heights = {0.0};
    path.centers = {Point{0.0, 0.0, 0.0}};
    if (center_scale > 0.0) {
        double sign = 1.0;
        Point c{0.0, 0.0, 0.0};
        for (double m : mids) {
            c[0] += sign * center_scale * step;
            sign = -sign;
            path.heights.push_back(m);
            path.centers.push_back(c);
        }
    }
    auto spec = build_extremal(n, std::move(prof), std::move(path));
    spec.family = "devils_staircase";
    spec.params = {{"depth", double(cantor_depth)},
                   {"center_scale", center_scale}};
    return spec;
}

ExtremalSpec translate_spec(const ExtremalSpec& spec, const Point& v) {
    check_point_dim(spec.n, v, "translation");
    ExtremalSpec out = spec;
    for (auto& c : out.centers.centers)
        c = add(c, v);
    out.centers.xi_infinity = add(out.centers.xi_infinity, v);
    return out;
}

ExtremalSpec dilate_spec(const ExtremalSpec& spec, double lambda) {
    if (lambda <= 0.0)
        throw std::invalid_argument("dilation factor must be positive");
    ExtremalSpec out = spec;
    for (auto& k : out.profile.knots)
        k.r *= lambda;
    for (auto& c : out.centers.centers)
        c = scale(c, lambda);
    out.centers.xi_infinity = scale(out.centers.xi_infinity, lambda);
    return out;
}

ExtremalSpec rearranged_translate(const ExtremalSpec& spec) {
    ExtremalSpec out = spec;
    out.centers = CenterPath::constant(spec.centers.xi_infinity);
    return out;
}

ExtremalSpec concentric_rearrangement(const ExtremalSpec& spec) {
    ExtremalSpec out = spec;
    out.centers = CenterPath::constant(Point{0.0, 0.0, 0.0});
    return out;
}

std::pair<ExtremalSpec, ExtremalSpec> split_at_height(const ExtremalSpec& spec,
                                                      double a) {
    if (a <= 0.0 || a >= spec.top())
        throw std::invalid_argument("split height must be interior");
    RadialProfile low, high;
    for (const auto& k : spec.profile.knots)
        if (k.t < a)
            low.knots.push_back(k);
    low.knots.push_back({a, spec.profile.left_radius_at(a)});
    high.knots.push_back({0.0, spec.profile.radius_at(a)});
    for (const auto& k : spec.profile.knots)
        if (k.t > a)
            high.knots.push_back({k.t - a, k.r, k.sc});

    CenterPath plow, phigh;
    for (size_t i = 0; i < spec.centers.heights.size(); ++i) {
        if (spec.centers.heights[i] < a) {
            plow.heights.push_back(spec.centers.heights[i]);
            plow.centers.push_back(spec.centers.centers[i]);
        }
    }
    phigh.heights.push_back(0.0);
    phigh.centers.push_back(spec.centers.at(a));
    for (size_t i = 0; i < spec.centers.heights.size(); ++i) {
        if (spec.centers.heights[i] > a) {
            phigh.heights.push_back(spec.centers.heights[i] - a);
            phigh.centers.push_back(spec.centers.centers[i]);
        }
    }
    return {build_extremal(spec.n, std::move(low), std::move(plow)),
            build_extremal(spec.n, std::move(high), std::move(phigh))};
}

GridField sample_grid(const ExtremalSpec& spec, int cells, double margin) {
    double reach = 0.0;
    for (const auto& c : spec.centers.centers)
        reach = std::max(reach, norm(c));
    const double half =
        (reach + spec.profile.support_radius()) * (1.0 + margin);
    Point lo{0.0, 0.0, 0.0}, hi{0.0, 0.0, 0.0};
    for (int k = 0; k < spec.n; ++k) {
        lo[k] = -half;
        hi[k] = half;
    }
    return field_from_function(
        spec.n, [&spec](const Point& x) { return eval_extremal(spec, x); },
        lo, hi, cells);
}

} // namespace pslab
