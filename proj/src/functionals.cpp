#include "pslab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pslab/geometry.hpp"
#include "pslab/quadrature.hpp"

namespace pslab {

namespace {

void check_same_grid(const GridField& u, const GridField& v) {
    if (u.n != v.n || u.dims != v.dims || u.h != v.h ||
        u.origin[0] != v.origin[0] || u.origin[1] != v.origin[1] ||
        u.origin[2] != v.origin[2])
        throw std::invalid_argument("incompatible grids");
}

void check_same_dim(const ExtremalSpec& a, const ExtremalSpec& b) {
    if (a.n != b.n)
        throw std::invalid_argument("dimension mismatch");
}

double bounding_radius(const ExtremalSpec& s) {
    double c = 0.0;
    for (const auto& p : s.centers.centers)
        c = std::max(c, norm(p));
    return c + s.profile.support_radius();
}

// lambda({P > t} \ {Q > h}); h < 0 means the Q set is everything.
double level_difference(const ExtremalSpec& P, const ExtremalSpec& Q, double t,
                        double h) {
    if (h < 0.0)
        return 0.0;
    const double rp = P.profile.radius_at(t);
    if (rp <= 0.0)
        return 0.0;
    const double fp = ball_volume(P.n, rp);
    const double rq = Q.profile.radius_at(h);
    if (rq <= 0.0)
        return fp;
    const double d = dist(P.centers.at(t), Q.centers.at(h));
    return fp - ball_intersection_volume(P.n, rp, rq, d);
}

std::vector<double> knot_heights(const ExtremalSpec& a, const ExtremalSpec& b,
                                 double lo, double hi) {
    std::vector<double> pts{lo, hi};
    for (const auto* s : {&a, &b})
        for (const auto& k : s->profile.knots)
            if (k.t > lo && k.t < hi)
                pts.push_back(k.t);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace

double dirichlet_functional(const GridField& u, const YoungFunction& phi) {
    const auto g = gradient_magnitude(u);
    double total = 0.0;
    for (double gi : g)
        total += phi(gi);
    return total * u.cell_volume();
}

double dirichlet_functional(const ExtremalSpec& spec,
                            const YoungFunction& phi) {
    const auto st = extremal_exact_stats(spec);
    double total = 0.0;
    for (const auto& seg : spec.profile.segments()) {
        if (seg.flat())
            continue;
        const double mass =
            st.omega * (std::pow(seg.r0, spec.n) - std::pow(seg.r1, spec.n));
        total += phi(1.0 / std::abs(seg.slope())) * mass;
    }
    if (st.singular_variation > 0.0) {
        const double slope = phi.slope_at_infinity();
        if (std::isinf(slope))
            throw std::runtime_error("functional infinite");
        total += slope * st.singular_variation;
    }
    return total;
}

double psi_distance(const GridField& u, const GridField& v,
                    const YoungFunction& psi) {
    check_same_grid(u, v);
    double total = 0.0;
    for (size_t i = 0; i < u.values.size(); ++i)
        total += psi(std::abs(u.values[i] - v.values[i]));
    return total * u.cell_volume();
}

double psi_distance(const ExtremalSpec& a, const ExtremalSpec& b,
                    const YoungFunction& psi) {
    check_same_dim(a, b);
    const double L = std::max(bounding_radius(a), bounding_radius(b));
    const auto f = [&](const Point& x) {
        return psi(std::abs(eval_extremal(a, x) - eval_extremal(b, x)));
    };
    if (a.n == 1)
        return integrate([&](double x) { return f(Point{x, 0.0, 0.0}); }, -L,
                         L, 1e-10)
            .value;
    if (a.n == 2) {
        const auto row = [&](double y) {
            return integrate([&](double x) { return f(Point{x, y, 0.0}); },
                             -L, L, 1e-9)
                .value;
        };
        return integrate(row, -L, L, 1e-8).value;
    }
    const auto slab = [&](double z) {
        const auto row = [&](double y) {
            return integrate([&](double x) { return f(Point{x, y, z}); }, -L,
                             L, 1e-6, 1e-9, 400)
                .value;
        };
        return integrate(row, -L, L, 1e-5, 1e-9, 400).value;
    };
    return integrate(slab, -L, L, 1e-5, 1e-9, 400).value;
}

OracleValue psi1_oracle(const GridField& u, const GridField& v,
                        const YoungFunction& psi, int levels) {
    check_same_grid(u, v);
    if (!psi.derivative_vanishes_at_zero())
        throw std::invalid_argument(
            "level-set identity needs a flat start: Psi'(0) must be 0");
    if (levels < 2)
        throw std::invalid_argument("need at least 2 quantization levels");

    const double top = std::max(u.max_value(), v.max_value());
    if (top == 0.0)
        return {0.0, 0.0};
    const int K = levels;
    const double delta = top / K;

    // Joint suffix-sum table M[a][b] = lambda({u >= a*delta, v >= b*delta})
    // on the quantized value lattice.
    const size_t W = size_t(K) + 2;
    std::vector<double> M(W * W, 0.0);
    const auto idx = [&](int a, int b) { return size_t(a) * W + size_t(b); };
    const auto quant = [&](double x) {
        return std::min(K, int(std::floor(x / delta)));
    };
    for (size_t i = 0; i < u.values.size(); ++i)
        M[idx(quant(u.values[i]), quant(v.values[i]))] += 1.0;
    for (int a = K; a >= 0; --a)
        for (int b = K; b >= 0; --b)
            M[idx(a, b)] += M[idx(a + 1, b)] + M[idx(a, b + 1)] -
                            M[idx(a + 1, b + 1)];
    const double cell = u.cell_volume();

    // For quantized fields the double integral collapses to a sum over
    // the band offset d: the (s, t)-mass of each band is the second
    // difference of Psi on the lattice.
    const auto psi_at = [&](int k) { return k <= 0 ? 0.0 : psi(k * delta); };
    double value = 0.0;
    for (int d = 0; d <= K; ++d) {
        const double w = psi_at(d + 1) - 2.0 * psi_at(d) + psi_at(d - 1);
        if (w == 0.0)
            continue;
        double count = 0.0;
        for (int i = d; i <= K; ++i) {
            const int a = i + 1, b = i - d + 1;
            count += M[idx(a, 0)] - M[idx(a, b)] + M[idx(0, a)] - M[idx(b, a)];
        }
        value += w * count;
    }
    value *= cell;

    // Quantization moves each |u - v| by less than 2*delta.
    double support = 0.0;
    for (size_t i = 0; i < u.values.size(); ++i)
        if (u.values[i] != v.values[i])
            support += cell;
    const double tol = 2.0 * delta * psi.derivative(top) * support;
    return {value, tol};
}

OracleValue psi1_oracle(const ExtremalSpec& a, const ExtremalSpec& b,
                        const YoungFunction& psi) {
    check_same_dim(a, b);
    if (!psi.derivative_vanishes_at_zero())
        throw std::invalid_argument(
            "level-set identity needs a flat start: Psi'(0) must be 0");

    const double T = std::max(a.top(), b.top());
    const auto g = [&](double t, double s) {
        return level_difference(a, b, t, t - s) +
               level_difference(b, a, t, t - s);
    };

    double value = 0.0, tol = 0.0;
    for (const auto& atom : psi.curvature_atoms()) {
        const double s = atom.first;
        if (s >= T)
            continue;
        // g(., s) kinks at the knot heights of a and at those of b
        // shifted by s.
        std::vector<double> pts{0.0, T};
        for (const auto& k : a.profile.knots)
            if (k.t > 0.0 && k.t < T)
                pts.push_back(k.t);
        for (const auto& k : b.profile.knots)
            if (k.t + s > 0.0 && k.t + s < T)
                pts.push_back(k.t + s);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            const auto q = integrate([&](double t) { return g(t, s); },
                                     pts[i], pts[i + 1], 1e-10);
            value += atom.second * q.value;
            tol += atom.second * q.error;
        }
    }
    if (psi.is_power()) {
        const double q = psi.exponent();
        const double c = q * (q - 1.0);
        if (c > 0.0) {
            const auto inner = [&](double t) {
                // In s, kinks sit where t - s crosses a knot of b.
                std::vector<double> cuts{0.0, t};
                for (const auto& k : b.profile.knots)
                    if (t - k.t > 0.0 && t - k.t < t)
                        cuts.push_back(t - k.t);
                std::sort(cuts.begin(), cuts.end());
                cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
                double acc = 0.0;
                for (size_t i = 0; i + 1 < cuts.size(); ++i)
                    acc += integrate(
                               [&](double s) {
                                   return c * std::pow(s, q - 2.0) * g(t, s);
                               },
                               cuts[i], cuts[i + 1], 1e-10)
                               .value;
                return acc;
            };
            const auto pts = knot_heights(a, b, 0.0, T);
            for (size_t i = 0; i + 1 < pts.size(); ++i) {
                const auto r = integrate(inner, pts[i], pts[i + 1], 1e-8);
                value += r.value;
                tol += r.error;
            }
        }
    }
    return {value, tol};
}

double psi2_bound(const GridField& u, const GridField& v,
                  const YoungFunction& psi) {
    check_same_grid(u, v);
    // Each cell lies in the level symmetric difference exactly for
    // t between min(u, v) and max(u, v); the integral of Psi' there
    // telescopes, so this evaluation is exact.
    double total = 0.0;
    for (size_t i = 0; i < u.values.size(); ++i) {
        const double lo = std::min(u.values[i], v.values[i]);
        const double hi = std::max(u.values[i], v.values[i]);
        total += psi(hi) - psi(lo);
    }
    return total * u.cell_volume();
}

double psi2_bound(const ExtremalSpec& a, const ExtremalSpec& b,
                  const YoungFunction& psi) {
    check_same_dim(a, b);
    const double T = std::max(a.top(), b.top());
    const auto symdiff = [&](double t) {
        const double ra = a.profile.radius_at(t);
        const double rb = b.profile.radius_at(t);
        const double fa = ra > 0.0 ? ball_volume(a.n, ra) : 0.0;
        const double fb = rb > 0.0 ? ball_volume(a.n, rb) : 0.0;
        if (ra <= 0.0 || rb <= 0.0)
            return fa + fb;
        const double d = dist(a.centers.at(t), b.centers.at(t));
        return fa + fb - 2.0 * ball_intersection_volume(a.n, ra, rb, d);
    };
    auto pts = knot_heights(a, b, 0.0, T);
    for (const auto& atom : psi.curvature_atoms())
        if (atom.first > 0.0 && atom.first < T)
            pts.push_back(atom.first);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate(
                     [&](double t) { return symdiff(t) * psi.derivative(t); },
                     pts[i], pts[i + 1], 1e-10)
                     .value;
    return total;
}

} // namespace pslab
