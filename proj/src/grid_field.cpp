#include "pslab/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pslab {

double GridField::cell_volume() const {
    double v = 1.0;
    for (int k = 0; k < n; ++k)
        v *= h;
    return v;
}

Point GridField::cell_center(long flat) const {
    const int i = int(flat % dims[0]);
    const int j = int((flat / dims[0]) % dims[1]);
    const int k = int(flat / (long(dims[0]) * dims[1]));
    Point p{0.0, 0.0, 0.0};
    const int idx[3] = {i, j, k};
    for (int a = 0; a < n; ++a)
        p[a] = origin[a] + (idx[a] + 0.5) * h;
    return p;
}

double GridField::max_value() const {
    double m = 0.0;
    for (double v : values)
        m = std::max(m, v);
    return m;
}

void GridField::validate() const {
    if (n < 1 || n > 3)
        throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (h <= 0.0)
        throw std::invalid_argument("spacing must be positive");
    for (int a = 0; a < n; ++a)
        if (dims[a] < 3)
            throw std::invalid_argument("need at least 3 cells per axis");
    for (int a = n; a < 3; ++a)
        if (dims[a] != 1)
            throw std::invalid_argument("unused axes must have extent 1");
    if (long(values.size()) != size())
        throw std::invalid_argument("value count does not match dims");
    for (double v : values) {
        if (!(v >= 0.0))
            throw std::invalid_argument("negative or NaN sample");
    }
    for (long f = 0; f < size(); ++f) {
        const int i = int(f % dims[0]);
        const int j = int((f / dims[0]) % dims[1]);
        const int k = int(f / (long(dims[0]) * dims[1]));
        const int idx[3] = {i, j, k};
        bool boundary = false;
        for (int a = 0; a < n; ++a)
            boundary = boundary || idx[a] == 0 || idx[a] == dims[a] - 1;
        if (boundary && values[f] != 0.0)
            throw std::invalid_argument("support touches the grid boundary");
    }
}

GridField field_from_function(int n, const std::function<double(const Point&)>& f,
                              const Point& lo, const Point& hi, int cells) {
    if (cells < 3)
        throw std::invalid_argument("need at least 3 cells per axis");
    GridField g;
    g.n = n;
    g.origin = lo;
    g.h = (hi[0] - lo[0]) / cells;
    if (g.h <= 0.0)
        throw std::invalid_argument("box must have positive extent");
    g.dims = {1, 1, 1};
    for (int a = 0; a < n; ++a) {
        g.dims[a] = (a == 0) ? cells
                             : int(std::lround((hi[a] - lo[a]) / g.h));
        if (g.dims[a] < 3)
            throw std::invalid_argument("need at least 3 cells per axis");
    }
    g.values.resize(g.size());
    for (long i = 0; i < g.size(); ++i)
        g.values[i] = f(g.cell_center(i));
    g.validate();
    return g;
}

double lq_norm(const GridField& u, double q) {
    if (q < 1.0)
        throw std::invalid_argument("q must be at least 1");
    double s = 0.0;
    for (double v : u.values)
        if (v > 0.0)
            s += std::pow(v, q);
    return std::pow(s * u.cell_volume(), 1.0 / q);
}

std::vector<double> gradient_magnitude(const GridField& u) {
    std::vector<double> out(u.values.size(), 0.0);
    const long nx = u.dims[0];
    const long nxy = long(u.dims[0]) * u.dims[1];
    const long strides[3] = {1, nx, nxy};
    for (long f = 0; f < u.size(); ++f) {
        const int i = int(f % u.dims[0]);
        const int j = int((f / u.dims[0]) % u.dims[1]);
        const int k = int(f / nxy);
        const int idx[3] = {i, j, k};
        const double v = u.values[f];
        double acc = 0.0;
        for (int a = 0; a < u.n; ++a) {
            const double vm = idx[a] > 0 ? u.values[f - strides[a]] : 0.0;
            const double vp =
                idx[a] < u.dims[a] - 1 ? u.values[f + strides[a]] : 0.0;
            double d;
            if (v == 0.0) {
                d = (vm > 0.0 && vp > 0.0) ? (vp - vm) / (2.0 * u.h) : 0.0;
            } else if (vm == 0.0 && vp == 0.0) {
                d = v / u.h; // isolated slab, one-sided
            } else if (vm == 0.0) {
                d = (vp - v) / u.h;
            } else if (vp == 0.0) {
                d = (v - vm) / u.h;
            } else {
                d = (vp - vm) / (2.0 * u.h);
            }
            acc += d * d;
        }
        out[f] = std::sqrt(acc);
    }
    return out;
}

double gradient_norm_lp(const GridField& u, double p) {
    if (p < 1.0)
        throw std::invalid_argument("p must be at least 1");
    const auto g = gradient_magnitude(u);
    double s = 0.0;
    for (double v : g)
        if (v > 0.0)
            s += std::pow(v, p);
    return std::pow(s * u.cell_volume(), 1.0 / p);
}

std::vector<double> default_thresholds(const GridField& u, int count) {
    if (count < 1)
        throw std::invalid_argument("need at least one threshold");
    const double m = u.max_value();
    if (m <= 0.0)
        return {1.0};
    std::vector<double> t(count);
    for (int i = 0; i < count; ++i)
        t[i] = m * double(i + 1) / count;
    return t;
}

namespace {

// Measure of {u > t} from a descending-sorted copy of the samples.
double level_measure(const std::vector<double>& desc, double t, double cell) {
    const auto it = std::lower_bound(desc.begin(), desc.end(), t,
                                     [](double a, double b) { return a > b; });
    return double(it - desc.begin()) * cell;
}

} // namespace

DistFn distribution_function(const GridField& u,
                             const std::vector<double>& thresholds) {
    if (thresholds.empty())
        throw std::invalid_argument("threshold grid is empty");
    for (size_t i = 0; i < thresholds.size(); ++i) {
        if (thresholds[i] <= 0.0)
            throw std::invalid_argument("thresholds must be positive");
        if (i > 0 && thresholds[i] <= thresholds[i - 1])
            throw std::invalid_argument("thresholds must be strictly increasing");
    }
    std::vector<double> desc = u.values;
    std::sort(desc.begin(), desc.end(), std::greater<double>());
    DistFn F;
    F.n = u.n;
    F.thresholds = thresholds;
    F.values.resize(thresholds.size());
    const double cell = u.cell_volume();
    for (size_t i = 0; i < thresholds.size(); ++i)
        F.values[i] = level_measure(desc, thresholds[i], cell);
    F.provenance = Provenance::empirical;
    F.ess_sup = u.max_value();
    F.support_measure = level_measure(desc, 0.0, cell);
    return F;
}

double DistFn::at(double t) const {
    if (exact_eval)
        return exact_eval(t);
    if (thresholds.empty())
        return 0.0;
    if (t < thresholds.front())
        return support_measure;
    const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), t);
    return values[size_t(it - thresholds.begin()) - 1];
}

PsiIntegralResult psi_integral(const GridField& u, const YoungFunction& psi,
                               int levels, double rel_tol) {
    if (levels < 8)
        throw std::invalid_argument("too few layer-cake levels");
    PsiIntegralResult r;
    r.tolerance = rel_tol;
    const double cell = u.cell_volume();
    for (double v : u.values)
        if (v > 0.0)
            r.direct += psi.value(v);
    r.direct *= cell;

    const double m = u.max_value();
    if (m <= 0.0)
        return r;
    std::vector<double> desc = u.values;
    std::sort(desc.begin(), desc.end(), std::greater<double>());
    double lc = 0.0;
    double prev_psi = psi.value(0.0);
    for (int j = 0; j < levels; ++j) {
        const double t1 = m * double(j + 1) / levels;
        const double tm = m * (j + 0.5) / levels;
        const double next_psi = psi.value(t1);
        lc += level_measure(desc, tm, cell) * (next_psi - prev_psi);
        prev_psi = next_psi;
    }
    r.layer_cake = lc;
    const double scale = std::max(std::abs(r.direct), std::abs(lc));
    if (std::abs(r.direct - lc) > std::max(rel_tol * scale, 1e-12))
        throw std::runtime_error("layer-cake route disagrees with direct sum");
    return r;
}

} // namespace pslab
