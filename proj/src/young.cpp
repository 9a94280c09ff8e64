#include "pslab/young.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pslab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

YoungFunction YoungFunction::power(double exponent) {
    if (!(exponent >= 1.0))
        throw std::invalid_argument("power exponent below 1 is not convex");
    YoungFunction y;
    y.power_ = true;
    y.q_ = exponent;
    return y;
}

YoungFunction YoungFunction::piecewise_linear(
    std::vector<std::pair<double, double>> pts) {
    if (pts.size() < 2)
        throw std::invalid_argument("need at least two breakpoints");
    if (pts.front().first != 0.0 || pts.front().second != 0.0)
        throw std::invalid_argument("first breakpoint must be (0, 0)");
    YoungFunction y;
    y.power_ = false;
    double prev_slope = -1.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double dx = pts[i + 1].first - pts[i].first;
        const double dy = pts[i + 1].second - pts[i].second;
        if (dx <= 0.0)
            throw std::invalid_argument("breakpoints must be strictly increasing");
        if (dy < 0.0)
            throw std::invalid_argument("values must be nondecreasing");
        const double s = dy / dx;
        if (s < prev_slope - 1e-15)
            throw std::invalid_argument("breakpoints are not convex");
        prev_slope = s;
        y.xs_.push_back(pts[i].first);
        y.ys_.push_back(pts[i].second);
        y.slopes_.push_back(s);
    }
    y.xs_.push_back(pts.back().first);
    y.ys_.push_back(pts.back().second);
    return y;
}

double YoungFunction::value(double t) const {
    if (t < 0.0)
        throw std::invalid_argument("argument must be nonnegative");
    if (power_)
        return std::pow(t, q_);
    size_t i = 0;
    while (i + 1 < xs_.size() && xs_[i + 1] <= t)
        ++i;
    if (i + 1 == xs_.size()) // beyond the last breakpoint: extend final slope
        return ys_.back() + slopes_.back() * (t - xs_.back());
    return ys_[i] + slopes_[i] * (t - xs_[i]);
}

double YoungFunction::derivative(double t) const {
    if (t < 0.0)
        throw std::invalid_argument("argument must be nonnegative");
    if (power_) {
        if (q_ == 1.0)
            return 1.0;
        return q_ * std::pow(t, q_ - 1.0);
    }
    size_t i = 0;
    while (i + 1 < xs_.size() && xs_[i + 1] <= t)
        ++i;
    if (i + 1 == xs_.size())
        return slopes_.back();
    return slopes_[i];
}

double YoungFunction::slope_at_infinity() const {
    if (power_)
        return q_ == 1.0 ? 1.0 : kInf;
    return slopes_.back();
}

bool YoungFunction::strictly_increasing() const {
    if (power_)
        return true;
    for (double s : slopes_)
        if (s <= 0.0)
            return false;
    return true;
}

bool YoungFunction::derivative_vanishes_at_zero() const {
    if (power_)
        return q_ > 1.0;
    return slopes_.front() == 0.0;
}

std::vector<std::pair<double, double>> YoungFunction::affine_intervals() const {
    std::vector<std::pair<double, double>> out;
    if (power_) {
        if (q_ == 1.0)
            out.emplace_back(0.0, kInf);
        return out;
    }
    size_t i = 0;
    const size_t nseg = slopes_.size();
    while (i < nseg) {
        size_t j = i;
        while (j + 1 < nseg && slopes_[j + 1] == slopes_[i])
            ++j;
        const double lo = xs_[i];
        const double hi = (j + 1 < xs_.size() && j + 1 < nseg) ? xs_[j + 1] : kInf;
        out.emplace_back(lo, j + 1 == nseg ? kInf : hi);
        i = j + 1;
    }
    return out;
}

bool YoungFunction::affine_at(double s) const {
    for (const auto& [lo, hi] : affine_intervals())
        if (s > lo && s < hi)
            return true;
    return false;
}

std::vector<std::pair<double, double>> YoungFunction::curvature_atoms() const {
    std::vector<std::pair<double, double>> out;
    if (power_)
        return out;
    for (size_t i = 1; i < slopes_.size(); ++i) {
        const double jump = slopes_[i] - slopes_[i - 1];
        if (jump > 0.0)
            out.emplace_back(xs_[i], jump);
    }
    return out;
}

std::vector<std::pair<double, double>> YoungFunction::breakpoints() const {
    std::vector<std::pair<double, double>> out;
    if (power_)
        return out;
    for (size_t i = 0; i < xs_.size(); ++i)
        out.emplace_back(xs_[i], ys_[i]);
    return out;
}

std::string YoungFunction::describe() const {
    if (power_)
        return "power:" + std::to_string(q_);
    return "piecewise-linear:" + std::to_string(xs_.size()) + "pts";
}

} // namespace pslab
