#pragma once

#include <array>
#include <cmath>

namespace pslab {

using Point = std::array<double, 3>;

inline Point add(const Point& a, const Point& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Point sub(const Point& a, const Point& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Point scale(const Point& a, double s) {
    return {a[0] * s, a[1] * s, a[2] * s};
}

inline double norm(const Point& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

inline double dist(const Point& a, const Point& b) {
    return norm(sub(a, b));
}

} // namespace pslab
