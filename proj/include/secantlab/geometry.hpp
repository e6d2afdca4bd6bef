#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "secantlab/rational.hpp"

namespace secantlab {

template <class T>
struct Vec2 {
    T x{};
    T y{};
};

using Point = Vec2<double>;
using RatPoint = Vec2<Rat>;

inline bool finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double norm2(const Point& p) { return std::hypot(p.x, p.y); }
inline double norm_inf(const Point& p) { return std::max(std::abs(p.x), std::abs(p.y)); }

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

inline double dist(Point a, Point b) { return norm2(a - b); }

/// 2x2 real matrix, row major.
struct Mat2 {
    double m11{}, m12{}, m21{}, m22{};

    double det() const { return m11 * m22 - m12 * m21; }
    double trace() const { return m11 + m22; }
    Point apply(Point v) const { return {m11 * v.x + m12 * v.y, m21 * v.x + m22 * v.y}; }
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

/// Magnitude past which an orbit counts as blown up (numeric stand-in for the
/// points at infinity of the critical cycle).
inline constexpr double kBlowupMagnitude = 1e12;

/// A phase point plus a blow-up tag.  `finite` is true iff both coordinates
/// are representable and below kBlowupMagnitude; once an orbit crosses that
/// threshold the step index and the last finite iterate are recorded.  The
/// raw value `p` is still carried as computed (it may be huge or non-finite).
struct ExtendedPoint {
    Point p{};
    bool finite = true;
    int step = 0;           // step at which blow-up was first detected
    Point last_finite{};    // last iterate with both coordinates below the bound

    static ExtendedPoint at(Point q) { return {q, true, 0, q}; }
};

inline bool below_blowup(const Point& p) {
    return finite(p) && std::abs(p.x) <= kBlowupMagnitude && std::abs(p.y) <= kBlowupMagnitude;
}

/// Real d-th root: sign(v)*|v|^{1/d} for odd d, principal root for even d
/// (v >= 0 required).  One Newton polish keeps the result within ~1 ulp even
/// for d where 1.0/d is not exactly representable.
double nth_root(double v, int d);

}  // namespace secantlab
