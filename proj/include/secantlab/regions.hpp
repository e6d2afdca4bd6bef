#pragma once

#include <functional>
#include <string>
#include <vector>

#include "secantlab/geometry.hpp"
#include "secantlab/manifold_series.hpp"

namespace secantlab {

/// R_d = (1 - 1/d) (2d)^{-1/(d-1)}; the trapping-rectangle scale of the
/// even-degree analysis (R_2 = 1/8).
double trap_radius(int d);

struct Polygon {
    std::vector<Point> v;  // counterclockwise

    bool contains(Point p) const { return signed_distance(p) >= 0.0; }
    /// > 0 inside, < 0 outside, 0 on the boundary.
    double signed_distance(Point p) const;
    double perimeter() const;
    /// Arclength parametrization of the boundary, s in [0, perimeter).
    Point boundary_point(double s) const;
};

/// A named region: membership, signed distance, and (when bounded) an
/// arclength boundary parametrization.  Curve-bounded regions also expose
/// their parametric boundary curves.
struct Region {
    struct BoundaryCurve {
        std::string name;
        double t0, t1;
        std::function<Point(double)> at;
    };

    std::string name;
    std::function<bool(Point)> contains;
    std::function<double(Point)> signed_distance;  // may be empty for unbounded regions
    double boundary_length = 0.0;                  // 0 when no closed boundary is exposed
    std::function<Point(double)> boundary;
    std::vector<RatPoint> exact_vertices;  // where the paper gives rational vertices
    std::vector<BoundaryCurve> curves;
};

/// Hexagon Q_b (0 < b <= 1/2, odd d >= 3) with exact rational vertices
/// (2b^d,0), (2b^d,2b^d), (0,2b^d), (-b^d,0), (-b^d,-b^d), (0,-b^d).
Region make_qb(const Rat& b, int d);
Region make_qstar(int d);  // Q_{1/2}

/// Closed triangle (0,-1), (1/(m+ +1), -1/(m+ +1)), (1/(m*+1), -1/(m*+1)),
/// m* = 7/2 (odd d >= 3, a = 1).
Region make_triangle_d(int d);

/// Closed triangle (0,1), (-1/2,0), (-1/3,0).
Region make_triangle_e();

/// Trapping triangle {y <= x, y >= 0, x <= R_d}.
Region make_trap(int d);

/// Bounding box (-5R_d, R_d) x (0, 2R_d) united with the origin (d even).
Region make_box_k(int d);

/// Omega = T^{-1}(E_2) (odd d >= 3, a = 1); membership via forward mapping,
/// boundary curves are the preimages of the gamma curves.
Region make_omega(int d);

/// D^0 = T^{-2}(fourth quadrant) for a = -1, odd d >= 3; bounded by the
/// sigma_0 curves.
Region make_d0(int d);

/// Omega_0^+ = {(x,y) in trap : y >= phi^s(x), 0 <= x <= rho2} (d even);
/// rho2 = 0.9 min{ (1/2)(4d)^{-1/(d-1)}, abscissa of the slope-1/2 point }.
Region make_omega0_plus(int d, const ManifoldSeries& stable);

/// Dispatch by name: "Qb" (b, d), "Qstar" (d), "TriangleD" (d), "TriangleE",
/// "TrapT" (d), "BoxK" (d), "Omega" (d), "D0" (d), "Omega0Plus" (d).
Region build_region(const std::string& name, const Rat& b, int d);

namespace curves {

// Boundary curves of the unbounded-basin analysis (a = 1, d odd), as graphs
// x = f(y):
double gamma_plus_x(double y, int d);   // {y = (x+y)^d},      y >= 1
double gamma_minus_x(double y, int d);  // {y = -1 + 2(x+y)^d}, y >= 1
double sigma_minus_x(double y, int d);  // {y = (x+y)^d},      y <= -1
double sigma_plus_x(double y, int d);   // {y = 1 + 2(x+y)^d},  y <= -1

// Boundary curves of D^0 and D^1 (a = -1, d odd), parametrized by t >= 0:
Point sigma0_plus(double t, int d);   // T^{-2}(t, 0)
Point sigma0_minus(double t, int d);  // T^{-2}(0, -t)
Point sigma1_plus(double t, int d);   // (-2t - t^{1/d}, 2t)
Point sigma1_minus(double t, int d);  // (-t - t^{1/d}, t)

}  // namespace curves

}  // namespace secantlab
