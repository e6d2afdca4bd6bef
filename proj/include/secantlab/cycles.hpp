#pragma once

#include <utility>
#include <vector>

#include "secantlab/model_map.hpp"

namespace secantlab {

/// Closed-form eigendata of the hyperbolic two-cycle {(0,1), (0,-1)} of the
/// odd-degree map with a = 1.  Eigenvectors are (1, m).
struct CycleData {
    Point p0{0.0, 1.0};
    Point p1{0.0, -1.0};
    Mat2 multiplier{};      // D(T^2) at p0 (= at p1)
    double lambda_plus{};   // expanding eigenvalue
    double lambda_minus{};  // contracting eigenvalue
    double m_plus{};        // slope of the unstable eigenvector
    double m_minus{};       // slope of the stable eigenvector
};

/// d odd, d >= 3 (a = 1 implied).  Closed forms:
///   multiplier = ((3d^2-2d, 3d^2-4d+1), (6d^2-2d, 6d^2-6d+1))
///   lambda(+/-) = (9d^2-8d+1 +/- (3d-1) sqrt(9d^2-10d+1)) / 2
///   m(+/-)      = 4d / (1 - d +/- sqrt(9d^2-10d+1))
CycleData two_cycle_data(int d);

/// Max over i of || T(points[i]) - points[(i+1) mod period] ||.
double verify_periodic(const ModelParams& params, const std::vector<Point>& points);

/// Exact multiplier D(T^2)(p0) for canonical rational a (used by the
/// consistency checks against the closed forms).
RatMat2 two_cycle_multiplier_exact(int d);

}  // namespace secantlab
