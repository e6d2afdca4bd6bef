#pragma once

#include "secantlab/cycles.hpp"
#include "secantlab/manifold_series.hpp"
#include "secantlab/model_map.hpp"
#include "secantlab/polyline.hpp"

namespace secantlab {

struct TracePolicy {
    double seed_radius = 1e-6;    // series/eigenvector seed extent
    double max_step = 0.004;      // resampling step bound
    double angle_bound = 0.1;     // max turning angle, radians
    double max_arclength = 100.0;
    double bisection_tol = 1e-12;

    void validate() const {
        if (!(seed_radius > 0 && max_step > 0 && angle_bound > 0 && max_arclength > 0))
            throw std::invalid_argument("TracePolicy: all fields must be positive");
        if (!(bisection_tol >= 1e-14))
            throw std::invalid_argument("TracePolicy: bisection_tol must be >= 1e-14");
    }
};

struct StableTrace {
    Polyline curve;  // stable manifold of the origin from (0,0) to (p,p)
    double p;        // diagonal crossing abscissa, 0 < p < R_d
};

/// Grow the stable manifold of the origin for even d (a = 1): seed on the
/// truncated series graph over (0, seed_radius], extend by the plus-branch
/// inverse with curvature-adaptive resampling, stop at the first crossing of
/// {x = y}.
StableTrace trace_stable_origin_even(int d, const TracePolicy& policy);

struct BoundaryAssembly {
    Polyline curve;  // closed boundary through (0,0), (p,p), (-p,p)
    double p;
    Point q;                        // slope-2 point of the primary arc
    Point q_plus, q_minus;          // its preimages: the two highest boundary points
    double tangent_angle_at_left;   // tangent angle at (-p,p), radians from horizontal
};

/// Closed basin boundary for even d: the two inverse-branch images of the
/// primary arc, glued at (0,0) and (-p,p).
BoundaryAssembly assemble_basin_boundary_even(int d, const TracePolicy& policy);

struct UnstableTrace {
    Polyline curve;      // unstable manifold of (0,1) down to the diagonal
    double p_hat;        // diagonal crossing abscissa (negative)
    double x0_crossing;  // first crossing of the x-axis, in (-1/2, -1/3)
};

/// Trace the unstable manifold of the two-cycle point (0,1) for odd d
/// (a = 1): seed along the unstable eigenvector at distance seed_radius,
/// iterate the double map, stop at the diagonal crossing.  A Richardson check
/// (seed halving) guards against a too-coarse seed.
UnstableTrace trace_unstable_two_cycle(int d, const TracePolicy& policy);

/// Locate a point of the stable set on the vertical line {x = x0} by
/// bisection with the exit-side classifier of the comparison region
/// (Omega for a = +1, D^0 for a = -1).  The returned point's double-map orbit
/// stays in the region for >= 20 steps and contracts: x_{2k} < lambda^k x0
/// with lambda = d^2/(1-2d)^2 for a = +1, x_{2k} <= x0 / 2^k for a = -1.
Point bracket_stable_point(int d, int a, double x0, const TracePolicy& policy);

}  // namespace secantlab
