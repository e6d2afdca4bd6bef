#pragma once

#include <iosfwd>
#include <optional>

#include "secantlab/model_map.hpp"
#include "secantlab/power_series.hpp"

namespace secantlab {

enum class ManifoldKind { Stable, Center };

/// Bracketed radius-of-convergence estimate from the coefficient ratio test.
struct RadiusEstimate {
    double lower{};
    double point_estimate{};
    double upper{};
};

/// Result of solving the graph invariance equation
///     phi(first component of T(x, phi(x))) = second component of T(x, phi(x))
/// order by order.  Coefficients are exact; phi(0) = 0 and phi'(0) is 0 for
/// the stable graph, 1 for the center graph.
struct ManifoldSeries {
    int canonical_a;  // +1 or -1
    int d;
    ManifoldKind kind;
    RatSeries phi;                          // the graph y = phi(x)
    RatSeries induced;                      // R(x) = first component of T(x, phi(x))
    std::optional<RadiusEstimate> radius{}; // attached by estimate_radius when requested
};

/// Order-by-order solver (exact rationals, one linear equation per order).
/// Requires canonical a in {+1,-1}; a = -1 only with odd d; N >= d.
ManifoldSeries solve_invariant(int canonical_a, int d, ManifoldKind kind, int order);

/// Independent cross-check: the literal published recurrence for the stable
/// manifold coefficients at a = 1, recomputed with the generic series ring.
RatSeries stable_series_recurrence(int d, int order);

/// R(x) as a series to the same order (identical to the solver byproduct,
/// recomputed through the generic ring from an already-solved graph).
RatSeries induced_dynamics(int canonical_a, int d, const RatSeries& phi);

/// Ratio test on the nonzero-coefficient subsequence with Aitken
/// acceleration; needs at least 50 nonzero coefficients.
RadiusEstimate estimate_radius(const RatSeries& series);

struct SeriesValue {
    double value;
    double tail_bound;
};

/// Horner evaluation in double precision with a geometric tail majorant.
/// When a radius estimate is attached, |x| must stay below 0.9 * point_estimate.
SeriesValue eval_series(const RatSeries& series, double x,
                        const std::optional<RadiusEstimate>& radius = std::nullopt);

/// One row per order: n, numerator, denominator, float value.
void write_series_csv(std::ostream& os, const RatSeries& series);

}  // namespace secantlab
