#pragma once

#include <string>
#include <utility>
#include <vector>

#include "secantlab/basin.hpp"
#include "secantlab/model_map.hpp"
#include "secantlab/regions.hpp"

namespace secantlab {

/// Numerical certificate for one claim: sampled, reproducible, pass iff the
/// worst margin is strictly positive.
struct Certificate {
    std::string claim_id;
    bool pass = false;
    long samples = 0;
    double worst_margin = 0.0;
    Point worst_point{};
    unsigned seed = 0;
    std::vector<std::pair<std::string, std::string>> extras;

    /// Plain-text report, one `key: value` per line, ending with PASS/FAIL.
    std::string report() const;
};

/// Halton low-discrepancy sequence (bases 2 and 3) with a seed offset.
struct QuasiSampler {
    unsigned seed;
    Point at(long i) const;
};

/// Sample the region boundary arclength-uniformly, map each point by the
/// model map, and certify that every image lies inside with signed distance
/// above `margin` (worst_margin = min distance - margin).
Certificate check_forward_invariance(const ModelParams& params, const Region& region,
                                     long samples, double margin, int workers = 1);

enum class PointwiseClaim {
    MonotoneLiftOnE,            // second component of the double-map inverse rises on E
    SigmaPlusBelowAntidiagonal, // sigma_1^+ lies below {y = -x}
    GammaCurvesMonotone,        // the gamma/sigma boundary graphs are decreasing
};

Certificate check_pointwise_inequality(int d, PointwiseClaim claim, long samples,
                                       unsigned seed = 1);

/// Double-step contraction on Omega (a=+1, factor lambda = d^2/(1-2d)^2) or
/// D^0 (a=-1, factor 1/2), with the image landing in the required region.
Certificate check_contraction(int d, int a, long samples, unsigned seed = 1);

/// Every Converged pixel center lies in the region.
Certificate check_raster_bound(const BasinRaster& raster, const Region& region);

}  // namespace secantlab
