#pragma once

#include <stdexcept>

namespace secantlab {

/// Stopping policy for orbit classification.  Defaults trade honesty for
/// speed in the documented way: the neutral center direction makes
/// convergence to the origin only polynomially fast, so Undecided is a
/// routine outcome near the basin boundary.
struct IterationPolicy {
    double eps_converge = 1e-8;
    int window = 5;
    double escape_radius = 1e6;
    int max_iter = 5000;

    void validate() const {
        if (!(eps_converge > 0 && eps_converge < 1))
            throw std::invalid_argument("IterationPolicy: need 0 < eps_converge < 1");
        if (!(escape_radius > 1))
            throw std::invalid_argument("IterationPolicy: need escape_radius > 1");
        if (window < 1 || max_iter < 1)
            throw std::invalid_argument("IterationPolicy: window and max_iter must be positive");
    }
};

}  // namespace secantlab
