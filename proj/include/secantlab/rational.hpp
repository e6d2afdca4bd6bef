#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace secantlab {

/// Exact rational scalar used everywhere an operation promises exactness.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parse "p", "p/q" or a plain decimal like "1.25" into an exact rational.
Rat parse_rational(const std::string& text);

/// Exact value of a finite double (every finite double is a dyadic rational).
Rat rat_from_double(double x);

Rat pow_rat(const Rat& base, long exp);

inline double to_double(const Rat& q) { return q.get_d(); }

inline std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace secantlab
