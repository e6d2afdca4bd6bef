#include "secantlab/geometry.hpp"

namespace secantlab {

double nth_root(double v, int d) {
    if (d <= 0) throw std::invalid_argument("nth_root: d must be positive");
    if (d == 1) return v;
    if (v == 0.0) return 0.0;
    if (d % 2 == 0 && v < 0.0)
        throw std::domain_error("nth_root: even root of a negative number");
    double mag = std::abs(v);
    double r;
    if (d == 2)
        r = std::sqrt(mag);
    else if (d == 3)
        r = std::cbrt(mag);
    else
        r = std::pow(mag, 1.0 / d);
    if (std::isfinite(r) && r > 0.0) {
        // one Newton step on r^d - mag = 0
        double rd1 = std::pow(r, d - 1);
        double f = rd1 * r - mag;
        if (std::isfinite(rd1) && std::isfinite(f)) r -= f / (d * rd1);
    }
    return v < 0.0 ? -r : r;
}

}  // namespace secantlab
