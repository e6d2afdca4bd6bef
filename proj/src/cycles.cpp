#include "secantlab/cycles.hpp"

#include <cmath>

namespace secantlab {

CycleData two_cycle_data(int d) {
    if (d < 3 || d % 2 == 0)
        throw std::domain_error("two_cycle_data: requires odd d >= 3");
    CycleData out;
    const double dd = d;
    out.multiplier = {3 * dd * dd - 2 * dd, 3 * dd * dd - 4 * dd + 1,
                      6 * dd * dd - 2 * dd, 6 * dd * dd - 6 * dd + 1};
    const double disc = std::sqrt(9 * dd * dd - 10 * dd + 1);
    out.lambda_plus = 0.5 * (9 * dd * dd - 8 * dd + 1 + (3 * dd - 1) * disc);
    // lambda+ * lambda- = det = d^2; the quotient avoids the cancellation in
    // the closed form of lambda- for large d.
    out.lambda_minus = dd * dd / out.lambda_plus;
    out.m_plus = 4 * dd / (1 - dd + disc);
    out.m_minus = 4 * dd / (1 - dd - disc);
    return out;
}

double verify_periodic(const ModelParams& params, const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("verify_periodic: empty orbit");
    double worst = 0.0;
    const std::size_t period = points.size();
    for (std::size_t i = 0; i < period; ++i) {
        Point image = eval(params, points[i]);
        worst = std::max(worst, dist(image, points[(i + 1) % period]));
    }
    return worst;
}

RatMat2 two_cycle_multiplier_exact(int d) {
    if (d < 3 || d % 2 == 0)
        throw std::domain_error("two_cycle_multiplier_exact: requires odd d >= 3");
    RatPoint p0{Rat(0), Rat(1)};
    RatPoint p1{Rat(0), Rat(-1)};
    RatMat2 a = jacobian_exact(Rat(1), d, p0);
    RatMat2 b = jacobian_exact(Rat(1), d, p1);
    // chain rule: D(T^2)(p0) = DT(p1) DT(p0)
    return {b.m11 * a.m11 + b.m12 * a.m21, b.m11 * a.m12 + b.m12 * a.m22,
            b.m21 * a.m11 + b.m22 * a.m21, b.m21 * a.m12 + b.m22 * a.m22};
}

}  // namespace secantlab
