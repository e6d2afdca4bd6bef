#pragma once

#include <stdexcept>

#include "secantlab/geometry.hpp"
#include "secantlab/rational.hpp"

namespace secantlab {

/// Parameters (a, d) of the planar model map
///     T_{a,d}(x, y) = (y - a (x+y)^d,  y - 2 a (x+y)^d),
/// the dominant part of the third iterate of the secant map near a critical
/// point.  a != 0, d >= 2; behavior branches on the parity of d.
class ModelParams {
public:
    ModelParams(double a, int d) : a_(a), d_(d), odd_(d % 2 != 0) {
        if (a == 0.0 || !std::isfinite(a)) throw std::invalid_argument("ModelParams: a must be finite and nonzero");
        if (d < 2) throw std::invalid_argument("ModelParams: d must be >= 2");
    }

    double a() const { return a_; }
    int d() const { return d_; }
    bool odd() const { return odd_; }

private:
    double a_;
    int d_;
    bool odd_;
};

enum class Branch { Plus, Minus };

/// Core formula, shared by the double and exact-rational paths.  The computed
/// power a*(x+y)^d is reused in both components, which makes the range
/// property (x' >= y' for a > 0, d even) exact in floating point as well.
template <class S, class A>
Vec2<S> model_eval(const A& a, int d, const Vec2<S>& p) {
    S s = p.x + p.y;
    S w = s;
    for (int i = 1; i < d; ++i) w *= s;
    w *= a;
    return {p.y - w, p.y - S(2) * w};
}

template <class S, class A>
Vec2<S> model_jacobian_rows(const A& a, int d, const Vec2<S>& p, Vec2<S>& row2) {
    S s = p.x + p.y;
    S w = s;
    for (int i = 2; i < d; ++i) w *= s;  // s^(d-1)
    S g = S(d) * a * w;
    row2 = {S(-2) * g, S(1) - S(2) * g};
    return {-g, S(1) - g};
}

/// T_{a,d}(p); throws on non-finite input, signals overflow by exception.
Point eval(const ModelParams& params, Point p);

/// Same formula without validation; may return non-finite values.
inline Point eval_raw(const ModelParams& params, Point p) {
    return model_eval<double>(params.a(), params.d(), p);
}

RatPoint eval_exact(const Rat& a, int d, const RatPoint& p);

/// k-fold composition of eval; k = 0 is the identity.  An orbit that leaves
/// the representable range (or kBlowupMagnitude) comes back tagged with the
/// step index and the last finite iterate.
ExtendedPoint iterate(const ModelParams& params, Point p, int k);

/// Inverse branch of T_{a,d}.  Canonical a in {+1,-1} is solved directly; any
/// other a is routed through the rescaling conjugacy of canonicalize().
/// d even: defined on {x >= y}, Plus lands in {x >= -y}, Minus in {x <= -y}.
/// d odd: single inverse (branch must be Plus).
Point inverse(const ModelParams& params, Point p, Branch branch);

Mat2 jacobian(const ModelParams& params, Point p);

struct RatMat2 {
    Rat m11, m12, m21, m22;
};
RatMat2 jacobian_exact(const Rat& a, int d, const RatPoint& p);

/// mu with T_{a1,d}(mu x, mu y) = mu T_{a2,d}(x, y); mu = (a2/a1)^{1/(d-1)}.
/// For odd d this requires a1*a2 > 0 (no real conjugacy otherwise).
double conjugacy_scale(double a1, double a2, int d);

struct Canonical {
    int sign;   // +1 or -1; the canonical parameter value
    double mu;  // a * mu^(d-1) = sign
};

/// Reduce (a, d) to the canonical parameter: a = +1 when d is even (mu may be
/// negative), a = sign(a) when d is odd.
Canonical canonicalize(const ModelParams& params);

}  // namespace secantlab
