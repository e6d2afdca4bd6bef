#include "secantlab/model_map.hpp"

namespace secantlab {

Point eval(const ModelParams& params, Point p) {
    if (!finite(p)) throw std::invalid_argument("eval: point must be finite");
    Point q = eval_raw(params, p);
    if (!finite(q)) throw std::overflow_error("eval: overflow to non-finite value");
    return q;
}

RatPoint eval_exact(const Rat& a, int d, const RatPoint& p) {
    if (a == 0 || d < 2) throw std::invalid_argument("eval_exact: bad parameters");
    return model_eval<Rat>(a, d, p);
}

ExtendedPoint iterate(const ModelParams& params, Point p, int k) {
    if (k < 0) throw std::invalid_argument("iterate: k must be nonnegative");
    if (!finite(p)) throw std::invalid_argument("iterate: point must be finite");
    ExtendedPoint cur = ExtendedPoint::at(p);
    for (int i = 0; i < k; ++i) {
        Point next = eval_raw(params, cur.p);
        if (!below_blowup(next)) return {next, false, i + 1, cur.p};
        cur.p = next;
        cur.last_finite = next;
        cur.step = i + 1;
    }
    return cur;
}

namespace {

Point inverse_canonical(int sign, int d, Point p, Branch branch) {
    const bool even = d % 2 == 0;
    double rhs = (p.x - p.y) * sign;  // t^d = (x - y)/a with a = sign
    double t;
    if (even) {
        if (p.x < p.y)
            throw std::domain_error("inverse: point outside the range {x >= y} of the even-degree map");
        t = nth_root(rhs, d);
        if (branch == Branch::Minus) t = -t;
    } else {
        if (branch != Branch::Plus)
            throw std::invalid_argument("inverse: odd-degree map has a single inverse (branch must be Plus)");
        t = nth_root(rhs, d);
    }
    double yb = 2 * p.x - p.y;
    return {t - yb, yb};
}

}  // namespace

Point inverse(const ModelParams& params, Point p, Branch branch) {
    if (!finite(p)) throw std::invalid_argument("inverse: point must be finite");
    if (params.a() == 1.0) return inverse_canonical(+1, params.d(), p, branch);
    if (params.a() == -1.0) {
        if (!params.odd()) throw std::invalid_argument("inverse: a = -1 is canonical only for odd d");
        return inverse_canonical(-1, params.d(), p, branch);
    }
    Canonical c = canonicalize(params);
    // T_{a,d}(mu q) = mu T_{sign,d}(q)  =>  T_{a,d}^{-1}(p) = mu T_{sign,d}^{-1}(p / mu)
    Point scaled{p.x / c.mu, p.y / c.mu};
    Point q = inverse_canonical(c.sign, params.d(), scaled, branch);
    return {c.mu * q.x, c.mu * q.y};
}

Mat2 jacobian(const ModelParams& params, Point p) {
    if (!finite(p)) throw std::invalid_argument("jacobian: point must be finite");
    Vec2<double> row2;
    Vec2<double> row1 = model_jacobian_rows<double>(params.a(), params.d(), p, row2);
    return {row1.x, row1.y, row2.x, row2.y};
}

RatMat2 jacobian_exact(const Rat& a, int d, const RatPoint& p) {
    Vec2<Rat> row2;
    Vec2<Rat> row1 = model_jacobian_rows<Rat>(a, d, p, row2);
    return {row1.x, row1.y, row2.x, row2.y};
}

double conjugacy_scale(double a1, double a2, int d) {
    if (d < 2) throw std::invalid_argument("conjugacy_scale: d must be >= 2");
    if (a1 == 0.0 || a2 == 0.0) throw std::invalid_argument("conjugacy_scale: parameters must be nonzero");
    double r = a2 / a1;
    if (d % 2 != 0 && r < 0.0)
        throw std::domain_error("conjugacy_scale: no real conjugacy for odd d with a1*a2 < 0");
    return nth_root(r, d - 1);  // d even: d-1 odd, real root of either sign
}

Canonical canonicalize(const ModelParams& params) {
    const int d = params.d();
    const double a = params.a();
    if (!params.odd()) {
        // a * mu^(d-1) = 1 with d-1 odd: mu = (1/a)^{1/(d-1)}, sign of a carries over
        return {+1, nth_root(1.0 / a, d - 1)};
    }
    int sign = a > 0 ? +1 : -1;
    return {sign, nth_root(1.0 / std::abs(a), d - 1)};
}

}  // namespace secantlab
