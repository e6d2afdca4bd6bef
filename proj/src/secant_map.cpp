#include "secantlab/secant_map.hpp"

#include <cmath>
#include <limits>

namespace secantlab {

NormalizedPolynomial::NormalizedPolynomial(Polynomial p) : p_(std::move(p)) {
    if (p_.degree() < 3)
        throw std::invalid_argument("NormalizedPolynomial: need degree d+1 >= 3");
    if (p_.coeff(0) != 1)
        throw std::invalid_argument("NormalizedPolynomial: constant coefficient must be 1");
    if (p_.coeff(1) != 0)
        throw std::invalid_argument("NormalizedPolynomial: linear coefficient must vanish");
    if (p_.coeff(2) == 0)
        throw std::invalid_argument("NormalizedPolynomial: a_2 must be nonzero");
}

namespace {

struct SecantStepper {
    const Polynomial& p;
    Polynomial dp;

    explicit SecantStepper(const Polynomial& poly) : p(poly), dp(poly.derivative()) {}

    enum class Status { Ok, Singular };

    // next = (y, y - p(y) (x-y)/(p(x)-p(y))); Singular marks a step that is
    // not representable (horizontal secant, zero derivative at a non-root,
    // or overflow to non-finite).
    Status step(const Point& cur, Point& next) const {
        const double x = cur.x, y = cur.y;
        const double py = p(y);
        const double delta = 1e-8 * (1.0 + std::abs(x) + std::abs(y));
        double ynext;
        if (std::abs(x - y) < delta) {
            const double dpy = dp(y);
            if (dpy == 0.0) {
                if (py == 0.0) {
                    next = {y, y};
                    return Status::Ok;
                }
                return Status::Singular;
            }
            ynext = y - py / dpy;
        } else {
            const double px = p(x);
            const double diff = px - py;
            if (diff == 0.0) return Status::Singular;
            ynext = y - py * (x - y) / diff;
        }
        next = {y, ynext};
        return std::isfinite(ynext) ? Status::Ok : Status::Singular;
    }
};

}  // namespace

ExtendedPoint secant_step(const Polynomial& p, Point pt) {
    if (!finite(pt)) throw std::invalid_argument("secant_step: point must be finite");
    SecantStepper stepper(p);
    Point next;
    if (stepper.step(pt, next) == SecantStepper::Status::Singular)
        return {{pt.y, std::numeric_limits<double>::infinity()}, false, 1, pt};
    if (!below_blowup(next)) return {next, false, 1, pt};
    return ExtendedPoint::at(next);
}

std::vector<CriticalPoint> critical_points(const Polynomial& p) {
    if (p.degree() < 2) throw std::invalid_argument("critical_points: need degree >= 2");
    Polynomial dp = p.derivative();
    Polynomial ddp = dp.derivative();
    std::vector<CriticalPoint> out;
    for (double c : real_roots(dp)) {
        double scale = 1.0 + std::abs(c);
        bool nondeg = std::abs(p(c)) > 1e-9 * scale && std::abs(ddp(c)) > 1e-9 * scale;
        out.push_back({c, nondeg});
    }
    return out;
}

NormalizedPolynomial normalize_at_critical(const Polynomial& p, double c) {
    if (!std::isfinite(c)) throw std::invalid_argument("normalize_at_critical: c must be finite");
    double dpc = p.derivative()(c);
    if (std::abs(dpc) > 1e-10)
        throw std::domain_error("normalize_at_critical: p'(c) != 0 (not a critical point)");
    Rat crat = rat_from_double(c);
    Rat pc = p.eval_exact(crat);
    if (pc == 0) throw std::domain_error("normalize_at_critical: p(c) = 0 (degenerate critical point)");

    std::vector<Rat> coeffs = p.shifted(crat).coeffs();
    for (auto& q : coeffs) q /= pc;
    if (coeffs.size() > 1) coeffs[1] = 0;  // residual below the criticality tolerance
    return NormalizedPolynomial(Polynomial(std::move(coeffs)));
}

Rat model_coefficient(const NormalizedPolynomial& q) {
    return pow_rat(-q.a2(), q.d()) / q.lead();
}

ThreeCycleResult classify_three_cycle(const NormalizedPolynomial& q, Point pt,
                                      const IterationPolicy& policy) {
    policy.validate();
    if (!finite(pt)) throw std::invalid_argument("classify_three_cycle: point must be finite");

    const SecantStepper stepper(q.poly());
    const double eps = policy.eps_converge;
    const double big = policy.escape_radius;
    const double near_cycle = 0.25;  // "finite coordinate close to the critical point"
    const double hit_eps = std::max(eps, 1e-9);

    // Pattern positions over one 3-period: P0 = (small, small) with |x| <= eps,
    // P1 = (small, huge), P2 = (huge, small).
    enum class Expect { P0, P1, P2 };
    Expect expect = Expect::P0;
    int periods = 0;            // consecutive completed qualified periods
    bool start_qualified = false;
    int since_advance = 0;      // steps since the pattern last advanced

    Point cur = pt;
    int stall_run = 0;

    auto position = [&](const Point& z) -> int {
        double ax = std::abs(z.x), ay = std::abs(z.y);
        if (ax <= near_cycle && ay <= near_cycle) return 0;
        if (ax <= near_cycle && ay > big) return 1;
        if (ax > big && ay <= near_cycle) return 2;
        return 3;
    };

    for (int k = 0; k <= policy.max_iter; ++k) {
        int pos = position(cur);
        bool advanced = false;
        switch (expect) {
            case Expect::P0:
                if (pos == 0) {
                    start_qualified = std::abs(cur.x) <= eps;
                    expect = Expect::P1;
                    advanced = true;
                } else
                    periods = 0;
                break;
            case Expect::P1:
                if (pos == 1) {
                    expect = Expect::P2;
                    advanced = true;
                } else {
                    periods = 0;
                    expect = Expect::P0;
                    if (pos == 0) {
                        start_qualified = std::abs(cur.x) <= eps;
                        expect = Expect::P1;
                        advanced = true;
                    }
                }
                break;
            case Expect::P2:
                if (pos == 2) {
                    periods = start_qualified ? periods + 1 : 0;
                    if (periods >= policy.window) return {ThreeCycleLabel::InBasin, k, false};
                    expect = Expect::P0;
                    advanced = true;
                } else {
                    periods = 0;
                    expect = Expect::P0;
                    if (pos == 0) {
                        start_qualified = std::abs(cur.x) <= eps;
                        expect = Expect::P1;
                        advanced = true;
                    }
                }
                break;
        }
        since_advance = advanced ? 0 : since_advance + 1;

        if (norm_inf(cur) > big && since_advance > 3 * policy.window)
            return {ThreeCycleLabel::NotInBasin, k, false};

        Point next;
        if (stepper.step(cur, next) == SecantStepper::Status::Singular) {
            if (norm_inf(cur) <= hit_eps) return {ThreeCycleLabel::InBasin, k, true};
            if (periods >= 1 && since_advance <= 3) return {ThreeCycleLabel::InBasin, k, false};
            return {ThreeCycleLabel::Undecided, k, false};
        }

        // convergence to a finite fixed point (a root of p)
        double scale = 1.0 + norm_inf(cur);
        if (dist(next, cur) <= eps * scale && std::abs(stepper.p(cur.y)) <= 1e-6 * scale) {
            if (++stall_run >= policy.window) return {ThreeCycleLabel::NotInBasin, k, false};
        } else
            stall_run = 0;

        cur = next;
    }
    return {ThreeCycleLabel::Undecided, policy.max_iter, false};
}

}  // namespace secantlab
