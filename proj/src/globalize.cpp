#include "secantlab/globalize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "secantlab/regions.hpp"

namespace secantlab {

namespace {

using ArcFn = std::function<std::optional<Point>(double)>;

struct ArcSample {
    double t;
    std::optional<Point> p;
};

// Sample f over [t0, t1] until segment lengths and turning angles meet the
// policy bounds.  Intervals with an undefined endpoint are kept unrefined
// past a small parameter width (they mark the end of the traceable range).
std::vector<ArcSample> adaptive_arc(const ArcFn& f, double t0, double t1, double max_step,
                                    double angle_bound) {
    std::vector<ArcSample> pts;
    const int initial = 17;
    for (int i = 0; i < initial; ++i) {
        double t = t0 + (t1 - t0) * i / (initial - 1);
        pts.push_back({t, f(t)});
    }
    auto turn = [](const Point& a, const Point& b, const Point& c) {
        Point u = b - a, w = c - b;
        return std::abs(std::atan2(u.x * w.y - u.y * w.x, u.x * w.x + u.y * w.y));
    };
    const double min_dt = 1e-13 * (t1 - t0);
    for (int pass = 0; pass < 64; ++pass) {
        std::vector<double> inserts;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const auto& a = pts[i];
            const auto& b = pts[i + 1];
            if (b.t - a.t <= min_dt) continue;
            bool split = false;
            if (!a.p || !b.p)
                split = (b.t - a.t) > 1e-9 * (t1 - t0);
            else if (dist(*a.p, *b.p) > max_step)
                split = true;
            else if (i > 0 && pts[i - 1].p && a.p && b.p &&
                     turn(*pts[i - 1].p, *a.p, *b.p) > angle_bound)
                split = true;
            else if (i + 2 < pts.size() && pts[i + 2].p && a.p && b.p &&
                     turn(*a.p, *b.p, *pts[i + 2].p) > angle_bound)
                split = true;
            if (split) inserts.push_back(0.5 * (a.t + b.t));
        }
        if (inserts.empty() || pts.size() > 20000) break;
        for (double t : inserts) pts.push_back({t, f(t)});
        std::sort(pts.begin(), pts.end(),
                  [](const ArcSample& x, const ArcSample& y) { return x.t < y.t; });
    }
    return pts;
}

// Bisect g(t) = x - y of f over [tneg at g>0, tpos at g<=0] down to a point
// gap below tol; returns the crossing point snapped to the diagonal.
Point bisect_diagonal(const ArcFn& f, double t_before, double t_after, double tol) {
    auto g = [&](double t) -> double {
        auto p = f(t);
        if (!p) return -1.0;  // undefined counts as crossed
        return p->x - p->y;
    };
    double lo = t_before, hi = t_after;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) > 0)
            lo = mid;
        else
            hi = mid;
        auto a = f(lo);
        auto b = f(hi);
        if (a && b && dist(*a, *b) <= tol) break;
    }
    auto p = f(lo);
    if (!p) throw std::runtime_error("diagonal bisection lost the curve");
    double v = 0.5 * (p->x + p->y);
    return {v, v};
}

}  // namespace

StableTrace trace_stable_origin_even(int d, const TracePolicy& policy) {
    policy.validate();
    if (d < 2 || d % 2 != 0)
        throw std::domain_error("trace_stable_origin_even: requires even d");
    const ModelParams params(1.0, d);
    const double R = trap_radius(d);

    // series seed: phi to order 48 evaluated in double (exact enough far
    // below the convergence radius)
    const int order = 48;
    ManifoldSeries ms = solve_invariant(1, d, ManifoldKind::Stable, order);
    std::vector<double> coeff(order + 1);
    for (int n = 0; n <= order; ++n) coeff[static_cast<std::size_t>(n)] = to_double(ms.phi.at(n));
    auto phi = [&](double x) {
        double acc = coeff[static_cast<std::size_t>(order)];
        for (int n = order - 1; n >= 0; --n) acc = acc * x + coeff[static_cast<std::size_t>(n)];
        return acc;
    };

    const double xb = std::min(policy.seed_radius, 0.01);
    Point seed_end{xb, phi(xb)};
    double xa = eval(params, seed_end).x;
    if (!(xa > 0.0 && xa < xb))
        throw std::runtime_error("trace_stable_origin_even: degenerate fundamental domain");
    const double log_ratio = std::log(xb / xa);

    auto piece = [&](int k) -> ArcFn {
        return [&, k](double t) -> std::optional<Point> {
            double x = xa * std::exp(log_ratio * t);
            Point cur{x, phi(x)};
            for (int i = 0; i < k; ++i) {
                if (cur.x < cur.y) return std::nullopt;  // past the diagonal
                cur = inverse(params, cur, Branch::Plus);
            }
            return cur;
        };
    };

    Polyline curve;
    curve.push({0.0, 0.0});
    const int max_pieces = 200;
    for (int k = 0; k < max_pieces; ++k) {
        ArcFn f = piece(k);
        auto samples = adaptive_arc(f, 0.0, 1.0, policy.max_step, policy.angle_bound);
        double prev_t = 0.0;
        bool have_prev = false;
        for (const auto& s : samples) {
            if (!s.p) continue;
            if (s.p->x - s.p->y <= 0.0 || !have_prev) {
                if (s.p->x - s.p->y <= 0.0) {
                    double t_before = have_prev ? prev_t : 0.0;
                    Point cross = bisect_diagonal(f, t_before, s.t, policy.bisection_tol);
                    curve.push(cross);
                    double p = cross.x;
                    if (!(p > 0.0 && p < R))
                        throw std::runtime_error(
                            "trace_stable_origin_even: crossing outside (0, R_d)");
                    return {std::move(curve), p};
                }
            }
            curve.push(*s.p);
            prev_t = s.t;
            have_prev = true;
            if (curve.length() > policy.max_arclength)
                throw std::runtime_error("trace_stable_origin_even: arclength budget exhausted "
                                         "before the diagonal crossing (trace incomplete)");
        }
    }
    throw std::runtime_error("trace_stable_origin_even: no diagonal crossing found (trace incomplete)");
}

namespace {

// Map an already-traced source polyline through a pointwise map with
// adaptive refinement (sources interpolated linearly between vertices).
Polyline map_polyline(const Polyline& src, const std::function<Point(Point)>& f,
                      double max_step, double angle_bound) {
    const auto& v = src.vertices();
    const auto& s = src.arclength();
    double total = src.length();
    auto src_at = [&](double a) -> Point {
        auto it = std::upper_bound(s.begin(), s.end(), a);
        std::size_t i = std::min<std::size_t>(s.size() - 1, static_cast<std::size_t>(it - s.begin()));
        if (i == 0) return v[0];
        double t = (a - s[i - 1]) / (s[i] - s[i - 1]);
        return {v[i - 1].x + t * (v[i].x - v[i - 1].x), v[i - 1].y + t * (v[i].y - v[i - 1].y)};
    };
    ArcFn f_arc = [&](double a) -> std::optional<Point> { return f(src_at(a * total)); };
    auto samples = adaptive_arc(f_arc, 0.0, 1.0, max_step, angle_bound);
    Polyline out;
    for (const auto& sm : samples)
        if (sm.p) out.push(*sm.p);
    return out;
}

}  // namespace

BoundaryAssembly assemble_basin_boundary_even(int d, const TracePolicy& policy) {
    StableTrace st = trace_stable_origin_even(d, policy);
    const ModelParams params(1.0, d);

    // clamp tiny negative root arguments introduced by the crossing snap
    auto inv = [&](Branch br) {
        return [&, br](Point p) {
            if (p.x < p.y) p.x = p.y;
            return inverse(params, p, br);
        };
    };

    Polyline plus = map_polyline(st.curve, inv(Branch::Plus), policy.max_step, policy.angle_bound);
    Polyline minus = map_polyline(st.curve, inv(Branch::Minus), policy.max_step, policy.angle_bound);

    BoundaryAssembly out;
    out.p = st.p;

    // slope-2 point of the primary arc
    const auto& gv = st.curve.vertices();
    Point q{0, 0};
    bool found_q = false;
    for (std::size_t i = 0; i + 1 < gv.size() && !found_q; ++i) {
        double dx = gv[i + 1].x - gv[i].x, dy = gv[i + 1].y - gv[i].y;
        if (dx > 0 && dy / dx >= 2.0) {
            q = gv[i];
            found_q = true;
        }
    }
    if (!found_q) q = gv[gv.size() / 2];
    out.q = q;
    out.q_plus = inverse(params, q, Branch::Plus);
    out.q_minus = inverse(params, q, Branch::Minus);

    // tangent at (-p, p): final segment of the plus arc
    const auto& pv = plus.vertices();
    if (pv.size() >= 2) {
        Point u = pv[pv.size() - 1] - pv[pv.size() - 2];
        out.tangent_angle_at_left = std::atan2(std::abs(u.y), std::abs(u.x));
    } else
        out.tangent_angle_at_left = 0.0;

    Polyline closed = std::move(plus);
    closed.append(minus.reversed());
    out.curve = std::move(closed);
    return out;
}

namespace {

UnstableTrace trace_unstable_once(int d, const TracePolicy& policy, double delta) {
    const ModelParams params(1.0, d);
    CycleData cd = two_cycle_data(d);
    const Point p0 = cd.p0;
    const Point u{-1.0, -cd.m_plus};  // branch with y <= 1, into T_d(D)
    const double lam = cd.lambda_plus;

    auto seed = [&](double t) { return Point{p0.x + delta * std::pow(lam, t) * u.x,
                                             p0.y + delta * std::pow(lam, t) * u.y}; };
    auto piece = [&](int k) -> ArcFn {
        return [&, k](double t) -> std::optional<Point> {
            Point cur = seed(t);
            for (int i = 0; i < 2 * k; ++i) {
                cur = eval_raw(params, cur);
                if (!finite(cur)) return std::nullopt;
            }
            return cur;
        };
    };

    UnstableTrace out;
    out.curve.push(p0);
    out.x0_crossing = std::numeric_limits<double>::quiet_NaN();
    const int max_pieces = 60;
    Point prev = p0;
    for (int k = 0; k < max_pieces; ++k) {
        ArcFn f = piece(k);
        auto samples = adaptive_arc(f, 0.0, 1.0, policy.max_step, policy.angle_bound);
        double prev_t = 0.0;
        bool have_prev = false;
        for (const auto& s : samples) {
            if (!s.p) continue;
            Point cur = *s.p;
            // x-axis crossing (record the first one)
            if (std::isnan(out.x0_crossing) && prev.y > 0.0 && cur.y <= 0.0) {
                double w = prev.y / (prev.y - cur.y);
                out.x0_crossing = prev.x + w * (cur.x - prev.x);
            }
            if (cur.x - cur.y >= 0.0) {
                double t_before = have_prev ? prev_t : 0.0;
                // the diagonal bisection with the sign flipped: this curve
                // starts at y > x
                auto flipped = [&](double t) -> std::optional<Point> {
                    auto p = f(t);
                    if (!p) return p;
                    return Point{p->y, p->x};
                };
                Point cross = bisect_diagonal(flipped, t_before, s.t, policy.bisection_tol);
                out.curve.push(cross);
                out.p_hat = cross.x;
                return out;
            }
            out.curve.push(cur);
            prev = cur;
            prev_t = s.t;
            have_prev = true;
            if (out.curve.length() > policy.max_arclength)
                throw std::runtime_error("trace_unstable_two_cycle: arclength budget exhausted");
        }
    }
    throw std::runtime_error("trace_unstable_two_cycle: no diagonal crossing found");
}

}  // namespace

UnstableTrace trace_unstable_two_cycle(int d, const TracePolicy& policy) {
    policy.validate();
    if (d < 3 || d % 2 == 0)
        throw std::domain_error("trace_unstable_two_cycle: requires odd d >= 3");
    UnstableTrace coarse = trace_unstable_once(d, policy, policy.seed_radius);
    UnstableTrace fine = trace_unstable_once(d, policy, 0.5 * policy.seed_radius);
    double drift = std::abs(coarse.p_hat - fine.p_hat);
    if (drift > std::max(policy.bisection_tol, 1e-12))
        throw std::runtime_error("trace_unstable_two_cycle: seed too coarse (crossing moved " +
                                 std::to_string(drift) + " under seed halving)");
    return fine;
}

namespace {

enum class ExitSide { Lower, Upper, Stayed };

// a = +1: orbits of T^2 inside Omega = T^{-1}(E2); exit side = which gamma
// curve bounds the violated side of E2.
ExitSide classify_omega_exit(const ModelParams& params, int d, Point z, int cap, int min_stay,
                             int* stayed_steps = nullptr) {
    for (int k = 0; k < cap; ++k) {
        Point w = eval_raw(params, z);
        if (!finite(w)) return ExitSide::Lower;  // blown up leftwards
        double lo = curves::gamma_minus_x(w.y, d);
        double hi = curves::gamma_plus_x(w.y, d);
        bool in_e2 = w.y >= 1.0 && lo <= w.x && w.x <= hi;
        if (!in_e2) {
            if (stayed_steps) *stayed_steps = k;
            if (w.x < lo) return ExitSide::Lower;
            if (w.x > hi) return ExitSide::Upper;
            // below the wedge vertex: classify against the mid curve
            return w.x < 0.5 * (lo + hi) ? ExitSide::Lower : ExitSide::Upper;
        }
        z = eval_raw(params, w);
        if (!finite(z)) return ExitSide::Lower;
        if (k + 1 >= min_stay) return ExitSide::Stayed;
    }
    return ExitSide::Stayed;
}

// a = -1: orbits of T^2 inside D0 = T^{-2}(Q4).
ExitSide classify_d0_exit(const ModelParams& params, Point z, int cap, int min_stay) {
    for (int k = 0; k < cap; ++k) {
        Point w = eval_raw(params, eval_raw(params, z));
        if (!finite(w)) return ExitSide::Lower;
        bool inside = w.x >= 0.0 && w.y <= 0.0;
        if (!inside) {
            if (w.y > 0.0 && w.x >= 0.0) return ExitSide::Upper;   // out through sigma0+
            if (w.x < 0.0 && w.y <= 0.0) return ExitSide::Lower;   // out through sigma0-
            return w.y > -w.x ? ExitSide::Upper : ExitSide::Lower;
        }
        z = w;
        if (k + 1 >= min_stay) return ExitSide::Stayed;
    }
    return ExitSide::Stayed;
}

double solve_monotone(const std::function<double(double)>& f, double target, double lo, double hi) {
    // assumes f increasing over [lo, hi] with f(lo) <= target <= f(hi)
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1 + std::abs(lo) + std::abs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

Point bracket_stable_point(int d, int a, double x0, const TracePolicy& policy) {
    policy.validate();
    if (d < 3 || d % 2 == 0) throw std::domain_error("bracket_stable_point: requires odd d >= 3");
    if (a != 1 && a != -1) throw std::domain_error("bracket_stable_point: a must be +1 or -1");
    if (!(x0 > 0)) throw std::domain_error("bracket_stable_point: x0 must be positive");
    const ModelParams params(static_cast<double>(a), d);
    const int stay_cap = 400;

    double ylo, yhi;  // segment endpoints, exit sides Lower at ylo, Upper at yhi
    std::function<ExitSide(double)> side;
    if (a == 1) {
        // {x = x0} cut out of D2: between sigma- (above) and sigma+ (below)
        double yu = solve_monotone([&](double y) { return curves::sigma_minus_x(y, d); }, x0,
                                   -(x0 + 2.0), -1.0);
        double yd = solve_monotone([&](double y) { return curves::sigma_plus_x(y, d); }, x0,
                                   -(2 * x0 + 4.0), -1.0);
        ylo = yd;  // sigma+ side maps across gamma-, the Lower exit
        yhi = yu;
        side = [&](double y) {
            return classify_omega_exit(params, d, {x0, y}, stay_cap, stay_cap);
        };
    } else {
        double tu = solve_monotone(
            [&](double t) { return curves::sigma0_minus(t, d).x; }, x0, 0.0, x0 + 2.0);
        double td = solve_monotone(
            [&](double t) { return curves::sigma0_plus(t, d).x; }, x0, 0.0, x0 + 2.0);
        ylo = curves::sigma0_minus(tu, d).y;
        yhi = curves::sigma0_plus(td, d).y;
        side = [&](double y) { return classify_d0_exit(params, {x0, y}, stay_cap, stay_cap); };
    }

    ExitSide slo = side(ylo), shi = side(yhi);
    if (slo == shi)
        throw std::domain_error("bracket_stable_point: segment endpoints classify to the same side "
                                "(no bracket on {x = x0})");
    if (slo == ExitSide::Upper) std::swap(ylo, yhi);

    double lo = ylo, hi = yhi;
    Point result{x0, 0.5 * (lo + hi)};
    for (int it = 0; it < 400 && std::abs(hi - lo) > policy.bisection_tol; ++it) {
        double mid = 0.5 * (lo + hi);
        ExitSide s = side(mid);
        if (s == ExitSide::Stayed) {
            result.y = mid;
            break;
        }
        (s == ExitSide::Lower ? lo : hi) = mid;
        result.y = 0.5 * (lo + hi);
    }

    // verification against the contraction claims
    const double lambda = a == 1 ? double(d) * d / ((1.0 - 2 * d) * (1.0 - 2 * d)) : 0.5;
    Point z = result;
    double bound = x0;
    for (int k = 1; k <= 20; ++k) {
        z = eval_raw(params, eval_raw(params, z));
        bound *= lambda;
        bool inside = a == 1
                          ? classify_omega_exit(params, d, z, 1, 1) == ExitSide::Stayed
                          : (z.x >= 0.0 && z.y <= 0.0);
        if (!finite(z) || !inside || !(z.x <= bound * (1 + 1e-12)))
            throw std::runtime_error(
                "bracket_stable_point: bisection exhausted precision before the orbit satisfied "
                "the contraction bound");
    }
    return result;
}

}  // namespace secantlab
