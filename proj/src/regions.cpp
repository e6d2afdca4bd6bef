#include "secantlab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "secantlab/model_map.hpp"
#include "secantlab/polyline.hpp"

namespace secantlab {

double trap_radius(int d) {
    if (d < 2) throw std::invalid_argument("trap_radius: d must be >= 2");
    return (1.0 - 1.0 / d) * std::pow(2.0 * d, -1.0 / (d - 1));
}

double Polygon::signed_distance(Point p) const {
    if (v.size() < 3) throw std::logic_error("Polygon: needs at least 3 vertices");
    double best = std::numeric_limits<double>::infinity();
    bool inside = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        best = std::min(best, point_segment_distance(p, v[j], v[i]));
        if ((v[i].y > p.y) != (v[j].y > p.y)) {
            double xcross = v[j].x + (v[i].x - v[j].x) * (p.y - v[j].y) / (v[i].y - v[j].y);
            if (p.x < xcross) inside = !inside;
        }
    }
    return inside ? best : -best;
}

double Polygon::perimeter() const {
    double s = 0.0;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) s += dist(v[j], v[i]);
    return s;
}

Point Polygon::boundary_point(double s) const {
    double total = perimeter();
    s = std::fmod(s, total);
    if (s < 0) s += total;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Point a = v[i], b = v[(i + 1) % v.size()];
        double len = dist(a, b);
        if (s <= len) {
            double t = len == 0 ? 0.0 : s / len;
            return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
        }
        s -= len;
    }
    return v.front();
}

namespace {

Region polygon_region(std::string name, Polygon poly, std::vector<RatPoint> exact = {}) {
    Region r;
    r.name = std::move(name);
    auto shared = std::make_shared<Polygon>(std::move(poly));
    r.contains = [shared](Point p) { return shared->signed_distance(p) >= 0.0; };
    r.signed_distance = [shared](Point p) { return shared->signed_distance(p); };
    r.boundary_length = shared->perimeter();
    r.boundary = [shared](double s) { return shared->boundary_point(s); };
    r.exact_vertices = std::move(exact);
    return r;
}

}  // namespace

Region make_qb(const Rat& b, int d) {
    if (!(b > 0) || b > Rat(1, 2))
        throw std::domain_error("make_qb: b must lie in (0, 1/2]");
    if (d < 3 || d % 2 == 0) throw std::domain_error("make_qb: requires odd d >= 3");
    Rat bd = pow_rat(b, d);
    std::vector<RatPoint> exact{{2 * bd, Rat(0)}, {2 * bd, 2 * bd}, {Rat(0), 2 * bd},
                                {-bd, Rat(0)},   {-bd, -bd},       {Rat(0), -bd}};
    Polygon poly;
    for (const auto& q : exact) poly.v.push_back({to_double(q.x), to_double(q.y)});
    return polygon_region("Qb", std::move(poly), std::move(exact));
}

Region make_qstar(int d) {
    Region r = make_qb(Rat(1, 2), d);
    r.name = "Qstar";
    return r;
}

Region make_triangle_d(int d) {
    if (d < 3 || d % 2 == 0) throw std::domain_error("make_triangle_d: requires odd d >= 3");
    double disc = std::sqrt(9.0 * d * d - 10.0 * d + 1.0);
    double m_plus = 4.0 * d / (1.0 - d + disc);
    double m_star = 3.5;
    double u = 1.0 / (m_plus + 1.0), w = 1.0 / (m_star + 1.0);
    Polygon poly;
    poly.v = {{0.0, -1.0}, {u, -u}, {w, -w}};
    return polygon_region("TriangleD", std::move(poly));
}

Region make_triangle_e() {
    Polygon poly;
    poly.v = {{0.0, 1.0}, {-0.5, 0.0}, {-1.0 / 3.0, 0.0}};
    std::vector<RatPoint> exact{{Rat(0), Rat(1)}, {Rat(-1, 2), Rat(0)}, {Rat(-1, 3), Rat(0)}};
    // counterclockwise: (-1/2,0), (-1/3,0), (0,1)
    std::reverse(poly.v.begin(), poly.v.end());
    std::reverse(exact.begin(), exact.end());
    return polygon_region("TriangleE", std::move(poly), std::move(exact));
}

Region make_trap(int d) {
    double R = trap_radius(d);
    Polygon poly;
    poly.v = {{0.0, 0.0}, {R, 0.0}, {R, R}};
    std::vector<RatPoint> exact;
    if (d == 2)
        exact = {{Rat(0), Rat(0)}, {Rat(1, 8), Rat(0)}, {Rat(1, 8), Rat(1, 8)}};
    return polygon_region("TrapT", std::move(poly), std::move(exact));
}

Region make_box_k(int d) {
    if (d < 2 || d % 2 != 0) throw std::domain_error("make_box_k: requires even d");
    double R = trap_radius(d);
    double x0 = -5 * R, x1 = R, y0 = 0.0, y1 = 2 * R;
    Region r;
    r.name = "BoxK";
    r.contains = [=](Point p) {
        bool in_box = p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1;
        return in_box || (p.x == 0.0 && p.y == 0.0);
    };
    r.signed_distance = [=](Point p) {
        if (p.x == 0.0 && p.y == 0.0) return 0.0;
        double dx = std::min(p.x - x0, x1 - p.x);
        double dy = std::min(p.y - y0, y1 - p.y);
        double inside = std::min(dx, dy);
        if (inside >= 0) return inside;
        double ox = std::max({x0 - p.x, 0.0, p.x - x1});
        double oy = std::max({y0 - p.y, 0.0, p.y - y1});
        return -std::hypot(ox, oy);
    };
    Polygon poly;
    poly.v = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    auto shared = std::make_shared<Polygon>(std::move(poly));
    r.boundary_length = shared->perimeter();
    r.boundary = [shared](double s) { return shared->boundary_point(s); };
    return r;
}

namespace curves {

double gamma_plus_x(double y, int d) { return nth_root(y, d) - y; }
double gamma_minus_x(double y, int d) { return nth_root(0.5 * (y + 1.0), d) - y; }
double sigma_minus_x(double y, int d) { return nth_root(y, d) - y; }
double sigma_plus_x(double y, int d) { return nth_root(0.5 * (y - 1.0), d) - y; }

Point sigma0_plus(double t, int d) {
    double r = nth_root(t, d);
    return {6 * t + 2 * r + nth_root(4 * t + r, d), -6 * t - 2 * r};
}

Point sigma0_minus(double t, int d) {
    double r = nth_root(t, d);
    return {3 * t + 2 * r + nth_root(2 * t + r, d), -3 * t - 2 * r};
}

Point sigma1_plus(double t, int d) { return {-2 * t - nth_root(t, d), 2 * t}; }
Point sigma1_minus(double t, int d) { return {-t - nth_root(t, d), t}; }

}  // namespace curves

Region make_omega(int d) {
    if (d < 3 || d % 2 == 0) throw std::domain_error("make_omega: requires odd d >= 3");
    ModelParams params(1.0, d);
    Region r;
    r.name = "Omega";
    r.contains = [params, d](Point p) {
        Point w = eval_raw(params, p);
        if (!(w.y >= 1.0)) return false;
        return curves::gamma_minus_x(w.y, d) <= w.x && w.x <= curves::gamma_plus_x(w.y, d);
    };
    // boundary curves: preimages of the gamma curves, parametrized by the
    // image ordinate y >= 1
    auto pre = [params, d](double y, double x) {
        return inverse(params, Point{x, y}, Branch::Plus);
    };
    r.curves.push_back({"pre_gamma_minus", 1.0, 50.0, [pre, d](double y) {
                            return pre(y, curves::gamma_minus_x(y, d));
                        }});
    r.curves.push_back({"pre_gamma_plus", 1.0, 50.0, [pre, d](double y) {
                            return pre(y, curves::gamma_plus_x(y, d));
                        }});
    return r;
}

Region make_d0(int d) {
    if (d < 3 || d % 2 == 0) throw std::domain_error("make_d0: requires odd d >= 3");
    ModelParams params(-1.0, d);
    Region r;
    r.name = "D0";
    r.contains = [params](Point p) {
        Point w = eval_raw(params, eval_raw(params, p));
        return finite(w) && w.x >= 0.0 && w.y <= 0.0;
    };
    r.curves.push_back({"sigma0_minus", 0.0, 50.0,
                        [d](double t) { return curves::sigma0_minus(t, d); }});
    r.curves.push_back({"sigma0_plus", 0.0, 50.0,
                        [d](double t) { return curves::sigma0_plus(t, d); }});
    return r;
}

Region make_omega0_plus(int d, const ManifoldSeries& stable) {
    if (d < 2 || d % 2 != 0) throw std::domain_error("make_omega0_plus: requires even d");
    if (stable.kind != ManifoldKind::Stable || stable.d != d || stable.canonical_a != 1)
        throw std::invalid_argument("make_omega0_plus: needs the stable series of (a=1, d)");

    // slope-1/2 abscissa of the stable graph, by bisection on phi'
    RatSeries dphi(stable.phi.order() - 1);
    for (int n = 1; n <= stable.phi.order(); ++n) dphi.set(n - 1, Rat(n) * stable.phi.at(n));
    double cap = 0.5 * std::pow(4.0 * d, -1.0 / (d - 1));
    auto slope = [&](double x) { return eval_series(dphi, x).value; };
    double qbar_x = cap;
    if (slope(cap) > 0.5) {
        double lo = 0.0, hi = cap;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (slope(mid) < 0.5 ? lo : hi) = mid;
        }
        qbar_x = 0.5 * (lo + hi);
    }
    double rho2 = 0.9 * std::min(cap, qbar_x);

    auto phi = [series = stable.phi](double x) { return eval_series(series, x).value; };

    Region r;
    r.name = "Omega0Plus";
    double R = trap_radius(d);
    r.contains = [phi, rho2, R](Point p) {
        return p.x >= 0.0 && p.x <= rho2 && p.x <= R && p.y <= p.x && p.y >= phi(p.x);
    };

    // boundary chain: graph of phi from (0,0) to (rho2, phi(rho2)), up the
    // vertical edge to (rho2, rho2), back down the diagonal to (0,0)
    auto chain = std::make_shared<Polyline>();
    const int n_graph = 512;
    for (int i = 0; i <= n_graph; ++i) {
        double x = rho2 * i / n_graph;
        chain->push({x, phi(x)});
    }
    chain->push({rho2, rho2});
    chain->push({0.0, 0.0});
    double total = chain->length();
    r.boundary_length = total;
    r.boundary = [chain, total](double s) {
        s = std::fmod(s, total);
        if (s < 0) s += total;
        const auto& arcs = chain->arclength();
        const auto& v = chain->vertices();
        auto it = std::upper_bound(arcs.begin(), arcs.end(), s);
        std::size_t i = std::min<std::size_t>(arcs.size() - 1, it - arcs.begin());
        if (i == 0) return v[0];
        double t = (s - arcs[i - 1]) / (arcs[i] - arcs[i - 1]);
        return Point{v[i - 1].x + t * (v[i].x - v[i - 1].x),
                     v[i - 1].y + t * (v[i].y - v[i - 1].y)};
    };
    auto inside = r.contains;
    r.signed_distance = [chain, inside](Point p) {
        double dd = chain->distance_to(p);
        return inside(p) ? dd : -dd;
    };
    r.curves.push_back({"stable_graph", 0.0, rho2, [phi](double x) {
                            return Point{x, phi(x)};
                        }});
    return r;
}

Region build_region(const std::string& name, const Rat& b, int d) {
    if (name == "Qb") return make_qb(b, d);
    if (name == "Qstar") return make_qstar(d);
    if (name == "TriangleD") return make_triangle_d(d);
    if (name == "TriangleE") return make_triangle_e();
    if (name == "TrapT") return make_trap(d);
    if (name == "BoxK") return make_box_k(d);
    if (name == "Omega") return make_omega(d);
    if (name == "D0") return make_d0(d);
    if (name == "Omega0Plus")
        return make_omega0_plus(d, solve_invariant(1, d, ManifoldKind::Stable, 60));
    throw std::domain_error("build_region: unknown region name: " + name);
}

}  // namespace secantlab
