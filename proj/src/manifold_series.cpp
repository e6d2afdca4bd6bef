#include "secantlab/manifold_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <vector>

namespace secantlab {

namespace {

void validate_params(int canonical_a, int d, int order) {
    if (canonical_a != 1 && canonical_a != -1)
        throw std::invalid_argument("solve_invariant: a must be canonical (+1 or -1)");
    if (d < 2) throw std::invalid_argument("solve_invariant: d must be >= 2");
    if (canonical_a == -1 && d % 2 == 0)
        throw std::invalid_argument("solve_invariant: a = -1 requires odd d");
    if (order < d) throw std::invalid_argument("solve_invariant: order must be >= d");
}

// Online power tables: pw[k][m] = coefficient of x^m in base^k.  Each step of
// the solver appends one order to every power, so referenced entries are
// always final.  pw[1] is the base series itself.
struct PowerTable {
    int valuation;
    std::vector<std::vector<Rat>> pw;

    PowerTable(int val, int max_k) : valuation(val), pw(static_cast<std::size_t>(max_k) + 1) {}

    std::vector<Rat>& base() { return pw[1]; }

    // Append order n to pw[k] for k = 2..kmax (kmax <= max_k).
    void extend(int n, int kmax) {
        const auto& b = pw[1];
        for (int k = 2; k <= kmax; ++k) {
            auto& dst = pw[k];
            dst.resize(static_cast<std::size_t>(n) + 1, Rat(0));
            if (n < k * valuation) continue;
            Rat acc(0);
            const auto& prev = pw[k - 1];
            int jhi = n - (k - 1) * valuation;
            for (int j = valuation; j <= jhi; ++j) {
                if (b[j] == 0) continue;
                const Rat& q = prev[n - j];
                if (q == 0) continue;
                acc += b[j] * q;
            }
            dst[n] = acc;
        }
    }
};

}  // namespace

ManifoldSeries solve_invariant(int canonical_a, int d, ManifoldKind kind, int order) {
    validate_params(canonical_a, d, order);
    const Rat a(canonical_a);
    const int N = order;
    const bool center = kind == ManifoldKind::Center;
    const Rat c1 = center ? Rat(1) : Rat(0);

    // phi = sum c_n x^n; S = x + phi; A = S^d; F = phi - a A is the first
    // component of T(x, phi(x)), i.e. the induced one-dimensional dynamics.
    std::vector<Rat> c(N + 1, Rat(0));
    c[1] = c1;

    const int fval = center ? 1 : d;
    PowerTable spow(1, d);
    PowerTable fpow(fval, std::max(2, N / fval + 1));
    auto& S = spow.base();
    auto& F = fpow.base();
    S.assign(2, Rat(0));
    F.assign(2, Rat(0));
    S[1] = Rat(1) + c1;
    F[1] = c1;
    std::vector<Rat> A(N + 1, Rat(0));

    for (int n = 2; n <= N; ++n) {
        S.resize(n + 1, Rat(0));
        F.resize(n + 1, Rat(0));
        spow.extend(n, d);
        A[n] = spow.pw[d][n];

        fpow.extend(n, n / fval);
        Rat mid(0);
        int imax = std::min(n - 1, n / fval);
        for (int i = 2; i <= imax; ++i) {
            if (c[i] == 0) continue;
            const Rat& f = fpow.pw[i][n];
            if (f == 0) continue;
            mid += c[i] * f;
        }

        // Invariance equation phi(F(x)) = phi(x) - 2 a (x + phi(x))^d at
        // order n, solved for the single unknown c_n.
        if (center)
            c[n] = -a * A[n] - mid;
        else
            c[n] = 2 * a * A[n] + mid;

        S[n] = c[n];
        F[n] = c[n] - a * A[n];
    }

    ManifoldSeries out{canonical_a, d, kind, RatSeries(N), RatSeries(N), std::nullopt};
    for (int n = 0; n <= N; ++n) out.phi.set(n, c[n]);
    out.induced.set(1, c1);
    for (int n = 2; n <= N; ++n) out.induced.set(n, F[n]);
    return out;
}

RatSeries stable_series_recurrence(int d, int order) {
    if (d < 2) throw std::invalid_argument("stable_series_recurrence: d must be >= 2");
    if (order < 2) throw std::invalid_argument("stable_series_recurrence: order must be >= 2");
    std::vector<Rat> alpha(order + 1, Rat(0));
    alpha[2] = d == 2 ? Rat(2) : Rat(0);

    for (int n = 3; n <= order; ++n) {
        RatSeries phi_prev(n);
        for (int j = 2; j < n; ++j) phi_prev.set(j, alpha[j]);
        RatSeries x_plus_phi = phi_prev;
        x_plus_phi.set(1, Rat(1));
        RatSeries lifted = pow(x_plus_phi, d);
        Rat term1 = 2 * lifted.at(n);

        RatSeries inner = sub(phi_prev, lifted);
        Rat term2(0);
        int v = std::max(inner.valuation(), 1);
        RatSeries p = inner;
        for (int i = 2; i <= n - 1 && i * v <= n; ++i) {
            p = mul(p, inner);
            if (alpha[i] != 0 && p.at(n) != 0) term2 += alpha[i] * p.at(n);
        }
        alpha[n] = term1 + term2;
    }

    RatSeries out(order);
    for (int n = 2; n <= order; ++n) out.set(n, alpha[n]);
    return out;
}

RatSeries induced_dynamics(int canonical_a, int d, const RatSeries& phi) {
    RatSeries x_plus_phi = phi;
    x_plus_phi.set(1, phi.at(1) + 1);
    RatSeries lifted = pow(x_plus_phi, d);
    return sub(phi, scale(Rat(canonical_a), lifted));
}

RadiusEstimate estimate_radius(const RatSeries& series) {
    std::vector<int> idx;
    for (int n = 0; n <= series.order(); ++n)
        if (series.at(n) != 0) idx.push_back(n);
    if (static_cast<int>(idx.size()) < 50)
        throw std::invalid_argument("estimate_radius: needs at least 50 nonzero coefficients");

    std::vector<double> ratios;
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
        Rat r = abs(series.at(idx[k])) / abs(series.at(idx[k + 1]));
        int gap = idx[k + 1] - idx[k];
        ratios.push_back(std::pow(to_double(r), 1.0 / gap));
    }

    // Aitken delta-squared on the plain ratio sequence.
    std::vector<double> accel;
    for (std::size_t k = 0; k + 2 < ratios.size(); ++k) {
        double d2 = ratios[k + 2] - 2 * ratios[k + 1] + ratios[k];
        if (std::abs(d2) < 1e-300)
            accel.push_back(ratios[k + 2]);
        else {
            double d1 = ratios[k + 1] - ratios[k];
            accel.push_back(ratios[k] - d1 * d1 / d2);
        }
    }

    double point = accel.empty() ? ratios.back() : accel.back();
    std::size_t tail = std::min<std::size_t>(10, ratios.size());
    double lo = point, hi = point;
    for (std::size_t k = ratios.size() - tail; k < ratios.size(); ++k) {
        lo = std::min(lo, ratios[k]);
        hi = std::max(hi, ratios[k]);
    }
    if (!(lo > 0.0))
        throw std::runtime_error("estimate_radius: degenerate ratio sequence");
    return {lo, point, hi};
}

SeriesValue eval_series(const RatSeries& series, double x,
                        const std::optional<RadiusEstimate>& radius) {
    if (!std::isfinite(x)) throw std::invalid_argument("eval_series: x must be finite");
    if (radius && std::abs(x) >= 0.9 * radius->point_estimate)
        throw std::domain_error("eval_series: x outside the safe evaluation disk 0.9*r");

    // Exact Horner: coefficients can exceed double range even when the sum is tame.
    Rat xr = rat_from_double(x);
    Rat value = series.eval(xr);

    int last = -1, prev = -1;
    for (int n = series.order(); n >= 0; --n)
        if (series.at(n) != 0) {
            if (last < 0)
                last = n;
            else {
                prev = n;
                break;
            }
        }
    double tail = 0.0;
    if (last > 0 && x != 0.0) {
        Rat t = abs(series.at(last)) * pow_rat(abs(xr), last);
        double q;
        if (radius)
            q = std::abs(x) / radius->point_estimate;
        else if (prev >= 0) {
            Rat growth = abs(series.at(last)) / abs(series.at(prev));
            q = std::abs(x) * std::pow(to_double(growth), 1.0 / (last - prev));
        } else
            q = 0.0;
        int gap = prev >= 0 ? last - prev : 1;
        double qg = std::pow(q, gap);
        tail = qg < 1.0 ? to_double(t) * qg / (1.0 - qg)
                        : std::numeric_limits<double>::infinity();
    }
    return {to_double(value), tail};
}

void write_series_csv(std::ostream& os, const RatSeries& series) {
    os << "n,numerator,denominator,value\n";
    for (int n = 0; n <= series.order(); ++n) {
        const Rat& c = series.at(n);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", to_double(c));
        os << n << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << ',' << buf
           << '\n';
    }
}

}  // namespace secantlab
