#include <doctest.h>

#include <cmath>
#include <sstream>

#include "secantlab/manifold_series.hpp"
#include "secantlab/regions.hpp"

using namespace secantlab;

namespace {

// two-sided invariance defect T(x, phi(x)) - (R(x), phi(R(x))) evaluated
// exactly at rational x
RatPoint invariance_defect(const ManifoldSeries& ms, const Rat& x) {
    Rat phi_x = ms.phi.eval(x);
    RatPoint image = eval_exact(Rat(ms.canonical_a), ms.d, {x, phi_x});
    Rat rx = ms.induced.eval(x);
    return {image.x - rx, image.y - ms.phi.eval(rx)};
}

}  // namespace

TEST_CASE("series ring basics") {
    RatSeries a(3), b(3);
    a.set(0, Rat(1));
    a.set(1, Rat(2));
    b.set(1, Rat(1));
    b.set(2, Rat(-1));
    RatSeries p = mul(a, b);
    CHECK(p.at(1) == 1);
    CHECK(p.at(2) == 1);   // 2*1 + 1*(-1)
    CHECK(p.at(3) == -2);
    CHECK_THROWS_AS(p.at(4), std::out_of_range);
    CHECK_THROWS_AS(compose(a, a), std::invalid_argument);  // inner must vanish at 0

    RatSeries geo(5);
    for (int n = 0; n <= 5; ++n) geo.set(n, Rat(1));
    CHECK(geo.eval(Rat(1, 2)) == Rat(63, 32));
}

TEST_CASE("closed-form coefficients for all canonical parameter pairs") {
    struct Case {
        int a, d;
    };
    for (const Case& c : {Case{1, 2}, Case{1, 3}, Case{1, 4}, Case{1, 5}, Case{-1, 3}, Case{-1, 5}}) {
        CAPTURE(c.a);
        CAPTURE(c.d);
        ManifoldSeries st = solve_invariant(c.a, c.d, ManifoldKind::Stable, 2 * c.d + 2);
        ManifoldSeries ce = solve_invariant(c.a, c.d, ManifoldKind::Center, 2 * c.d + 2);
        CHECK(st.phi.at(c.d) == Rat(2 * c.a));
        CHECK(st.phi.at(2 * c.d - 1) == Rat(4 * c.d));
        CHECK(ce.phi.at(c.d) == Rat(-c.a) * pow_rat(Rat(2), c.d));
        CHECK(ce.phi.at(2 * c.d - 1) == Rat(-3 * c.d) * pow_rat(Rat(2), 2 * c.d - 1));
    }
}

TEST_CASE("spec examples: low-order coefficients") {
    ManifoldSeries s12 = solve_invariant(1, 2, ManifoldKind::Stable, 3);
    CHECK(s12.phi.at(2) == 2);
    CHECK(s12.phi.at(3) == 8);
    ManifoldSeries c13 = solve_invariant(1, 3, ManifoldKind::Center, 5);
    CHECK(c13.phi.at(3) == -8);
    CHECK(c13.phi.at(5) == -288);
    ManifoldSeries s_13 = solve_invariant(-1, 3, ManifoldKind::Stable, 5);
    CHECK(s_13.phi.at(3) == -2);
    CHECK(s_13.phi.at(5) == 12);
}

TEST_CASE("gap structure: only orders d + k(d-1) appear") {
    for (int d : {2, 3, 4, 5}) {
        for (int a : {1, -1}) {
            if (a == -1 && d % 2 == 0) continue;
            ManifoldSeries st = solve_invariant(a, d, ManifoldKind::Stable, 60);
            ManifoldSeries ce = solve_invariant(a, d, ManifoldKind::Center, 60);
            for (int n = 2; n <= 60; ++n) {
                bool on_lattice = n >= d && (n - d) % (d - 1) == 0;
                if (!on_lattice) {
                    CHECK(st.phi.at(n) == 0);
                    CHECK(ce.phi.at(n) == 0);
                }
            }
        }
    }
}

TEST_CASE("positivity of stable coefficients for even d") {
    for (int d : {2, 4}) {
        ManifoldSeries st = solve_invariant(1, d, ManifoldKind::Stable, 60);
        for (int n = 0; n <= 60; ++n) CHECK(st.phi.at(n) >= 0);
    }
}

TEST_CASE("published recurrence agrees with the generic solver (a=1)") {
    for (int d : {2, 3, 4}) {
        RatSeries rec = stable_series_recurrence(d, 40);
        ManifoldSeries st = solve_invariant(1, d, ManifoldKind::Stable, 40);
        for (int n = 2; n <= 40; ++n) CHECK(rec.at(n) == st.phi.at(n));
    }
}

TEST_CASE("induced dynamics via independent composition") {
    // stable leading term: a x^d
    ManifoldSeries s12 = solve_invariant(1, 2, ManifoldKind::Stable, 12);
    RatSeries r12 = induced_dynamics(1, 2, s12.phi);
    CHECK(r12.at(2) == 1);
    CHECK(r12.at(1) == 0);
    CHECK(s12.induced.at(2) == 1);
    ManifoldSeries sm3 = solve_invariant(-1, 3, ManifoldKind::Stable, 12);
    CHECK(induced_dynamics(-1, 3, sm3.phi).at(3) == -1);

    // center leading correction: the published constant is resolved by
    // composition to -a 2^(d+1)
    for (int d : {2, 3, 4, 5}) {
        ManifoldSeries ce = solve_invariant(1, d, ManifoldKind::Center, d + 2);
        RatSeries r = induced_dynamics(1, d, ce.phi);
        CHECK(r.at(1) == 1);
        CHECK(r.at(d) == Rat(-1) * pow_rat(Rat(2), d + 1));
        for (int n = 2; n < d; ++n) CHECK(r.at(n) == 0);
    }
    for (int d : {3, 5}) {
        ManifoldSeries ce = solve_invariant(-1, d, ManifoldKind::Center, d + 2);
        RatSeries r = induced_dynamics(-1, d, ce.phi);
        CHECK(r.at(d) == pow_rat(Rat(2), d + 1));
    }
}

TEST_CASE("formal invariance: phi(R(x)) equals the second image component exactly") {
    for (int d : {2, 3}) {
        for (int a : {1, -1}) {
            if (a == -1 && d % 2 == 0) continue;
            for (ManifoldKind kind : {ManifoldKind::Stable, ManifoldKind::Center}) {
                ManifoldSeries ms = solve_invariant(a, d, kind, 40);
                // G = phi - 2a (x + phi)^d through the generic ring
                RatSeries x_plus_phi = ms.phi;
                x_plus_phi.set(1, ms.phi.at(1) + 1);
                RatSeries g = sub(ms.phi, scale(Rat(2 * a), pow(x_plus_phi, d)));
                RatSeries lhs = compose(ms.phi, ms.induced);
                for (int n = 0; n <= 40; ++n) CHECK(lhs.at(n) == g.at(n));
            }
        }
    }
}

TEST_CASE("invariance residual decays at order N+1") {
    const int N = 12;
    ManifoldSeries ms = solve_invariant(1, 2, ManifoldKind::Stable, N);
    double prev = 0;
    for (int k = 4; k <= 10; ++k) {
        RatPoint defect = invariance_defect(ms, Rat(1, 1L << k));
        double mag = std::max(std::abs(to_double(defect.x)), std::abs(to_double(defect.y)));
        if (k > 4) {
            double slope = std::log2(prev / mag);
            CHECK(slope >= N + 1 - 0.2);
        }
        prev = mag;
    }
}

TEST_CASE("functional symmetry of the even-degree stable graph") {
    for (int d : {2, 4}) {
        const int N = 30;
        ManifoldSeries ms = solve_invariant(1, d, ManifoldKind::Stable, N);
        // inner map x -> -x - 2 phi(x)
        RatSeries inner = scale(Rat(-2), ms.phi);
        inner.set(1, inner.at(1) - 1);
        RatSeries lhs = compose(ms.phi, inner);
        for (int n = 0; n <= N; ++n) CHECK(lhs.at(n) == ms.phi.at(n));
    }
}

TEST_CASE("radius estimation") {
    // calibration: geometric series, radius 1
    RatSeries geo(60);
    for (int n = 0; n <= 60; ++n) geo.set(n, Rat(1));
    RadiusEstimate cal = estimate_radius(geo);
    CHECK(std::abs(cal.point_estimate - 1.0) <= 1e-6);
    CHECK(cal.lower <= cal.point_estimate);
    CHECK(cal.point_estimate <= cal.upper);

    RatSeries tiny(10);
    for (int n = 0; n <= 10; ++n) tiny.set(n, Rat(1));
    CHECK_THROWS_AS(estimate_radius(tiny), std::invalid_argument);

    // d = 2 stable series: bracket inside (0, R_2) = (0, 1/8)
    ManifoldSeries s2 = solve_invariant(1, 2, ManifoldKind::Stable, 400);
    RadiusEstimate r2 = estimate_radius(s2.phi);
    CHECK(r2.lower > 0.0);
    CHECK(r2.upper < 0.125);

    // d = 4 stable series: bracket inside (0, R_4) = (0, 0.375)
    ManifoldSeries s4 = solve_invariant(1, 4, ManifoldKind::Stable, 160);
    RadiusEstimate r4 = estimate_radius(s4.phi);
    CHECK(r4.lower > 0.0);
    CHECK(r4.upper < 0.375);
    CHECK(trap_radius(4) == doctest::Approx(0.375));
}

TEST_CASE("series evaluation with tail bound") {
    ManifoldSeries s2 = solve_invariant(1, 2, ManifoldKind::Stable, 50);
    SeriesValue v0 = eval_series(s2.phi, 0.0);
    CHECK(v0.value == 0.0);
    CHECK(v0.tail_bound == 0.0);

    // oracle: exact rational Horner at x = 1/20
    Rat exact = s2.phi.eval(Rat(1, 20));
    SeriesValue v = eval_series(s2.phi, 0.05);
    CHECK(v.value == doctest::Approx(to_double(exact)).epsilon(1e-14));
    CHECK(v.value == doctest::Approx(0.006).epsilon(0.1));
    CHECK(v.tail_bound >= 0.0);
    CHECK(v.tail_bound < 1e-10);

    RadiusEstimate r = estimate_radius(solve_invariant(1, 2, ManifoldKind::Stable, 120).phi);
    CHECK_THROWS_AS(eval_series(s2.phi, 0.2, r), std::domain_error);
}

TEST_CASE("series CSV dump") {
    ManifoldSeries s = solve_invariant(1, 3, ManifoldKind::Stable, 10);
    std::ostringstream os;
    write_series_csv(os, s.phi);
    std::string text = os.str();
    CHECK(text.find("3,2,1,2\n") != std::string::npos);
    CHECK(text.find("5,12,1,12\n") != std::string::npos);
}

TEST_CASE("solver input validation") {
    CHECK_THROWS_AS(solve_invariant(2, 2, ManifoldKind::Stable, 10), std::invalid_argument);
    CHECK_THROWS_AS(solve_invariant(-1, 4, ManifoldKind::Stable, 10), std::invalid_argument);
    CHECK_THROWS_AS(solve_invariant(1, 5, ManifoldKind::Stable, 3), std::invalid_argument);
}
