#include <doctest.h>

#include <cmath>
#include <vector>

#include "secantlab/model_map.hpp"
#include "secantlab/secant_map.hpp"

using namespace secantlab;

namespace {

// independent high-precision secant orbit (long double throughout)
struct LongDoubleSecant {
    std::vector<long double> c;

    explicit LongDoubleSecant(const Polynomial& p) {
        for (const Rat& q : p.coeffs()) c.push_back(static_cast<long double>(to_double(q)));
    }
    long double eval(long double x) const {
        long double acc = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * x + c[k];
        return acc;
    }
    long double dval(long double x) const {
        long double acc = c.back() * static_cast<long double>(c.size() - 1);
        for (std::size_t k = c.size() - 1; k-- > 1;) acc = acc * x + c[k] * static_cast<long double>(k);
        return acc;
    }
    bool step(long double& x, long double& y) const {
        long double py = eval(y), ynext;
        if (std::abs(x - y) < 1e-14L * (1 + std::abs(x) + std::abs(y))) {
            long double dy = dval(y);
            if (dy == 0) return false;
            ynext = y - py / dy;
        } else {
            long double diff = eval(x) - py;
            if (diff == 0) return false;
            ynext = y - py * (x - y) / diff;
        }
        x = y;
        y = ynext;
        return std::isfinite(static_cast<double>(y)) || std::abs(y) < 1e300L;
    }
};

}  // namespace

TEST_CASE("polynomial parsing, evaluation, derivatives") {
    Polynomial p = Polynomial::parse("1 - 2*x^2 + x^3");
    CHECK(p.degree() == 3);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 0);
    CHECK(p.coeff(2) == -2);
    CHECK(p.coeff(3) == 1);
    CHECK(p(2.0) == doctest::Approx(1.0));
    CHECK(p.eval_exact(Rat(1, 2)) == Rat(1) - Rat(1, 2) + Rat(1, 8));

    Polynomial q = Polynomial::parse("3/2 x^4 - x + 1/3");
    CHECK(q.coeff(4) == Rat(3, 2));
    CHECK(q.coeff(1) == -1);
    CHECK(q.coeff(0) == Rat(1, 3));

    Polynomial dp = p.derivative();
    CHECK(dp.coeff(1) == -4);
    CHECK(dp.coeff(2) == 3);

    CHECK_THROWS_AS(Polynomial::parse("1 + y"), std::invalid_argument);
    CHECK_THROWS_AS(Polynomial::parse(""), std::invalid_argument);

    // round trip through to_string
    Polynomial r = Polynomial::parse(p.to_string());
    CHECK(r.coeffs() == p.coeffs());
}

TEST_CASE("real roots") {
    Polynomial p = Polynomial::parse("1 - 2*x^2 + x^3");  // roots 1, (1 +/- sqrt 5)/2
    auto roots = real_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx((1 - std::sqrt(5.0)) / 2).epsilon(1e-12));
    CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(roots[2] == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-12));

    // double root: x^2 (x-1)^2 has roots 0, 1 (even multiplicity)
    Polynomial dbl = Polynomial::parse("x^2 - 2*x^3 + x^4");
    auto droots = real_roots(dbl);
    REQUIRE(droots.size() == 2);
    CHECK(std::abs(droots[0]) < 1e-10);
    CHECK(droots[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("secant_step: arithmetic, fixed points, blow-up") {
    Polynomial p = Polynomial::parse("x^2 - 1");
    ExtendedPoint s = secant_step(p, {0, 2});
    CHECK(s.finite);
    CHECK(s.p.x == 2.0);
    CHECK(s.p.y == doctest::Approx(0.5));

    // root fixed point via derivative continuation
    ExtendedPoint fp = secant_step(p, {1, 1});
    CHECK(fp.finite);
    CHECK(fp.p.x == 1.0);
    CHECK(fp.p.y == doctest::Approx(1.0));

    // critical point: zero derivative with p != 0 jumps to infinity
    Polynomial cubic = Polynomial::parse("1 - 2*x^2 + x^3");
    ExtendedPoint blown = secant_step(cubic, {0, 0});
    CHECK_FALSE(blown.finite);
    CHECK(blown.last_finite.x == 0.0);

    // horizontal secant: p(x) = p(y), x != y
    ExtendedPoint hor = secant_step(p, {-2, 2});
    CHECK_FALSE(hor.finite);

    // rational roots are exact fixed points
    Polynomial pr = Polynomial::parse("2 - 3*x + x^2");  // roots 1, 2
    for (double r : {1.0, 2.0}) {
        ExtendedPoint e = secant_step(pr, {r, r});
        CHECK(e.finite);
        CHECK(e.p.x == r);
        CHECK(e.p.y == r);
    }
}

TEST_CASE("critical points with nondegeneracy") {
    auto cp1 = critical_points(Polynomial::parse("1 - 2*x^2 + x^3"));
    REQUIRE(cp1.size() == 2);
    CHECK(std::abs(cp1[0].x) < 1e-12);
    CHECK(cp1[0].nondegenerate);
    CHECK(cp1[1].x == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(cp1[1].nondegenerate);

    auto cp2 = critical_points(Polynomial::parse("x^2 - 1"));
    REQUIRE(cp2.size() == 1);
    CHECK(std::abs(cp2[0].x) < 1e-12);
    CHECK(cp2[0].nondegenerate);

    auto cp3 = critical_points(Polynomial::parse("1 - 8*x^2 + 8*x^4"));
    REQUIRE(cp3.size() == 3);
    CHECK(cp3[0].x == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(cp3[1].x) < 1e-12);
    CHECK(cp3[2].x == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("normalization at a critical point") {
    Polynomial p = Polynomial::parse("1 - 2*x^2 + x^3");
    NormalizedPolynomial q = normalize_at_critical(p, 0.0);
    CHECK(q.d() == 2);
    CHECK(q.a2() == -2);
    CHECK(q.poly().coeffs() == p.coeffs());

    NormalizedPolynomial q2 = normalize_at_critical(Polynomial::parse("2 - 4*x^2 + 2*x^3"), 0.0);
    CHECK(q2.poly().coeffs() == p.coeffs());

    NormalizedPolynomial q3 = normalize_at_critical(Polynomial::parse("1 - 8*x^2 + 8*x^4"), 0.0);
    CHECK(q3.d() == 3);

    CHECK_THROWS_AS(normalize_at_critical(p, 0.5), std::domain_error);  // not critical
    // degenerate: p(c) = 0 at the critical point of x^2(3 - 2x)... use x^2 - x^3 shifted
    Polynomial deg = Polynomial::parse("x^2 - x^3");
    CHECK_THROWS_AS(normalize_at_critical(deg, 0.0), std::domain_error);
}

TEST_CASE("model coefficient") {
    CHECK(model_coefficient(normalize_at_critical(Polynomial::parse("1 - 2*x^2 + x^3"), 0.0)) ==
          Rat(4));
    CHECK(model_coefficient(normalize_at_critical(Polynomial::parse("1 - 8*x^2 + 8*x^4"), 0.0)) ==
          Rat(64));
    CHECK(model_coefficient(normalize_at_critical(Polynomial::parse("1 + x^2 + x^3"), 0.0)) ==
          Rat(1));
}

TEST_CASE("three-cycle classification") {
    NormalizedPolynomial q(Polynomial::parse("1 - 2*x^2 + x^3"));
    IterationPolicy policy;  // defaults: eps 1e-8, window 5, escape 1e6, max 5000

    ThreeCycleResult on = classify_three_cycle(q, {0, 0}, policy);
    CHECK(on.label == ThreeCycleLabel::InBasin);
    CHECK(on.on_cycle);

    // oracle for (0.01, -0.01): long double orbit shows the superexponential
    // three-cycle pattern (checked below), so the classifier must agree
    {
        LongDoubleSecant lds(q.poly());
        long double x = 0.01L, y = -0.01L;
        int small_hits = 0;
        for (int k = 0; k < 100000; ++k) {
            if (!lds.step(x, y)) break;
            if (std::abs(static_cast<double>(x)) < 1e-8 &&
                std::abs(static_cast<double>(y)) > 1e6)
                ++small_hits;
        }
        CHECK(small_hits >= 1);  // the orbit does visit (small, huge) states
    }
    ThreeCycleResult near = classify_three_cycle(q, {0.01, -0.01}, policy);
    CHECK(near.label == ThreeCycleLabel::InBasin);

    // far point converging to a real root of p
    ThreeCycleResult root = classify_three_cycle(q, {5, 6}, policy);
    CHECK(root.label == ThreeCycleLabel::NotInBasin);
}

TEST_CASE("divided-difference continuity near the diagonal") {
    Polynomial p = Polynomial::parse("1 - 2*x^2 + x^3");
    double x = 0.7;  // p'(0.7) != 0
    Point base = secant_step(p, {x, x}).p;
    double prev = 0;
    for (int k = 4; k <= 9; ++k) {
        double h = std::pow(10.0, -k);
        Point off = secant_step(p, {x, x + h}).p;
        double gap = dist(off, base);
        if (k > 4) CHECK(gap < prev * 0.5);  // shrinks with h
        prev = gap;
        CHECK(gap < 10 * h);
    }
}

TEST_CASE("third iterate matches the model map at order d+1") {
    struct Case {
        const char* poly;
        int d;
    };
    for (const Case& c : {Case{"1 - 2*x^2 + x^3", 2}, Case{"1 - 8*x^2 + 8*x^4", 3}}) {
        NormalizedPolynomial q(Polynomial::parse(c.poly));
        double a = to_double(model_coefficient(q));
        ModelParams model(a, c.d);
        std::vector<double> radii, defects;
        for (int k = 4; k <= 10; ++k) {
            double r = std::pow(2.0, -k);
            double worst = 0.0;
            for (int j = 0; j < 64; ++j) {
                double th = 2 * M_PI * (j + 0.5) / 64;
                Point z{r * std::cos(th), r * std::sin(th)};
                Point cur = z;
                bool ok = true;
                for (int step = 0; step < 3 && ok; ++step) {
                    ExtendedPoint e = secant_step(q.poly(), cur);
                    cur = e.p;
                    ok = std::isfinite(cur.x) && std::isfinite(cur.y);
                }
                if (!ok) continue;
                Point t = eval(model, z);
                worst = std::max(worst, std::max(std::abs(cur.x - t.x), std::abs(cur.y - t.y)));
            }
            radii.push_back(std::log2(r));
            defects.push_back(std::log2(worst));
        }
        // least-squares slope of log2(defect) vs log2(r)
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < radii.size(); ++i) {
            mx += radii[i];
            my += defects[i];
        }
        mx /= radii.size();
        my /= defects.size();
        double num = 0, den = 0;
        for (std::size_t i = 0; i < radii.size(); ++i) {
            num += (radii[i] - mx) * (defects[i] - my);
            den += (radii[i] - mx) * (radii[i] - mx);
        }
        double slope = num / den;
        CHECK(slope >= c.d + 1 - 0.1);
    }
}
