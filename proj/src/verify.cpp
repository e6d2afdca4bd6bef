#include "secantlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

namespace secantlab {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double radical_inverse(unsigned long i, unsigned base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}

}  // namespace

Point QuasiSampler::at(long i) const {
    unsigned long k = static_cast<unsigned long>(i) + 1 + static_cast<unsigned long>(seed) * 7919;
    return {radical_inverse(k, 2), radical_inverse(k, 3)};
}

std::string Certificate::report() const {
    std::ostringstream os;
    os << "claim: " << claim_id << '\n';
    os << "samples: " << samples << '\n';
    os << "seed: " << seed << '\n';
    for (const auto& [k, v] : extras) os << k << ": " << v << '\n';
    os << "worst_margin: " << fmt(worst_margin) << '\n';
    os << "worst_point: " << fmt(worst_point.x) << ' ' << fmt(worst_point.y) << '\n';
    os << (pass ? "PASS" : "FAIL") << '\n';
    return os.str();
}

Certificate check_forward_invariance(const ModelParams& params, const Region& region,
                                     long samples, double margin, int workers) {
    if (samples < 1) throw std::invalid_argument("check_forward_invariance: need samples >= 1");
    if (!region.boundary || region.boundary_length <= 0)
        throw std::invalid_argument("check_forward_invariance: region has no closed boundary");
    if (workers < 1) throw std::invalid_argument("check_forward_invariance: workers must be >= 1");

    std::vector<double> sd(static_cast<std::size_t>(samples));
    std::vector<Point> src(static_cast<std::size_t>(samples));
    auto run = [&](long i0, long i1) {
        for (long i = i0; i < i1; ++i) {
            double s = region.boundary_length * (i + 0.5) / samples;
            Point b = region.boundary(s);
            Point image = eval_raw(params, b);
            src[static_cast<std::size_t>(i)] = b;
            sd[static_cast<std::size_t>(i)] =
                finite(image) ? region.signed_distance(image)
                              : -std::numeric_limits<double>::infinity();
        }
    };
    if (workers == 1) {
        run(0, samples);
    } else {
        std::vector<std::thread> pool;
        long chunk = (samples + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            long i0 = w * chunk, i1 = std::min<long>(samples, i0 + chunk);
            if (i0 >= i1) break;
            pool.emplace_back(run, i0, i1);
        }
        for (auto& t : pool) t.join();
    }

    Certificate cert;
    cert.claim_id = "forward_invariance(" + region.name + ")";
    cert.samples = samples;
    cert.seed = 0;  // arclength-uniform sampling, no randomness
    long worst = 0;
    for (long i = 1; i < samples; ++i)
        if (sd[static_cast<std::size_t>(i)] < sd[static_cast<std::size_t>(worst)]) worst = i;
    cert.worst_margin = sd[static_cast<std::size_t>(worst)] - margin;
    cert.worst_point = src[static_cast<std::size_t>(worst)];
    cert.pass = cert.worst_margin > 0;
    cert.extras.push_back({"margin", fmt(margin)});
    cert.extras.push_back({"a", fmt(params.a())});
    cert.extras.push_back({"d", std::to_string(params.d())});
    Point wimg = eval_raw(params, cert.worst_point);
    cert.extras.push_back({"worst_image", fmt(wimg.x) + " " + fmt(wimg.y)});
    return cert;
}

Certificate check_pointwise_inequality(int d, PointwiseClaim claim, long samples, unsigned seed) {
    if (d < 3 || d % 2 == 0)
        throw std::domain_error("check_pointwise_inequality: requires odd d >= 3");
    if (samples < 1) throw std::invalid_argument("check_pointwise_inequality: need samples >= 1");
    QuasiSampler qs{seed};

    Certificate cert;
    cert.samples = samples;
    cert.seed = seed;
    double worst = std::numeric_limits<double>::infinity();
    Point worst_pt{};

    switch (claim) {
        case PointwiseClaim::MonotoneLiftOnE: {
            cert.claim_id = "monotone_lift_on_E";
            // second component of T^{-2} minus y: G(x,y) = 2y - 6x + 2(x-y)^{1/d}
            const Point t0{0.0, 1.0}, t1{-0.5, 0.0}, t2{-1.0 / 3.0, 0.0};
            for (long i = 0; i < samples; ++i) {
                Point u = qs.at(i);
                if (u.x + u.y > 1.0) u = {1.0 - u.x, 1.0 - u.y};  // fold into the triangle
                Point p{t0.x + u.x * (t1.x - t0.x) + u.y * (t2.x - t0.x),
                        t0.y + u.x * (t1.y - t0.y) + u.y * (t2.y - t0.y)};
                double g = 2 * p.y - 6 * p.x + 2 * nth_root(p.x - p.y, d);
                if (g < worst) {
                    worst = g;
                    worst_pt = p;
                }
            }
            break;
        }
        case PointwiseClaim::SigmaPlusBelowAntidiagonal: {
            cert.claim_id = "sigma1_plus_below_antidiagonal";
            for (long i = 0; i < samples; ++i) {
                double t = 20.0 * qs.at(i).x + 1e-9;
                Point p = curves::sigma1_plus(t, d);
                double g = -p.x - p.y;  // > 0 iff below {y = -x}
                if (g < worst) {
                    worst = g;
                    worst_pt = p;
                }
            }
            break;
        }
        case PointwiseClaim::GammaCurvesMonotone: {
            cert.claim_id = "gamma_sigma_graphs_decreasing";
            // analytic bound d(gamma_1^+)/dy <= 1/d - 1 < 0 plus sampled
            // finite differences of all four graphs
            cert.extras.push_back({"derivative_bound", fmt(1.0 / d - 1.0)});
            const double h = 1e-5;
            for (long i = 0; i < samples; ++i) {
                double u = qs.at(i).x;
                double y = 1.0 + 30.0 * u;
                double g1 = (curves::gamma_plus_x(y + h, d) - curves::gamma_plus_x(y, d)) / h;
                double g2 = (curves::gamma_minus_x(y + h, d) - curves::gamma_minus_x(y, d)) / h;
                double yn = -y;
                double g3 = (curves::sigma_minus_x(yn - h, d) - curves::sigma_minus_x(yn, d)) / h;
                double g4 = (curves::sigma_plus_x(yn - h, d) - curves::sigma_plus_x(yn, d)) / h;
                // decreasing-graph margins: -dx/dy for each graph, plus the
                // closed-form bound -(1/d - 1) itself
                double g = std::min({-g1, -g2, g3, g4, 1.0 - 1.0 / d});
                if (g < worst) {
                    worst = g;
                    worst_pt = {y, 0};
                }
            }
            break;
        }
    }

    cert.worst_margin = worst;
    cert.worst_point = worst_pt;
    cert.pass = worst > 0;
    cert.extras.push_back({"d", std::to_string(d)});
    return cert;
}

Certificate check_contraction(int d, int a, long samples, unsigned seed) {
    if (d < 3 || d % 2 == 0) throw std::domain_error("check_contraction: requires odd d >= 3");
    if (a != 1 && a != -1) throw std::domain_error("check_contraction: a must be +1 or -1");
    if (samples < 1) throw std::invalid_argument("check_contraction: need samples >= 1");
    QuasiSampler qs{seed};
    ModelParams params(static_cast<double>(a), d);

    Certificate cert;
    cert.samples = samples;
    cert.seed = seed;
    const double lambda = a == 1 ? double(d) * d / ((1.0 - 2 * d) * (1.0 - 2 * d)) : 0.5;
    cert.extras.push_back({"lambda", fmt(lambda)});
    cert.extras.push_back({"d", std::to_string(d)});
    cert.extras.push_back({"a", std::to_string(a)});
    cert.claim_id = a == 1 ? "double_step_contraction_omega" : "double_step_contraction_D0";

    double worst = std::numeric_limits<double>::infinity();
    Point worst_pt{};
    long produced = 0, i = 0;
    while (produced < samples && i < samples * 64) {
        Point u = qs.at(i++);
        Point z;
        if (a == 1) {
            // sample E2 between the gamma graphs and pull back into Omega
            double y = 1.0 + 30.0 * u.y * u.y;
            double lo = curves::gamma_minus_x(y, d), hi = curves::gamma_plus_x(y, d);
            Point w{lo + (hi - lo) * u.x, y};
            z = inverse(params, w, Branch::Plus);
            if (!(z.x > 0)) continue;
        } else {
            // sample D0 between the sigma_0 graphs at quasi-random parameter
            double t = 20.0 * u.y * u.y + 1e-12;
            Point plo = curves::sigma0_minus(t, d);
            Point phi_ = curves::sigma0_plus(t, d);
            z = {plo.x + (phi_.x - plo.x) * u.x, plo.y + (phi_.y - plo.y) * u.x};
            // the straight chord may leave the sliver between the curves
            Point w2 = eval_raw(params, eval_raw(params, z));
            if (!(w2.x >= 0 && w2.y <= 0) || !(z.x > 0)) continue;
        }
        ++produced;
        Point z2 = eval_raw(params, eval_raw(params, z));
        double margin;
        if (a == 1) {
            bool in_q4star = z2.x >= 0.0 && z2.y <= -1.0;
            margin = std::min(lambda * z.x - z2.x, in_q4star ? 1.0 : -1.0);
            margin = std::min(margin, z2.x);  // claim includes 0 <= x2
        } else {
            bool in_q4 = z2.x >= 0.0 && z2.y <= 0.0;
            margin = std::min(0.5 * z.x - z2.x, in_q4 ? 1.0 : -1.0);
        }
        if (margin < worst) {
            worst = margin;
            worst_pt = z;
        }
    }
    if (produced < samples)
        throw std::runtime_error("check_contraction: sampler failed to fill the region");
    cert.worst_margin = worst;
    cert.worst_point = worst_pt;
    cert.pass = worst > 0;
    return cert;
}

Certificate check_raster_bound(const BasinRaster& raster, const Region& region) {
    Certificate cert;
    cert.claim_id = "raster_bound(" + region.name + ")";
    cert.seed = 0;
    double worst = std::numeric_limits<double>::infinity();
    Point worst_pt{};
    long n = 0;
    for (int iy = 0; iy < raster.grid.height; ++iy)
        for (int ix = 0; ix < raster.grid.width; ++ix) {
            if (raster.label(ix, iy) != Label::Converged) continue;
            ++n;
            Point c = raster.grid.center(ix, iy);
            double m = region.signed_distance ? region.signed_distance(c)
                                              : (region.contains(c) ? 1.0 : -1.0);
            if (m < worst) {
                worst = m;
                worst_pt = c;
            }
        }
    if (n == 0) throw std::domain_error("check_raster_bound: raster has no Converged pixels");
    cert.samples = n;
    cert.worst_margin = worst;
    cert.worst_point = worst_pt;
    cert.pass = worst > 0;
    return cert;
}

}  // namespace secantlab
