// Command-line front end: basins, manifold series, cycle data, curve traces,
// and claim certificates, with file outputs matching the library writers.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "secantlab/basin.hpp"
#include "secantlab/cycles.hpp"
#include "secantlab/globalize.hpp"
#include "secantlab/manifold_series.hpp"
#include "secantlab/model_map.hpp"
#include "secantlab/regions.hpp"
#include "secantlab/secant_map.hpp"
#include "secantlab/verify.hpp"

using namespace secantlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailedCertificate = 1;
constexpr int kExitUsage = 2;

std::string default_name(const std::string& subcommand, double a, int d, bool timestamp,
                         const std::string& ext) {
    std::ostringstream os;
    os << subcommand << '_' << a << '_' << d;
    if (timestamp) os << '_' << std::time(nullptr);
    os << ext;
    return os.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// Plain-text config: `key = value` lines, '#' comments.  Flags given on the
// command line take precedence; unknown keys are rejected.
void apply_config(CLI::App& app, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", "line " + std::to_string(lineno) +
                                                       ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw CLI::ValidationError("--config", "unknown key: " + key);
        if (opt->count() == 0) {  // flags override the file
            std::istringstream vs(value);
            std::string piece;
            std::vector<std::string> pieces;
            while (vs >> piece) pieces.push_back(piece);
            opt->add_result(pieces.empty() ? value : pieces[0]);
            for (std::size_t i = 1; i < pieces.size(); ++i) opt->add_result(pieces[i]);
        }
    }
}

IterationPolicy policy_from(double eps, int window, double escape, int max_iter) {
    IterationPolicy p;
    p.eps_converge = eps;
    p.window = window;
    p.escape_radius = escape;
    p.max_iter = max_iter;
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secantlab: basins, invariant manifolds and certificates for the secant-method "
                 "model map T_{a,d}(x,y) = (y - a(x+y)^d, y - 2a(x+y)^d)"};
    app.require_subcommand(1);

    // shared knobs
    double a = 1.0;
    int d = 2;
    std::string out_path;
    std::string config_path;
    int workers = 1;
    bool timestamp = false;
    double eps = 1e-8, escape = 1e6;
    int window = 5, max_iter = 5000;

    auto add_common = [&](CLI::App* cmd, bool with_policy) {
        cmd->add_option("--a", a, "model parameter a (nonzero)")->capture_default_str();
        cmd->add_option("--d", d, "model parameter d (>= 2)")->capture_default_str();
        cmd->add_option("-o,--out", out_path, "output path (default <cmd>_<a>_<d>.<ext>)");
        cmd->add_option("--config", config_path, "plain-text `key = value` config file");
        cmd->add_option("--workers", workers, "worker threads (output is worker-invariant)")
            ->capture_default_str();
        cmd->add_flag("--timestamp", timestamp, "append a timestamp to default file names");
        if (with_policy) {
            cmd->add_option("--eps", eps, "convergence threshold")->capture_default_str();
            cmd->add_option("--conv-window", window, "consecutive small steps required")
                ->capture_default_str();
            cmd->add_option("--escape", escape, "escape radius")->capture_default_str();
            cmd->add_option("--max-iter", max_iter, "iteration budget")->capture_default_str();
        }
    };

    // ---- basin
    auto* basin = app.add_subcommand("basin", "render the model-map basin to PGM/PPM");
    std::vector<double> window_box{-1.5, 1.5, -1.5, 1.5};
    int px = 512;
    basin->add_option("--window", window_box, "xmin xmax ymin ymax")->expected(4);
    basin->add_option("--px", px, "pixels per side")->capture_default_str();
    add_common(basin, true);

    // ---- secant-basin
    auto* sbasin = app.add_subcommand("secant-basin",
                                      "render the secant three-cycle basin for a polynomial");
    std::string poly_text = "1 - 2*x^2 + x^3";
    sbasin->add_option("--poly", poly_text, "polynomial, e.g. \"1 - 2*x^2 + x^3\"")
        ->capture_default_str();
    sbasin->add_option("--window", window_box, "xmin xmax ymin ymax")->expected(4);
    sbasin->add_option("--px", px, "pixels per side")->capture_default_str();
    add_common(sbasin, true);

    // ---- series
    auto* series = app.add_subcommand("series", "invariant-manifold series coefficients to CSV");
    std::string kind = "stable";
    int order = 60;
    series->add_option("--kind", kind, "stable | center")
        ->check(CLI::IsMember({"stable", "center"}))
        ->capture_default_str();
    series->add_option("--order", order, "truncation order")->capture_default_str();
    add_common(series, false);

    // ---- cycle
    auto* cycle = app.add_subcommand("cycle", "two-cycle eigendata row (CSV)");
    add_common(cycle, false);

    // ---- trace
    auto* trace = app.add_subcommand("trace", "invariant-curve traces to CSV");
    std::string what = "stable-even";
    double seed_radius = 1e-6, max_step = 0.004, angle_bound = 0.1, max_arclength = 100.0,
           bisection_tol = 1e-12;
    double x0 = 10.0;
    trace->add_option("--what", what,
                      "stable-even | boundary-even | unstable | bracket")
        ->check(CLI::IsMember({"stable-even", "boundary-even", "unstable", "bracket"}))
        ->capture_default_str();
    trace->add_option("--seed-radius", seed_radius, "seed extent")->capture_default_str();
    trace->add_option("--max-step", max_step, "resampling step bound")->capture_default_str();
    trace->add_option("--angle-bound", angle_bound, "max turning angle (rad)")
        ->capture_default_str();
    trace->add_option("--max-arclength", max_arclength, "arclength budget")->capture_default_str();
    trace->add_option("--bisection-tol", bisection_tol, "crossing bisection tolerance")
        ->capture_default_str();
    trace->add_option("--x0", x0, "abscissa for bracket traces")->capture_default_str();
    add_common(trace, false);

    // ---- verify
    auto* verify = app.add_subcommand("verify", "emit a numerical certificate for a claim");
    std::string claim;
    std::string region_name = "Qstar";
    std::string b_text = "1/2";
    long samples = 10000;
    double margin = 0.0;
    verify->add_option("claim", claim,
                       "invariance | contraction | monotone-lift | sigma-below-antidiagonal | "
                       "gamma-monotone | raster-bound")
        ->required();
    verify->add_option("--region", region_name,
                       "Qb | Qstar | TriangleD | TriangleE | TrapT | BoxK | Omega | D0 | Omega0Plus")
        ->capture_default_str();
    verify->add_option("--b", b_text, "Qb parameter (rational, e.g. 1/2)")->capture_default_str();
    verify->add_option("--samples", samples, "sample count")->capture_default_str();
    verify->add_option("--margin", margin, "required interior margin")->capture_default_str();
    verify->add_option("--px", px, "raster resolution for raster-bound")->capture_default_str();
    add_common(verify, true);

    try {
        app.parse(argc, argv);
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) {
            apply_config(*sub, config_path);
        }

        if (sub == basin || sub == sbasin) {
            GridSpec grid{window_box[0], window_box[1], window_box[2], window_box[3], px, px};
            IterationPolicy pol = policy_from(eps, window, escape, max_iter);
            BasinRaster raster;
            std::string tag;
            if (sub == basin) {
                raster = render_basin(ModelParams(a, d), grid, pol, workers);
                tag = "basin";
            } else {
                Polynomial p = Polynomial::parse(poly_text);
                auto cps = critical_points(p);
                if (cps.empty() || !cps.front().nondegenerate)
                    throw std::domain_error("secant-basin: polynomial has no nondegenerate "
                                            "critical point");
                // use the critical point closest to 0
                double c = cps.front().x;
                for (const auto& cp : cps)
                    if (cp.nondegenerate && std::abs(cp.x) < std::abs(c)) c = cp.x;
                NormalizedPolynomial q = normalize_at_critical(p, c);
                raster = render_basin(q, grid, pol, workers);
                d = q.d();
                a = to_double(model_coefficient(q));
                tag = "secant-basin";
            }
            std::string base = out_path.empty() ? default_name(tag, a, d, timestamp, "")
                                                : out_path;
            {
                std::ostringstream os;
                raster.write_pgm(os);
                write_file(base + ".pgm", os.str());
            }
            {
                std::ostringstream os;
                raster.write_ppm(os);
                write_file(base + ".ppm", os.str());
            }
            {
                std::ostringstream os;
                raster.write_counts_pgm(os);
                write_file(base + "_counts.pgm", os.str());
            }
            std::cout << base << ".pgm " << base << ".ppm " << base << "_counts.pgm\n";
            return kExitOk;
        }

        if (sub == series) {
            int ca = a > 0 ? 1 : -1;
            if (std::abs(std::abs(a) - 1.0) > 0)
                throw std::domain_error("series: a must be canonical (+1 or -1)");
            ManifoldKind mk = kind == "stable" ? ManifoldKind::Stable : ManifoldKind::Center;
            ManifoldSeries ms = solve_invariant(ca, d, mk, order);
            std::ostringstream os;
            write_series_csv(os, ms.phi);
            std::string path =
                out_path.empty() ? default_name("series", a, d, timestamp, ".csv") : out_path;
            write_file(path, os.str());
            std::cout << path << '\n';
            return kExitOk;
        }

        if (sub == cycle) {
            CycleData cd = two_cycle_data(d);
            std::ostringstream os;
            char buf[200];
            os << "d,lambda_minus,lambda_plus,m_minus,m_plus\n";
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", d, cd.lambda_minus,
                          cd.lambda_plus, cd.m_minus, cd.m_plus);
            os << buf;
            std::string path =
                out_path.empty() ? default_name("cycle", 1.0, d, timestamp, ".csv") : out_path;
            write_file(path, os.str());
            std::cout << path << '\n';
            return kExitOk;
        }

        if (sub == trace) {
            TracePolicy tp{seed_radius, max_step, angle_bound, max_arclength, bisection_tol};
            std::ostringstream os;
            std::ostringstream meta;
            if (what == "stable-even") {
                StableTrace st = trace_stable_origin_even(d, tp);
                st.curve.write_csv(os);
                meta << "p: " << st.p << '\n';
            } else if (what == "boundary-even") {
                BoundaryAssembly ba = assemble_basin_boundary_even(d, tp);
                ba.curve.write_csv(os);
                meta << "p: " << ba.p << "\nq_plus: " << ba.q_plus.x << ' ' << ba.q_plus.y
                     << "\nq_minus: " << ba.q_minus.x << ' ' << ba.q_minus.y
                     << "\ntangent_angle_at_left: " << ba.tangent_angle_at_left << '\n';
            } else if (what == "unstable") {
                UnstableTrace ut = trace_unstable_two_cycle(d, tp);
                ut.curve.write_csv(os);
                meta << "p_hat: " << ut.p_hat << "\nx0_crossing: " << ut.x0_crossing << '\n';
            } else {
                int ca = a > 0 ? 1 : -1;
                Point pt = bracket_stable_point(d, ca, x0, tp);
                ModelParams params(static_cast<double>(ca), d);
                Polyline orbit;
                Point z = pt;
                orbit.push(z);
                for (int k = 0; k < 20; ++k) {
                    z = eval_raw(params, eval_raw(params, z));
                    orbit.push(z);
                }
                orbit.write_csv(os);
                meta << "point: " << pt.x << ' ' << pt.y << '\n';
            }
            std::string path =
                out_path.empty() ? default_name("trace", a, d, timestamp, ".csv") : out_path;
            write_file(path, os.str());
            std::cout << path << '\n' << meta.str();
            return kExitOk;
        }

        if (sub == verify) {
            Certificate cert;
            if (claim == "invariance") {
                Region region = build_region(region_name, parse_rational(b_text), d);
                cert = check_forward_invariance(ModelParams(a, d), region, samples, margin,
                                                workers);
            } else if (claim == "contraction") {
                cert = check_contraction(d, a > 0 ? 1 : -1, samples);
            } else if (claim == "monotone-lift") {
                cert = check_pointwise_inequality(d, PointwiseClaim::MonotoneLiftOnE, samples);
            } else if (claim == "sigma-below-antidiagonal") {
                cert = check_pointwise_inequality(d, PointwiseClaim::SigmaPlusBelowAntidiagonal,
                                                  samples);
            } else if (claim == "gamma-monotone") {
                cert = check_pointwise_inequality(d, PointwiseClaim::GammaCurvesMonotone, samples);
            } else if (claim == "raster-bound") {
                IterationPolicy pol = policy_from(eps, window, escape, max_iter);
                GridSpec grid{-1.5, 1.5, -1.5, 1.5, px, px};
                BasinRaster raster = render_basin(ModelParams(a, d), grid, pol, workers);
                cert = check_raster_bound(raster, build_region(region_name, parse_rational(b_text), d));
            } else {
                std::cerr << "unknown claim: " << claim << '\n';
                return kExitUsage;
            }
            std::string text = cert.report();
            if (!out_path.empty()) write_file(out_path, text);
            std::cout << text;
            return cert.pass ? kExitOk : kExitFailedCertificate;
        }

        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
