#include "secantlab/basin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <ostream>
#include <thread>

namespace secantlab {

Classification classify_point(const ModelParams& params, Point pt, const IterationPolicy& policy) {
    policy.validate();
    if (!finite(pt)) throw std::invalid_argument("classify_point: point must be finite");

    // Decreasing-ordinate escape test (even d): in canonical coordinates the
    // second component never increases, so a negative ordinate can never
    // return to the origin.  mu < 0 flips the half plane.
    const bool even = !params.odd();
    double mu_sign = 1.0;
    if (even) mu_sign = canonicalize(params).mu < 0 ? -1.0 : 1.0;

    Point cur = pt;
    int run = 0;
    int run_start = 0;
    for (int k = 0; k <= policy.max_iter; ++k) {
        if (norm_inf(cur) < policy.eps_converge) {
            if (run == 0) run_start = k;
            if (++run >= policy.window)
                return {Label::Converged, static_cast<std::uint32_t>(run_start)};
        } else
            run = 0;
        if (norm_inf(cur) > policy.escape_radius)
            return {Label::Escaped, static_cast<std::uint32_t>(k)};
        if (even && k >= 1 && mu_sign * cur.y < 0.0)
            return {Label::Escaped, static_cast<std::uint32_t>(k)};
        Point next = eval_raw(params, cur);
        if (!finite(next)) return {Label::Escaped, static_cast<std::uint32_t>(k + 1)};
        cur = next;
    }
    return {Label::Undecided, static_cast<std::uint32_t>(policy.max_iter)};
}

Classification classify_point(const NormalizedPolynomial& q, Point pt,
                              const IterationPolicy& policy) {
    ThreeCycleResult r = classify_three_cycle(q, pt, policy);
    Label l = r.label == ThreeCycleLabel::InBasin
                  ? (r.on_cycle ? Label::OnCycle : Label::Converged)
                  : (r.label == ThreeCycleLabel::NotInBasin ? Label::Escaped : Label::Undecided);
    return {l, static_cast<std::uint32_t>(r.steps)};
}

namespace {

template <class Map>
BasinRaster render_impl(const Map& map, std::string subject, const GridSpec& grid,
                        const IterationPolicy& policy, int workers) {
    grid.validate();
    policy.validate();
    if (workers < 1) throw std::invalid_argument("render_basin: workers must be >= 1");

    BasinRaster out;
    out.grid = grid;
    out.policy = policy;
    out.subject = std::move(subject);
    std::size_t n = static_cast<std::size_t>(grid.width) * grid.height;
    out.labels.resize(n);
    out.counts.resize(n);

    auto rows = [&](int y0, int y1) {
        for (int iy = y0; iy < y1; ++iy)
            for (int ix = 0; ix < grid.width; ++ix) {
                Classification c = classify_point(map, grid.center(ix, iy), policy);
                std::size_t idx = static_cast<std::size_t>(iy) * grid.width + ix;
                out.labels[idx] = static_cast<std::uint8_t>(c.label);
                out.counts[idx] = c.count;
            }
    };

    if (workers == 1) {
        rows(0, grid.height);
    } else {
        std::vector<std::thread> pool;
        int chunk = (grid.height + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            int y0 = w * chunk, y1 = std::min(grid.height, y0 + chunk);
            if (y0 >= y1) break;
            pool.emplace_back(rows, y0, y1);
        }
        for (auto& t : pool) t.join();
    }
    return out;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
    out.push_back((v >> 16) & 0xff);
    out.push_back((v >> 24) & 0xff);
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t& pos) {
    std::uint32_t v = in[pos] | (in[pos + 1] << 8) | (in[pos + 2] << 16) |
                      (static_cast<std::uint32_t>(in[pos + 3]) << 24);
    pos += 4;
    return v;
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) out.push_back((bits >> (8 * i)) & 0xff);
}

double get_f64(const std::vector<std::uint8_t>& in, std::size_t& pos) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
    pos += 8;
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

BasinRaster render_basin(const ModelParams& params, const GridSpec& grid,
                         const IterationPolicy& policy, int workers) {
    char subject[64];
    std::snprintf(subject, sizeof subject, "model a=%.17g d=%d", params.a(), params.d());
    return render_impl(params, subject, grid, policy, workers);
}

BasinRaster render_basin(const NormalizedPolynomial& q, const GridSpec& grid,
                         const IterationPolicy& policy, int workers) {
    return render_impl(q, "secant " + q.poly().to_string(), grid, policy, workers);
}

std::size_t BasinRaster::count_of(Label l) const {
    return static_cast<std::size_t>(
        std::count(labels.begin(), labels.end(), static_cast<std::uint8_t>(l)));
}

std::vector<std::uint8_t> BasinRaster::to_bytes() const {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), {'S', 'L', 'B', '1'});
    put_u32(out, static_cast<std::uint32_t>(grid.width));
    put_u32(out, static_cast<std::uint32_t>(grid.height));
    put_f64(out, grid.xmin);
    put_f64(out, grid.xmax);
    put_f64(out, grid.ymin);
    put_f64(out, grid.ymax);
    put_f64(out, policy.eps_converge);
    put_u32(out, static_cast<std::uint32_t>(policy.window));
    put_f64(out, policy.escape_radius);
    put_u32(out, static_cast<std::uint32_t>(policy.max_iter));
    put_u32(out, static_cast<std::uint32_t>(subject.size()));
    out.insert(out.end(), subject.begin(), subject.end());
    out.insert(out.end(), labels.begin(), labels.end());
    for (std::uint32_t c : counts) put_u32(out, c);
    return out;
}

BasinRaster BasinRaster::from_bytes(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), "SLB1", 4) != 0)
        throw std::runtime_error("BasinRaster: bad magic");
    std::size_t pos = 4;
    BasinRaster out;
    out.grid.width = static_cast<int>(get_u32(bytes, pos));
    out.grid.height = static_cast<int>(get_u32(bytes, pos));
    out.grid.xmin = get_f64(bytes, pos);
    out.grid.xmax = get_f64(bytes, pos);
    out.grid.ymin = get_f64(bytes, pos);
    out.grid.ymax = get_f64(bytes, pos);
    out.policy.eps_converge = get_f64(bytes, pos);
    out.policy.window = static_cast<int>(get_u32(bytes, pos));
    out.policy.escape_radius = get_f64(bytes, pos);
    out.policy.max_iter = static_cast<int>(get_u32(bytes, pos));
    std::uint32_t slen = get_u32(bytes, pos);
    out.subject.assign(bytes.begin() + pos, bytes.begin() + pos + slen);
    pos += slen;
    std::size_t n = static_cast<std::size_t>(out.grid.width) * out.grid.height;
    out.labels.assign(bytes.begin() + pos, bytes.begin() + pos + n);
    pos += n;
    out.counts.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.counts[i] = get_u32(bytes, pos);
    return out;
}

namespace {

void write_header(std::ostream& os, const BasinRaster& r, const char* magic, int maxval) {
    os << magic << "\n# " << r.subject << " window=[" << r.grid.xmin << ',' << r.grid.xmax << "]x["
       << r.grid.ymin << ',' << r.grid.ymax << "] eps=" << r.policy.eps_converge
       << " conv_window=" << r.policy.window << " escape=" << r.policy.escape_radius
       << " max_iter=" << r.policy.max_iter
       << " gray: converged=255 escaped=0 undecided=128 oncycle=200\n"
       << r.grid.width << ' ' << r.grid.height << '\n'
       << maxval << '\n';
}

}  // namespace

void BasinRaster::write_pgm(std::ostream& os) const {
    write_header(os, *this, "P5", 255);
    static constexpr std::uint8_t gray[4] = {255, 0, 128, 200};
    // PGM rows run top to bottom
    for (int iy = grid.height - 1; iy >= 0; --iy)
        for (int ix = 0; ix < grid.width; ++ix)
            os.put(static_cast<char>(gray[labels[static_cast<std::size_t>(iy) * grid.width + ix]]));
}

void BasinRaster::write_ppm(std::ostream& os) const {
    write_header(os, *this, "P6", 255);
    static constexpr std::uint8_t rgb[4][3] = {
        {220, 30, 30}, {255, 255, 255}, {160, 160, 160}, {255, 190, 40}};
    for (int iy = grid.height - 1; iy >= 0; --iy)
        for (int ix = 0; ix < grid.width; ++ix) {
            const auto* c = rgb[labels[static_cast<std::size_t>(iy) * grid.width + ix]];
            os.put(static_cast<char>(c[0]));
            os.put(static_cast<char>(c[1]));
            os.put(static_cast<char>(c[2]));
        }
}

void BasinRaster::write_counts_pgm(std::ostream& os) const {
    write_header(os, *this, "P5", 65535);
    for (int iy = grid.height - 1; iy >= 0; --iy)
        for (int ix = 0; ix < grid.width; ++ix) {
            std::uint32_t c = counts[static_cast<std::size_t>(iy) * grid.width + ix];
            std::uint16_t v = static_cast<std::uint16_t>(std::min<std::uint32_t>(c, 65535));
            os.put(static_cast<char>(v >> 8));  // 16-bit PGM is big endian
            os.put(static_cast<char>(v & 0xff));
        }
}

std::vector<Point> boundary_points(const BasinRaster& raster, Label label) {
    const GridSpec& g = raster.grid;
    double hx = (g.xmax - g.xmin) / g.width, hy = (g.ymax - g.ymin) / g.height;
    std::vector<Point> out;
    auto is = [&](int ix, int iy) { return raster.label(ix, iy) == label; };
    for (int iy = 0; iy < g.height; ++iy)
        for (int ix = 0; ix < g.width; ++ix) {
            if (!is(ix, iy)) continue;
            Point c = g.center(ix, iy);
            if (ix + 1 < g.width && !is(ix + 1, iy)) out.push_back({c.x + 0.5 * hx, c.y});
            if (ix > 0 && !is(ix - 1, iy)) out.push_back({c.x - 0.5 * hx, c.y});
            if (iy + 1 < g.height && !is(ix, iy + 1)) out.push_back({c.x, c.y + 0.5 * hy});
            if (iy > 0 && !is(ix, iy - 1)) out.push_back({c.x, c.y - 0.5 * hy});
        }
    return out;
}

namespace {

// uniform bucket grid over a point cloud for nearest-point queries
struct PointGrid {
    double x0, y0, cell;
    int nx, ny;
    std::vector<std::vector<int>> buckets;
    const std::vector<Point>& pts;

    explicit PointGrid(const std::vector<Point>& points, double cell_size)
        : cell(cell_size), pts(points) {
        double x1, y1;
        x0 = y0 = std::numeric_limits<double>::infinity();
        x1 = y1 = -std::numeric_limits<double>::infinity();
        for (const Point& p : pts) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
        nx = std::max(1, static_cast<int>((x1 - x0) / cell) + 1);
        ny = std::max(1, static_cast<int>((y1 - y0) / cell) + 1);
        buckets.resize(static_cast<std::size_t>(nx) * ny);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            int cx = std::clamp(static_cast<int>((pts[i].x - x0) / cell), 0, nx - 1);
            int cy = std::clamp(static_cast<int>((pts[i].y - y0) / cell), 0, ny - 1);
            buckets[static_cast<std::size_t>(cy) * nx + cx].push_back(static_cast<int>(i));
        }
    }

    double nearest(Point p) const {
        int cx = std::clamp(static_cast<int>((p.x - x0) / cell), 0, nx - 1);
        int cy = std::clamp(static_cast<int>((p.y - y0) / cell), 0, ny - 1);
        double best = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring < std::max(nx, ny) + 1; ++ring) {
            bool looked = false;
            for (int dy = -ring; dy <= ring; ++dy)
                for (int dx = -ring; dx <= ring; ++dx) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                    int bx = cx + dx, by = cy + dy;
                    if (bx < 0 || by < 0 || bx >= nx || by >= ny) continue;
                    looked = true;
                    for (int i : buckets[static_cast<std::size_t>(by) * nx + bx])
                        best = std::min(best, dist(p, pts[static_cast<std::size_t>(i)]));
                }
            if (best < ring * cell && ring > 0) break;  // no closer point possible
            if (!looked && ring > std::max(nx, ny)) break;
        }
        return best;
    }
};

}  // namespace

double boundary_compare(const BasinRaster& raster, Label label, const Polyline& curve) {
    if (curve.size() < 2) throw std::invalid_argument("boundary_compare: degenerate curve");
    std::vector<Point> bnd = boundary_points(raster, label);
    if (bnd.empty()) throw std::domain_error("boundary_compare: empty labeled class");
    std::size_t other = raster.labels.size() - raster.count_of(label);
    if (raster.count_of(label) == 0 || other == 0)
        throw std::domain_error("boundary_compare: raster must contain both classes");

    double diag = raster.grid.pixel_diag();

    // boundary -> curve
    double h1 = 0.0;
    for (const Point& b : bnd) h1 = std::max(h1, curve.distance_to(b));

    // curve (densely sampled) -> boundary point set
    PointGrid lookup(bnd, std::max(diag, 1e-12));
    double h2 = 0.0;
    const auto& v = curve.vertices();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        double len = dist(v[i], v[i + 1]);
        int pieces = std::max(1, static_cast<int>(len / (0.5 * diag)));
        for (int k = 0; k <= pieces; ++k) {
            double t = static_cast<double>(k) / pieces;
            Point s{v[i].x + t * (v[i + 1].x - v[i].x), v[i].y + t * (v[i + 1].y - v[i].y)};
            h2 = std::max(h2, lookup.nearest(s));
        }
    }
    return std::max(h1, h2);
}

namespace {

int flood_components(const BasinRaster& raster, const std::vector<char>& mask) {
    const int w = raster.grid.width, h = raster.grid.height;
    std::vector<char> seen(mask.size(), 0);
    std::vector<int> stack;
    int comps = 0;
    for (int i = 0; i < w * h; ++i) {
        if (!mask[static_cast<std::size_t>(i)] || seen[static_cast<std::size_t>(i)]) continue;
        ++comps;
        stack.push_back(i);
        seen[static_cast<std::size_t>(i)] = 1;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            int x = cur % w, y = cur / w;
            const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (auto& d : nb) {
                int qx = x + d[0], qy = y + d[1];
                if (qx < 0 || qy < 0 || qx >= w || qy >= h) continue;
                int q = qy * w + qx;
                if (mask[static_cast<std::size_t>(q)] && !seen[static_cast<std::size_t>(q)]) {
                    seen[static_cast<std::size_t>(q)] = 1;
                    stack.push_back(q);
                }
            }
        }
    }
    return comps;
}

}  // namespace

int component_count(const BasinRaster& raster, Label label) {
    std::vector<char> mask(raster.labels.size());
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = raster.labels[i] == static_cast<std::uint8_t>(label);
    return flood_components(raster, mask);
}

int complement_component_count(const BasinRaster& raster, Label label) {
    std::vector<char> mask(raster.labels.size());
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = raster.labels[i] != static_cast<std::uint8_t>(label);
    return flood_components(raster, mask);
}

}  // namespace secantlab
