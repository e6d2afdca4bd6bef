#include "secantlab/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace secantlab {

void Polyline::push(Point p) {
    if (!finite(p)) throw std::invalid_argument("Polyline: non-finite vertex");
    if (!v_.empty()) {
        double step = dist(v_.back(), p);
        if (step == 0.0) return;  // keep vertices distinct
        s_.push_back(s_.back() + step);
    } else {
        s_.push_back(0.0);
    }
    v_.push_back(p);
}

void Polyline::append(const Polyline& other) {
    for (const Point& p : other.v_) push(p);
}

Polyline Polyline::reversed() const {
    Polyline out;
    for (auto it = v_.rbegin(); it != v_.rend(); ++it) out.push(*it);
    return out;
}

double Polyline::max_turning_angle() const {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < v_.size(); ++i) {
        Point u = v_[i] - v_[i - 1];
        Point w = v_[i + 1] - v_[i];
        double cross = u.x * w.y - u.y * w.x;
        double dot = u.x * w.x + u.y * w.y;
        worst = std::max(worst, std::abs(std::atan2(cross, dot)));
    }
    return worst;
}

double point_segment_distance(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = ab.x * ab.x + ab.y * ab.y;
    if (len2 == 0.0) return dist(p, a);
    double t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, {a.x + t * ab.x, a.y + t * ab.y});
}

double Polyline::distance_to(Point p) const {
    if (v_.empty()) throw std::logic_error("distance_to: empty polyline");
    if (v_.size() == 1) return dist(p, v_[0]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < v_.size(); ++i)
        best = std::min(best, point_segment_distance(p, v_[i], v_[i + 1]));
    return best;
}

void Polyline::write_csv(std::ostream& os) const {
    os << "s,x,y\n";
    char buf[96];
    for (std::size_t i = 0; i < v_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s_[i], v_[i].x, v_[i].y);
        os << buf;
    }
}

Polyline Polyline::read_csv(std::istream& is) {
    Polyline out;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("curve CSV: missing header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string s, x, y;
        if (!std::getline(row, s, ',') || !std::getline(row, x, ',') || !std::getline(row, y))
            throw std::runtime_error("curve CSV: malformed row: " + line);
        out.push({std::stod(x), std::stod(y)});
    }
    return out;
}

namespace {

bool segments_intersect(Point a, Point b, Point c, Point d) {
    auto orient = [](Point p, Point q, Point r) {
        double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        return v > 0 ? 1 : v < 0 ? -1 : 0;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4;
}

}  // namespace

bool has_self_intersection(const Polyline& line) {
    const auto& v = line.vertices();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        double xlo = std::min(v[i].x, v[i + 1].x), xhi = std::max(v[i].x, v[i + 1].x);
        double ylo = std::min(v[i].y, v[i + 1].y), yhi = std::max(v[i].y, v[i + 1].y);
        for (std::size_t j = i + 2; j + 1 < v.size(); ++j) {
            if (std::max(v[j].x, v[j + 1].x) < xlo || std::min(v[j].x, v[j + 1].x) > xhi ||
                std::max(v[j].y, v[j + 1].y) < ylo || std::min(v[j].y, v[j + 1].y) > yhi)
                continue;
            if (segments_intersect(v[i], v[i + 1], v[j], v[j + 1])) return true;
        }
    }
    return false;
}

}  // namespace secantlab
