#pragma once

#include <iosfwd>
#include <vector>

#include "secantlab/geometry.hpp"

namespace secantlab {

/// Ordered vertex chain with cumulative arclength; consecutive vertices are
/// distinct so the arclength is strictly increasing.
class Polyline {
public:
    Polyline() = default;

    void push(Point p);
    void append(const Polyline& other);  // drops a duplicated joint vertex

    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    const Point& operator[](std::size_t i) const { return v_[i]; }
    const std::vector<Point>& vertices() const { return v_; }
    const std::vector<double>& arclength() const { return s_; }
    double length() const { return s_.empty() ? 0.0 : s_.back(); }

    Polyline reversed() const;

    /// Largest turning angle between adjacent segments (radians).
    double max_turning_angle() const;

    /// Distance from a point to the chain.
    double distance_to(Point p) const;

    /// key=value comment-free CSV of (s, x, y) rows.
    void write_csv(std::ostream& os) const;
    static Polyline read_csv(std::istream& is);

private:
    std::vector<Point> v_;
    std::vector<double> s_;
};

double point_segment_distance(Point p, Point a, Point b);

/// True when any two non-adjacent segments intersect (O(n^2) scan).
bool has_self_intersection(const Polyline& line);

}  // namespace secantlab
