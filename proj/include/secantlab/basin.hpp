#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "secantlab/iteration_policy.hpp"
#include "secantlab/model_map.hpp"
#include "secantlab/polyline.hpp"
#include "secantlab/secant_map.hpp"

namespace secantlab {

struct GridSpec {
    double xmin, xmax, ymin, ymax;
    int width, height;

    void validate() const {
        if (!(xmin < xmax && ymin < ymax))
            throw std::invalid_argument("GridSpec: need xmin < xmax and ymin < ymax");
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("GridSpec: need positive pixel counts");
    }
    /// Pixel centers; row iy = 0 is the bottom row.
    Point center(int ix, int iy) const {
        return {xmin + (ix + 0.5) * (xmax - xmin) / width,
                ymin + (iy + 0.5) * (ymax - ymin) / height};
    }
    double pixel_diag() const {
        return std::hypot((xmax - xmin) / width, (ymax - ymin) / height);
    }
};

enum class Label : std::uint8_t { Converged = 0, Escaped = 1, Undecided = 2, OnCycle = 3 };

struct Classification {
    Label label;
    std::uint32_t count;
};

/// Model-map orbit classification.  Converged: sup-norm below eps_converge
/// for `window` consecutive steps (count = first step of the window).
/// Escaped: norm above escape_radius, blow-up, or (even d, via the canonical
/// sign) an iterate on the strictly decreasing side of {y = 0} at k >= 1.
Classification classify_point(const ModelParams& params, Point pt, const IterationPolicy& policy);

/// Secant-map classification, delegating to classify_three_cycle.
Classification classify_point(const NormalizedPolynomial& q, Point pt,
                              const IterationPolicy& policy);

struct BasinRaster {
    GridSpec grid{};
    IterationPolicy policy{};
    std::string subject;  // rendered map, for file headers
    std::vector<std::uint8_t> labels;   // row-major, index iy*width + ix
    std::vector<std::uint32_t> counts;

    Label label(int ix, int iy) const {
        return static_cast<Label>(labels[static_cast<std::size_t>(iy) * grid.width + ix]);
    }
    std::size_t count_of(Label l) const;

    /// Bit-exact binary round trip.
    std::vector<std::uint8_t> to_bytes() const;
    static BasinRaster from_bytes(const std::vector<std::uint8_t>& bytes);

    /// P5 label image (Converged 255, Escaped 0, Undecided 128, OnCycle 200)
    /// with a comment line carrying grid and policy parameters.
    void write_pgm(std::ostream& os) const;
    /// P6 palette image (Converged red, Escaped white, Undecided gray,
    /// OnCycle orange).
    void write_ppm(std::ostream& os) const;
    /// 16-bit P5 of iteration counts.
    void write_counts_pgm(std::ostream& os) const;
};

BasinRaster render_basin(const ModelParams& params, const GridSpec& grid,
                         const IterationPolicy& policy, int workers = 1);
BasinRaster render_basin(const NormalizedPolynomial& q, const GridSpec& grid,
                         const IterationPolicy& policy, int workers = 1);

/// Midpoints of pixel edges separating `label` pixels from the rest.
std::vector<Point> boundary_points(const BasinRaster& raster, Label label);

/// Symmetric Hausdorff distance between the pixel-edge boundary of the
/// labeled region and a traced curve, in phase units.
double boundary_compare(const BasinRaster& raster, Label label, const Polyline& curve);

/// Number of 4-connected components of the labeled region.
int component_count(const BasinRaster& raster, Label label);

/// Number of 4-connected components of the complement of the labeled region.
int complement_component_count(const BasinRaster& raster, Label label);

}  // namespace secantlab
