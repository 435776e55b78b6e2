#pragma once

#include <vector>

#include "semihilbert/complex_matrix.hpp"

namespace semihilbert {

/// Convex polygon in the plane, identified with the filled convex
/// region it bounds. Vertices are stored counterclockwise with no
/// three collinear beyond tolerance. Degenerate regions are allowed:
/// one vertex is a point, two vertices a segment.
class ConvexPolygon {
public:
    ConvexPolygon() = default;
    explicit ConvexPolygon(std::vector<Complex> ccw_vertices);

    bool empty() const noexcept { return vertices_.empty(); }
    std::size_t size() const noexcept { return vertices_.size(); }
    const std::vector<Complex>& vertices() const noexcept { return vertices_; }

    /// Diagonal of the bounding box. Cheap diameter bound used for
    /// tolerance scaling.
    double extent() const;

    double area() const;

    /// Membership in the filled region. `margin` > 0 asks for strict
    /// interior points, < 0 tolerates points slightly outside.
    bool contains(Complex z, double margin = 0.0) const;

    /// Distance from a point to the filled region (zero inside).
    double distance_to(Complex z) const;

private:
    std::vector<Complex> vertices_;
};

/// Minimal convex polygon containing the points. Duplicates and
/// near-collinear chain points are collapsed; the collinearity cutoff
/// is collinear_tol times the point-set extent.
ConvexPolygon convex_hull(std::vector<Complex> points, double collinear_tol = 1e-10);

/// Hausdorff distance between two filled convex polygons.
double hausdorff(const ConvexPolygon& a, const ConvexPolygon& b);

double point_segment_distance(Complex z, Complex a, Complex b);

} // namespace semihilbert
