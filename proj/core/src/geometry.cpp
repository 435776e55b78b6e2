#include "semihilbert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semihilbert/errors.hpp"

namespace semihilbert {

namespace {

double cross(Complex o, Complex a, Complex b) {
    const Complex u = a - o;
    const Complex v = b - o;
    return u.real() * v.imag() - u.imag() * v.real();
}

} // namespace

ConvexPolygon::ConvexPolygon(std::vector<Complex> ccw_vertices)
    : vertices_(std::move(ccw_vertices)) {}

double ConvexPolygon::extent() const {
    if (vertices_.empty()) return 0.0;
    double xmin = vertices_[0].real(), xmax = xmin;
    double ymin = vertices_[0].imag(), ymax = ymin;
    for (const auto& v : vertices_) {
        xmin = std::min(xmin, v.real());
        xmax = std::max(xmax, v.real());
        ymin = std::min(ymin, v.imag());
        ymax = std::max(ymax, v.imag());
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

double ConvexPolygon::area() const {
    if (vertices_.size() < 3) return 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        const Complex a = vertices_[k];
        const Complex b = vertices_[(k + 1) % vertices_.size()];
        acc += a.real() * b.imag() - a.imag() * b.real();
    }
    return 0.5 * acc;
}

bool ConvexPolygon::contains(Complex z, double margin) const {
    if (vertices_.empty()) return false;
    if (vertices_.size() == 1) return std::abs(z - vertices_[0]) <= -std::min(margin, 0.0);
    if (vertices_.size() == 2) {
        return point_segment_distance(z, vertices_[0], vertices_[1]) <= -std::min(margin, 0.0);
    }
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        const Complex a = vertices_[k];
        const Complex b = vertices_[(k + 1) % vertices_.size()];
        const double edge_len = std::abs(b - a);
        if (edge_len <= 0.0) continue;
        // Signed distance of z to the left of edge a->b.
        const double side = cross(a, b, z) / edge_len;
        if (side < margin) return false;
    }
    return true;
}

double ConvexPolygon::distance_to(Complex z) const {
    if (vertices_.empty()) throw DimensionError("distance_to: empty polygon");
    if (vertices_.size() == 1) return std::abs(z - vertices_[0]);
    if (vertices_.size() == 2) return point_segment_distance(z, vertices_[0], vertices_[1]);
    if (contains(z, 0.0)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        const Complex a = vertices_[k];
        const Complex b = vertices_[(k + 1) % vertices_.size()];
        best = std::min(best, point_segment_distance(z, a, b));
    }
    return best;
}

double point_segment_distance(Complex z, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 <= 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

ConvexPolygon convex_hull(std::vector<Complex> points, double collinear_tol) {
    if (points.empty()) throw DimensionError("convex_hull: no points");
    std::sort(points.begin(), points.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());

    double xspan = points.back().real() - points.front().real();
    double yspan = 0.0;
    {
        double ymin = points[0].imag(), ymax = ymin;
        for (const auto& p : points) {
            ymin = std::min(ymin, p.imag());
            ymax = std::max(ymax, p.imag());
        }
        yspan = ymax - ymin;
    }
    const double extent = std::hypot(xspan, yspan);
    if (extent <= 0.0) return ConvexPolygon({points.front()});

    const double tol = collinear_tol * extent;
    auto keep_turn = [&](Complex o, Complex a, Complex b) {
        // Drop `a` when it lies within tol of the chord o->b.
        const double c = cross(o, a, b);
        const double chord = std::abs(b - o);
        return c > tol * std::max(chord, 1e-300);
    };

    std::vector<Complex> lower;
    for (const auto& p : points) {
        while (lower.size() >= 2 && !keep_turn(lower[lower.size() - 2], lower.back(), p)) {
            lower.pop_back();
        }
        lower.push_back(p);
    }
    std::vector<Complex> upper;
    for (auto it = points.rbegin(); it != points.rend(); ++it) {
        while (upper.size() >= 2 && !keep_turn(upper[upper.size() - 2], upper.back(), *it)) {
            upper.pop_back();
        }
        upper.push_back(*it);
    }

    lower.pop_back();
    upper.pop_back();
    std::vector<Complex> hull = std::move(lower);
    hull.insert(hull.end(), upper.begin(), upper.end());
    if (hull.empty()) hull.push_back(points.front());
    if (hull.size() == 2 && std::abs(hull[0] - hull[1]) <= tol) hull.pop_back();
    return ConvexPolygon(std::move(hull));
}

double hausdorff(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (a.empty() || b.empty()) throw DimensionError("hausdorff: empty polygon");
    double d = 0.0;
    for (const auto& v : a.vertices()) d = std::max(d, b.distance_to(v));
    for (const auto& v : b.vertices()) d = std::max(d, a.distance_to(v));
    return d;
}

} // namespace semihilbert
