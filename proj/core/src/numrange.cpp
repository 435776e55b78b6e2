#include "semihilbert/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numbers>

#include "semihilbert/eig.hpp"
#include "semihilbert/errors.hpp"
#include "semihilbert/parallel.hpp"
#include "semihilbert/spectra.hpp"

namespace semihilbert {

namespace {

struct Sample {
    double angle = 0.0;
    double value = 0.0;
    std::vector<Complex> points; // attained boundary points on the support line
};

Complex quadratic_form(const ComplexMatrix& m, const ComplexVector& v) {
    return vec_dot(m.apply(v), v);
}

Sample eval_direction(const ComplexMatrix& m, double theta, double tie_tol) {
    const std::size_t r = m.rows();
    const Complex w = std::polar(1.0, -theta);
    ComplexMatrix h(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            h(i, j) = 0.5 * (w * m(i, j) + std::conj(w * m(j, i)));

    const HermEig eig = herm_eig(h);
    const double top = eig.values.back();

    Sample s;
    s.angle = theta;
    s.value = top;

    std::size_t first = r - 1;
    while (first > 0 && top - eig.values[first - 1] <= tie_tol) --first;
    const std::size_t d = r - first;

    if (d == 1) {
        ComplexVector v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = eig.vectors(i, r - 1);
        s.points.push_back(quadratic_form(m, v));
        return s;
    }

    // Flat boundary portion: the touch set is a segment. Extremize the
    // tangential coordinate Im(e^{-i theta} z) over the top eigenspace
    // to get both edge endpoints.
    const ComplexMatrix e = eig.vectors.block(0, first, r, d);
    const ComplexMatrix me = e.adjoint() * (m * e);
    ComplexMatrix tangential(d, d);
    const Complex ihalf(0.0, -0.5); // 1/(2 i)
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            tangential(i, j) = ihalf * (w * me(i, j) - std::conj(w * me(j, i)));
    const HermEig tang = herm_eig(tangential);
    for (const std::size_t idx : {std::size_t{0}, d - 1}) {
        ComplexVector u(d);
        for (std::size_t i = 0; i < d; ++i) u[i] = tang.vectors(i, idx);
        ComplexVector x(r, Complex(0.0));
        for (std::size_t i = 0; i < r; ++i) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) acc += e(i, k) * u[k];
            x[i] = acc;
        }
        s.points.push_back(quadratic_form(m, x));
        if (d == 1) break;
    }
    return s;
}

Complex line_intersection(double t1, double h1, double t2, double h2) {
    const double s = std::sin(t2 - t1);
    const double x = (h1 * std::sin(t2) - h2 * std::sin(t1)) / s;
    const double y = (h2 * std::cos(t1) - h1 * std::cos(t2)) / s;
    return {x, y};
}

double tangential_coordinate(const Sample& s, Complex z) {
    return std::imag(std::polar(1.0, -s.angle) * z);
}

// Local gap bound between the attained chord and the half-plane wedge
// of two adjacent directions. The wedge apex sits above the chord from
// the most counterclockwise attained point of `a` to the most
// clockwise attained point of `b` by at most |chord| tan(span/2) / 2;
// unlike the apex itself this bound stays well conditioned as the
// angular span shrinks.
double chord_gap(const Sample& a, const Sample& b) {
    const double span = b.angle - a.angle;
    if (span <= 1e-15) return 0.0;
    if (span >= std::numbers::pi) return std::numeric_limits<double>::infinity();
    Complex pa = a.points.front();
    for (const auto& p : a.points)
        if (tangential_coordinate(a, p) > tangential_coordinate(a, pa)) pa = p;
    Complex pb = b.points.front();
    for (const auto& p : b.points)
        if (tangential_coordinate(b, p) < tangential_coordinate(b, pb)) pb = p;
    return 0.5 * std::abs(pa - pb) * std::tan(0.5 * span);
}

struct Line {
    double theta;
    double h;
};

bool line_violated(const Line& l, Complex p, double eps) {
    return std::cos(l.theta) * p.real() + std::sin(l.theta) * p.imag() > l.h + eps;
}

std::vector<Complex> half_plane_vertices(std::vector<Line> lines, double eps) {
    std::sort(lines.begin(), lines.end(),
              [](const Line& a, const Line& b) { return a.theta < b.theta; });
    std::vector<Line> dedup;
    for (const auto& l : lines) {
        if (!dedup.empty() && l.theta - dedup.back().theta < 1e-12) {
            dedup.back().h = std::min(dedup.back().h, l.h);
        } else {
            dedup.push_back(l);
        }
    }
    if (dedup.size() < 3) return {};

    auto inter = [](const Line& a, const Line& b) {
        return line_intersection(a.theta, a.h, b.theta, b.h);
    };

    std::deque<Line> dq;
    for (const auto& l : dedup) {
        while (dq.size() >= 2 && line_violated(l, inter(dq[dq.size() - 2], dq.back()), eps))
            dq.pop_back();
        while (dq.size() >= 2 && line_violated(l, inter(dq[0], dq[1]), eps)) dq.pop_front();
        dq.push_back(l);
    }
    while (dq.size() >= 3 && line_violated(dq.front(), inter(dq[dq.size() - 2], dq.back()), eps))
        dq.pop_back();
    while (dq.size() >= 3 && line_violated(dq.back(), inter(dq[0], dq[1]), eps)) dq.pop_front();
    if (dq.size() < 3) return {};

    std::vector<Complex> verts;
    verts.reserve(dq.size());
    for (std::size_t k = 0; k < dq.size(); ++k) {
        verts.push_back(inter(dq[k], dq[(k + 1) % dq.size()]));
    }
    return verts;
}

} // namespace

RegionApprox::RegionApprox(ConvexPolygon inner, ConvexPolygon outer,
                           std::vector<SupportLine> support, std::size_t angle_count,
                           double err_bound, bool degenerate)
    : inner_(std::move(inner)),
      outer_(std::move(outer)),
      support_(std::move(support)),
      angle_count_(angle_count),
      err_bound_(err_bound),
      degenerate_(degenerate) {}

RegionApprox matrix_numerical_range(const ComplexMatrix& m, std::size_t angles,
                                    double refine_target) {
    if (!m.is_square() || m.rows() == 0) {
        throw DimensionError("matrix_numerical_range: matrix must be square and non-empty");
    }
    if (angles < 3) throw DimensionError("matrix_numerical_range: need at least 3 angles");

    const double scale = 1.0 + m.frobenius_norm();
    const double tie_tol = 1e-9 * scale;
    const double target = refine_target * scale;

    std::vector<Sample> base(angles);
    parallel_for(angles, [&](std::size_t k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(angles);
        base[k] = eval_direction(m, theta, tie_tol);
    });

    // Adaptive refinement between adjacent directions. Bounded depth and
    // a global budget keep pathological boundaries from running away.
    std::vector<Sample> refined;
    refined.reserve(2 * angles);
    long budget = static_cast<long>(64 * angles);

    const std::function<void(const Sample&, const Sample&, int)> refine =
        [&](const Sample& a, const Sample& b, int depth) {
            if (depth >= 48 || budget <= 0) return;
            if (!(std::isfinite(target)) || chord_gap(a, b) <= target) return;
            --budget;
            Sample mid = eval_direction(m, 0.5 * (a.angle + b.angle), tie_tol);
            refine(a, mid, depth + 1);
            refined.push_back(mid);
            refine(mid, b, depth + 1);
        };

    std::vector<Sample> all;
    all.reserve(angles + 64);
    for (std::size_t k = 0; k < angles; ++k) {
        all.push_back(base[k]);
        Sample next = base[(k + 1) % angles];
        if (k + 1 == angles) next.angle += 2.0 * std::numbers::pi;
        refined.clear();
        refine(base[k], next, 0);
        for (auto& s : refined) all.push_back(std::move(s));
    }
    std::sort(all.begin(), all.end(),
              [](const Sample& a, const Sample& b) { return a.angle < b.angle; });

    double err = 0.0;
    for (std::size_t k = 0; k < all.size(); ++k) {
        Sample next = all[(k + 1) % all.size()];
        if (k + 1 == all.size()) next.angle += 2.0 * std::numbers::pi;
        err = std::max(err, chord_gap(all[k], next));
    }

    std::vector<Complex> attained;
    std::vector<Line> lines;
    std::vector<SupportLine> support;
    attained.reserve(2 * all.size());
    lines.reserve(all.size());
    support.reserve(all.size());
    for (const auto& s : all) {
        for (const auto& p : s.points) attained.push_back(p);
        const double theta = std::fmod(s.angle, 2.0 * std::numbers::pi);
        lines.push_back({theta, s.value});
        support.push_back({theta, s.value});
    }

    ConvexPolygon inner = convex_hull(attained, 1e-13);
    std::vector<Complex> outer_verts = half_plane_vertices(lines, 1e-13 * scale);
    ConvexPolygon outer =
        outer_verts.empty() ? inner : convex_hull(outer_verts, 1e-13);

    bool degenerate = false;
    const double ext = outer.extent();
    if (outer.area() <= std::max(1e-12 * (1.0 + ext * ext), 4.0 * err * (1.0 + ext))) {
        // Segment or point up to the certified gap; the attained hull
        // is the exact representation, endpoints included.
        degenerate = true;
        outer = inner;
    }
    return RegionApprox(std::move(inner), std::move(outer), std::move(support), all.size(), err,
                        degenerate);
}

RegionApprox numerical_range(const SemiHilbertOperator& op, std::size_t angles,
                             double refine_target) {
    if (!op.in_b_a_half()) throw NotABoundedError("numerical_range: operator is not A-bounded");
    return matrix_numerical_range(op.compressed(), angles, refine_target);
}

double a_numerical_radius(const SemiHilbertOperator& op, std::size_t angles) {
    const RegionApprox region = numerical_range(op, angles);
    double w = 0.0;
    for (const auto& v : region.inner().vertices()) w = std::max(w, std::abs(v));
    return w;
}

PointLocation contains_point(const RegionApprox& region, Complex z, double tol) {
    const double scale = 1.0 + region.outer().extent() + std::abs(z);
    for (const auto& l : region.support()) {
        if (std::cos(l.angle) * z.real() + std::sin(l.angle) * z.imag() > l.value + tol * scale) {
            return PointLocation::outside;
        }
    }
    if (region.inner().contains(z, tol * scale)) return PointLocation::inside;
    return PointLocation::boundary_band;
}

ConvCompare conv_spectrum_compare(const SemiHilbertOperator& op, std::size_t angles, double tol) {
    if (!op.in_b_a()) {
        throw NotAAdjointableError("conv_spectrum_compare: operator is not A-adjointable");
    }
    const RegionApprox region = numerical_range(op, angles);
    const SpectrumSet spec = a_spectrum(op);
    const ConvexPolygon hull = convex_hull(spec.points, 1e-13);
    const double distance = hausdorff(region.inner(), hull);
    return ConvCompare{distance, distance <= region.err_bound() + tol, region.err_bound()};
}

} // namespace semihilbert
