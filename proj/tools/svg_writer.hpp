#pragma once

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "semihilbert/geometry.hpp"
#include "semihilbert/json_io.hpp"

namespace semihilbert::tools {

// Hand-rolled SVG emitter for region plots: inner polygon, outer
// polygon, spectrum markers. Output depends only on the inputs.
class SvgPlot {
public:
    SvgPlot(double width = 640.0, double height = 640.0) : width_(width), height_(height) {}

    void add_polygon(const ConvexPolygon& poly, std::string stroke, std::string fill) {
        polygons_.push_back({poly.vertices(), std::move(stroke), std::move(fill)});
        for (const auto& v : poly.vertices()) include(v);
    }

    void add_markers(const std::vector<Complex>& pts, std::string fill) {
        markers_.push_back({pts, std::move(fill)});
        for (const auto& v : pts) include(v);
    }

    std::string render() const {
        double xmin = xmin_, xmax = xmax_, ymin = ymin_, ymax = ymax_;
        if (!(xmax > xmin)) {
            xmin -= 1.0;
            xmax += 1.0;
        }
        if (!(ymax > ymin)) {
            ymin -= 1.0;
            ymax += 1.0;
        }
        const double pad_x = 0.08 * (xmax - xmin);
        const double pad_y = 0.08 * (ymax - ymin);
        xmin -= pad_x;
        xmax += pad_x;
        ymin -= pad_y;
        ymax += pad_y;
        const double sx = width_ / (xmax - xmin);
        const double sy = height_ / (ymax - ymin);
        const double scale = std::min(sx, sy);

        auto px = [&](Complex z) { return (z.real() - xmin) * scale; };
        auto py = [&](Complex z) { return height_ - (z.imag() - ymin) * scale; };

        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<!-- semihilbert range plot v1 -->\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_)
            << "\" height=\"" << fmt(height_) << "\" viewBox=\"0 0 " << fmt(width_) << " "
            << fmt(height_) << "\">\n";
        out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        for (const auto& p : polygons_) {
            if (p.vertices.empty()) continue;
            out << "  <path d=\"";
            for (std::size_t k = 0; k < p.vertices.size(); ++k) {
                out << (k == 0 ? "M" : "L") << fmt(px(p.vertices[k])) << " "
                    << fmt(py(p.vertices[k]));
            }
            out << "Z\" stroke=\"" << p.stroke << "\" fill=\"" << p.fill
                << "\" stroke-width=\"1.5\" fill-opacity=\"0.25\"/>\n";
        }
        for (const auto& m : markers_) {
            for (const auto& z : m.pts) {
                out << "  <circle cx=\"" << fmt(px(z)) << "\" cy=\"" << fmt(py(z))
                    << "\" r=\"4\" fill=\"" << m.fill << "\"/>\n";
            }
        }
        out << "</svg>\n";
        return out.str();
    }

private:
    struct Poly {
        std::vector<Complex> vertices;
        std::string stroke;
        std::string fill;
    };
    struct Markers {
        std::vector<Complex> pts;
        std::string fill;
    };

    static std::string fmt(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.6g", round12(v));
        return buf;
    }

    void include(Complex z) {
        xmin_ = std::min(xmin_, z.real());
        xmax_ = std::max(xmax_, z.real());
        ymin_ = std::min(ymin_, z.imag());
        ymax_ = std::max(ymax_, z.imag());
    }

    double width_;
    double height_;
    double xmin_ = 1e300, xmax_ = -1e300, ymin_ = 1e300, ymax_ = -1e300;
    std::vector<Poly> polygons_;
    std::vector<Markers> markers_;
};

} // namespace semihilbert::tools
