#pragma once

#include <vector>

#include "semihilbert/geometry.hpp"
#include "semihilbert/operator.hpp"

namespace semihilbert {

struct SupportLine {
    double angle;
    double value; // the region satisfies Re(e^{-i angle} z) <= value
};

/// Two-sided polygonal approximation of the weighted numerical range:
/// `inner` is the hull of attained boundary points (quadratic forms of
/// top eigenvectors of the swept Hermitian parts), `outer` the
/// intersection of the supporting half-planes, and err_bound a
/// Hausdorff bound between them computed from the sweep slivers.
class RegionApprox {
public:
    RegionApprox() = default;
    RegionApprox(ConvexPolygon inner, ConvexPolygon outer, std::vector<SupportLine> support,
                 std::size_t angle_count, double err_bound, bool degenerate);

    const ConvexPolygon& inner() const noexcept { return inner_; }
    const ConvexPolygon& outer() const noexcept { return outer_; }
    const std::vector<SupportLine>& support() const noexcept { return support_; }
    std::size_t angles() const noexcept { return angle_count_; }
    double err_bound() const noexcept { return err_bound_; }
    bool degenerate() const noexcept { return degenerate_; }

private:
    ConvexPolygon inner_;
    ConvexPolygon outer_;
    std::vector<SupportLine> support_;
    std::size_t angle_count_ = 0;
    double err_bound_ = 0.0;
    bool degenerate_ = false;
};

/// Support sweep of the classical numerical range of a plain matrix.
/// `angles` base directions are refined adaptively wherever the sliver
/// between adjacent supporting lines and the attained chord stays above
/// refine_target (relative to scale); pass an infinite target for a
/// plain fixed-grid sweep.
RegionApprox matrix_numerical_range(const ComplexMatrix& m, std::size_t angles = 720,
                                    double refine_target = 1e-9);

/// Weighted numerical range, the range of the compressed operator.
RegionApprox numerical_range(const SemiHilbertOperator& op, std::size_t angles = 720,
                             double refine_target = 1e-9);

/// Largest modulus attained on the sweep; within err_bound of the
/// weighted numerical radius and never above the operator seminorm.
double a_numerical_radius(const SemiHilbertOperator& op, std::size_t angles = 720);

enum class PointLocation { inside, outside, boundary_band };

/// inside: strictly interior to the attained hull. outside: violates a
/// supporting half-plane by more than tol. Everything else falls in the
/// boundary band.
PointLocation contains_point(const RegionApprox& region, Complex z, double tol = 1e-9);

struct ConvCompare {
    double distance;  // Hausdorff between attained hull and conv(spectrum)
    bool verdict;     // distance <= err_bound + tol
    double err_bound;
};

/// Compares the closure of the weighted numerical range against the
/// convex hull of the weighted spectrum. Agreement is guaranteed for
/// weighted-normal operators and can also hold without normality.
ConvCompare conv_spectrum_compare(const SemiHilbertOperator& op, std::size_t angles = 720,
                                  double tol = 1e-8);

} // namespace semihilbert
