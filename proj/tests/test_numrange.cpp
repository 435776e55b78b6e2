#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "semihilbert/generators.hpp"
#include "semihilbert/numrange.hpp"
#include "semihilbert/spectra.hpp"

using namespace semihilbert;

namespace {

SemiHilbertOperator five_by_five() {
    const ComplexMatrix a = ComplexMatrix::diagonal(std::vector<double>{1, 1, 2, 1, 1});
    ComplexMatrix t(5, 5);
    t(0, 1) = 1.0;
    t(2, 2) = Complex(0, 2);
    t(3, 3) = Complex(-1.5, -1);
    t(4, 4) = Complex(1.5, -1);
    return SemiHilbertOperator(make_space(a), t);
}

const ConvexPolygon kTriangle =
    convex_hull({Complex(0, 2), Complex(-1.5, -1), Complex(1.5, -1)});

} // namespace

TEST_CASE("range of the 5x5 example is the triangle") {
    const RegionApprox region = numerical_range(five_by_five(), 1440);
    CHECK(hausdorff(region.inner(), kTriangle) <= region.err_bound() + 1e-8);
    CHECK(hausdorff(region.outer(), kTriangle) <= region.err_bound() + 1e-8);
    CHECK(region.err_bound() <= 1e-7);
}

TEST_CASE("degenerate ranges collapse to their endpoints") {
    const ComplexMatrix a2 = ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
    const ComplexMatrix t2 = ComplexMatrix::from_rows({{2.0, 2.0}, {0.0, 0.0}});
    const RegionApprox point_region =
        numerical_range(SemiHilbertOperator(make_space(a2), t2), 360);
    CHECK(point_region.degenerate());
    REQUIRE(point_region.inner().size() == 1);
    CHECK(std::abs(point_region.inner().vertices()[0] - Complex(2.0)) <= 1e-12);

    // Hermitian operators give real segments.
    const SpacePtr eye = make_space(ComplexMatrix::identity(3));
    const ComplexMatrix h =
        ComplexMatrix::from_rows({{1.0, 0.5, 0.0}, {0.5, -1.0, 0.25}, {0.0, 0.25, 0.5}});
    const RegionApprox seg = numerical_range(SemiHilbertOperator(eye, h), 360);
    CHECK(seg.degenerate());
    for (const auto& v : seg.inner().vertices()) CHECK(std::abs(v.imag()) <= 1e-10);
}

TEST_CASE("Jordan block range is the half-radius disk") {
    const SpacePtr eye = make_space(ComplexMatrix::identity(2));
    const SemiHilbertOperator op(eye, ComplexMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}}));
    const RegionApprox region = numerical_range(op, 720);
    // Support function is identically one.
    for (const auto& line : region.support()) {
        CHECK(std::abs(line.value - 1.0) <= 1e-12);
    }
    double rmin = 10.0, rmax = 0.0;
    for (const auto& v : region.inner().vertices()) {
        rmin = std::min(rmin, std::abs(v));
        rmax = std::max(rmax, std::abs(v));
    }
    CHECK(rmax <= 1.0 + 1e-12);
    CHECK(rmin >= 1.0 - 1e-6);
}

TEST_CASE("numerical radius values") {
    CHECK(a_numerical_radius(five_by_five(), 1440) == doctest::Approx(2.0).epsilon(1e-10));

    // Identity weight and Hermitian operator: largest eigenvalue modulus.
    const SpacePtr eye = make_space(ComplexMatrix::identity(3));
    const ComplexMatrix h =
        ComplexMatrix::from_rows({{1.0, 0.5, 0.0}, {0.5, -2.0, 0.25}, {0.0, 0.25, 0.5}});
    const HermEig he = herm_eig(h);
    const double expect = std::max(std::abs(he.values.front()), std::abs(he.values.back()));
    CHECK(a_numerical_radius(SemiHilbertOperator(eye, h), 720) ==
          doctest::Approx(expect).epsilon(1e-9));

    // Jordan block: radius 1/2, strictly between spectral radius and norm.
    const SemiHilbertOperator nil(eye, ComplexMatrix::from_rows(
                                           {{0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}));
    CHECK(a_numerical_radius(nil, 720) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("radius chain on weighted normal lifts") {
    Rng rng(61);
    for (int trial = 0; trial < 8; ++trial) {
        const SpacePtr s = random_space(6, 4, rng);
        const SemiHilbertOperator op = random_a_normal(s, rng);
        const double norm = a_operator_norm(op);
        const double w = a_numerical_radius(op, 720);
        const double r = a_spectral_radius(op).from_spectrum;
        CHECK(std::abs(w - norm) <= 1e-9 * (1.0 + norm));
        CHECK(std::abs(r - norm) <= 1e-9 * (1.0 + norm));
        CHECK(w <= norm + 1e-12);
    }
}

TEST_CASE("conv_spectrum_compare on the worked cases") {
    const ConvCompare c5 = conv_spectrum_compare(five_by_five(), 1440);
    CHECK(c5.verdict);
    CHECK(c5.distance <= 1e-8);

    // Jordan block: disk of radius 1/2 against the hull {0}.
    const SpacePtr eye = make_space(ComplexMatrix::identity(2));
    const SemiHilbertOperator nil(eye, ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}));
    const ConvCompare cn = conv_spectrum_compare(nil, 720);
    CHECK_FALSE(cn.verdict);
    CHECK(cn.distance == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("contains_point classification on the triangle region") {
    const RegionApprox region = numerical_range(five_by_five(), 1440);
    CHECK(contains_point(region, Complex(0.0, 0.0)) == PointLocation::inside);
    CHECK(contains_point(region, Complex(3.0, 0.0)) == PointLocation::outside);
    CHECK(contains_point(region, Complex(0.0, 2.0)) == PointLocation::boundary_band);
}

TEST_CASE("region invariants: nesting, certified gap, refinement") {
    Rng rng(62);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(r, rng), rng);
        const RegionApprox region = numerical_range(op, 256, 1e-6);
        const double scale = 1.0 + op.compressed().frobenius_norm();

        // Inner vertices satisfy every outer constraint.
        for (const auto& v : region.inner().vertices()) {
            CHECK(contains_point(region, v, 1e-9) != PointLocation::outside);
        }
        CHECK(hausdorff(region.inner(), region.outer()) <= region.err_bound() + 1e-11 * scale);

        // A plain fixed-grid sweep coarsens monotonically in the bound.
        const double inf = std::numeric_limits<double>::infinity();
        const RegionApprox coarse = numerical_range(op, 180, inf);
        const RegionApprox fine = numerical_range(op, 720, inf);
        CHECK(fine.err_bound() <= coarse.err_bound() * 1.0001 + 1e-12 * scale);
    }
}

TEST_CASE("sampled form values stay inside the certified envelope") {
    Rng rng(63);
    const std::size_t n = 5;
    const SpacePtr s = random_space(n, 3, rng);
    const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(3, rng), rng);
    const RegionApprox region = numerical_range(op, 720, 1e-6);
    const double scale = 1.0 + op.compressed().frobenius_norm();

    std::vector<Complex> samples;
    for (int k = 0; k < 10000; ++k) {
        ComplexVector x(n);
        for (auto& z : x) z = random_gaussian(rng);
        const double nx = s->a_norm(x);
        if (nx < 1e-6) continue;
        for (auto& z : x) z /= nx;
        const Complex value = s->a_inner(op.matrix().apply(x), x);
        samples.push_back(value);
        CHECK(contains_point(region, value, 1e-8) != PointLocation::outside);
    }
    // The hull of sampled values sits within the attained region.
    const ConvexPolygon sample_hull = convex_hull(samples);
    double worst = 0.0;
    for (const auto& v : sample_hull.vertices()) {
        worst = std::max(worst, region.inner().distance_to(v));
    }
    CHECK(worst <= 2.0 * region.err_bound() + 1e-9 * scale);
}

TEST_CASE("region transforms covariantly under affine maps") {
    Rng rng(64);
    const SpacePtr s = random_space(5, 3, rng);
    const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(3, rng), rng);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int k = 0; k < 4; ++k) {
        const Complex alpha(coord(rng), coord(rng));
        const Complex beta(coord(rng), coord(rng));
        ComplexMatrix mapped = alpha * op.matrix();
        for (std::size_t i = 0; i < mapped.rows(); ++i) mapped(i, i) += beta;
        const RegionApprox before = numerical_range(op, 512, 1e-6);
        const RegionApprox after = numerical_range(SemiHilbertOperator(s, mapped), 512, 1e-6);

        std::vector<Complex> transformed;
        for (const auto& v : before.inner().vertices()) transformed.push_back(alpha * v + beta);
        const double scale = 1.0 + std::abs(alpha) * (1.0 + op.compressed().frobenius_norm());
        CHECK(hausdorff(convex_hull(transformed), after.inner()) <=
              (before.err_bound() * std::abs(alpha) + after.err_bound()) + 1e-8 * scale);
    }
}

TEST_CASE("point spectrum never classifies outside") {
    Rng rng(65);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 3 + trial % 6;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(r, rng), rng);
        const RegionApprox region = numerical_range(op, 512, 1e-6);
        for (const auto& lambda : a_point_spectrum(op).points) {
            CHECK(contains_point(region, lambda, 1e-7) != PointLocation::outside);
        }
    }
}
