#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "semihilbert/errors.hpp"
#include "semihilbert/generators.hpp"
#include "semihilbert/numrange.hpp"
#include "semihilbert/spectra.hpp"

using namespace semihilbert;

namespace {

const ComplexMatrix kA2 = ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
const ComplexMatrix kT2 = ComplexMatrix::from_rows({{2.0, 2.0}, {0.0, 0.0}});

SemiHilbertOperator five_by_five() {
    const ComplexMatrix a = ComplexMatrix::diagonal(std::vector<double>{1, 1, 2, 1, 1});
    ComplexMatrix t(5, 5);
    t(0, 1) = 1.0;
    t(2, 2) = Complex(0, 2);
    t(3, 3) = Complex(-1.5, -1);
    t(4, 4) = Complex(1.5, -1);
    return SemiHilbertOperator(make_space(a), t);
}

} // namespace

TEST_CASE("weighted spectrum of the worked examples") {
    const SemiHilbertOperator op5 = five_by_five();
    const SpectrumSet s5 = a_spectrum(op5);
    std::vector<Complex> expected = {Complex(0, 0), Complex(0, 0), Complex(0, 2),
                                     Complex(-1.5, -1), Complex(1.5, -1)};
    CHECK(multiset_match_distance(s5.points, expected) <= 1e-10);

    const SemiHilbertOperator op2(make_space(kA2), kT2);
    const SpectrumSet s2 = a_spectrum(op2);
    REQUIRE(s2.points.size() == 1);
    CHECK(std::abs(s2.points[0] - Complex(2.0)) <= 1e-12);

    // Identity weight and diagonal operator: the diagonal entries.
    const ComplexMatrix d = ComplexMatrix::diagonal(
        std::vector<Complex>{Complex(1, 1), Complex(-2, 0), Complex(0, 3)});
    const SpectrumSet sd = a_spectrum(SemiHilbertOperator(make_space(ComplexMatrix::identity(3)), d));
    std::vector<Complex> diag_expected = {Complex(1, 1), Complex(-2, 0), Complex(0, 3)};
    CHECK(multiset_match_distance(sd.points, diag_expected) <= 1e-12);
}

TEST_CASE("point spectrum equals the full spectrum at finite dimension") {
    Rng rng(41);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(r, rng), rng);
        const SpectrumSet full = a_spectrum(op);
        const SpectrumSet pt = a_point_spectrum(op);
        CHECK(pt.kind == SpectrumKind::point);
        CHECK(multiset_match_distance(full.points, pt.points) <=
              1e-8 * (1.0 + op.compressed().frobenius_norm()));
    }
}

TEST_CASE("approximate spectrum carries verified witnesses") {
    const SemiHilbertOperator op2(make_space(kA2), kT2);
    const ApproxSpectrum approx = a_approx_spectrum(op2);
    REQUIRE(approx.witnesses.size() == 1);
    const ApproxWitness& w = approx.witnesses[0];
    CHECK(std::abs(w.lambda - Complex(2.0)) <= 1e-12);
    // The witness is the lifted eigenvector (1,1)/2, unit in the seminorm.
    CHECK(std::abs(w.x[0] - Complex(0.5)) <= 1e-12);
    CHECK(std::abs(w.x[1] - Complex(0.5)) <= 1e-12);
    CHECK(op2.space().a_norm(w.x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.residual <= 1e-10);

    Rng rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 3 + trial % 6;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(r, rng), rng);
        const ApproxSpectrum a = a_approx_spectrum(op);
        const double scale = 1.0 + op.compressed().frobenius_norm();
        CHECK(multiset_match_distance(a.set.points, a_spectrum(op).points) <= 1e-8 * scale);
        for (const auto& wit : a.witnesses) {
            CHECK(op.space().a_norm(wit.x) == doctest::Approx(1.0).epsilon(1e-8));
            CHECK(wit.residual <= 1e-6 * scale);
        }
    }
}

TEST_CASE("off-spectrum translates have a singular value margin") {
    Rng rng(43);
    const SpacePtr s = random_space(5, 3, rng);
    const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(3, rng), rng);
    const SpectrumSet spec = a_spectrum(op);
    const Complex mu(7.5, 3.0); // far outside a unit-scale spectrum
    ComplexMatrix shifted = op.compressed();
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= mu;
    const double sigma_min = smallest_singular_value(shifted);
    CHECK(sigma_min > 0.5);
    // Sampled weighted Rayleigh quotients never dip below the margin.
    ComplexMatrix t_shift = op.matrix();
    for (std::size_t i = 0; i < t_shift.rows(); ++i) t_shift(i, i) -= mu;
    for (int k = 0; k < 1000; ++k) {
        ComplexVector w(3);
        for (auto& z : w) z = random_gaussian(rng);
        const double wn = vec_norm(w);
        for (auto& z : w) z /= wn;
        const ComplexVector x = s->unembed(w);
        CHECK(s->a_norm(t_shift.apply(x)) >= sigma_min - 1e-9);
    }
}

TEST_CASE("essential spectrum is empty with a constructive regularizer") {
    const SemiHilbertOperator op5 = five_by_five();
    CHECK(a_essential_spectrum(op5).points.empty());

    for (const Complex lambda : {Complex(0.0), Complex(0, 2), Complex(1.0, 1.0)}) {
        const FredholmWitness w = a_fredholm_witness(op5, lambda);
        CHECK(w.residual1 <= 1e-10);
        CHECK(w.residual2 <= 1e-10);
    }

    const SpacePtr eye = make_space(ComplexMatrix::identity(3));
    Rng rng(44);
    const SemiHilbertOperator any(eye, random_ginibre(3, rng));
    CHECK(a_essential_spectrum(any).points.empty());
    const FredholmWitness w = a_fredholm_witness(any, Complex(0.3, -0.4));
    CHECK(w.residual1 <= 1e-9);
    CHECK(w.residual2 <= 1e-9);
}

TEST_CASE("spectral radius routes") {
    const SemiHilbertOperator op5 = five_by_five();
    const SpectralRadius r5 = a_spectral_radius(op5);
    CHECK(r5.from_spectrum == doctest::Approx(2.0).epsilon(1e-10));

    // Nilpotent gap: radius zero, seminorm one.
    const SpacePtr eye = make_space(ComplexMatrix::identity(2));
    const SemiHilbertOperator nil(eye, ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}));
    const SpectralRadius rn = a_spectral_radius(nil);
    CHECK(rn.from_spectrum <= 1e-12);
    CHECK(rn.from_power_limit <= 1e-12);
    CHECK(a_operator_norm(nil) == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(45);
    for (int trial = 0; trial < 8; ++trial) {
        const SpacePtr s = random_space(6, 4, rng);
        const SemiHilbertOperator op = random_a_normal(s, rng);
        const SpectralRadius r = a_spectral_radius(op);
        CHECK(std::abs(r.from_spectrum - a_operator_norm(op)) <=
              1e-9 * (1.0 + a_operator_norm(op)));
        CHECK(std::abs(r.from_spectrum - r.from_power_limit) <=
              1e-7 * (1.0 + r.from_spectrum));
    }
}

TEST_CASE("spectral mapping on worked cases") {
    const SemiHilbertOperator op2(make_space(kA2), kT2);
    CHECK(spectral_mapping_check(op2, {Complex(0.0), Complex(1.0)})); // p(z) = z
    CHECK(spectral_mapping_check(op2, {Complex(0.0), Complex(0.0), Complex(1.0)})); // z^2
    const SemiHilbertOperator sq(op2.space_ptr(), kT2 * kT2);
    const SpectrumSet s = a_spectrum(sq);
    REQUIRE(s.points.size() == 1);
    CHECK(std::abs(s.points[0] - Complex(4.0)) <= 1e-10);
}

TEST_CASE("spectral mapping on random cubics") {
    Rng rng(46);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(r, rng), rng);
        std::vector<Complex> coeffs(4);
        for (auto& c : coeffs) c = Complex(coef(rng), coef(rng));
        coeffs.back() += Complex(0.7, 0.0);
        CHECK(spectral_mapping_check(op, coeffs, 1e-7));
    }
}

TEST_CASE("spectrum points sit inside the numerical range closure") {
    Rng rng(47);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(r, rng), rng);
        const RegionApprox region = numerical_range(op, 512, 1e-6);
        for (const auto& lambda : a_spectrum(op).points) {
            CHECK(contains_point(region, lambda, 1e-7) != PointLocation::outside);
        }
    }
}

TEST_CASE("invertibility of commuting products and large translates") {
    Rng rng(48);
    const SpacePtr s = random_space(6, 4, rng);
    const ComplexMatrix m1 = random_ginibre(4, rng);
    ComplexMatrix m2 = m1 * m1;
    for (std::size_t i = 0; i < 4; ++i) m2(i, i) += Complex(0.4, 0.2);
    const SemiHilbertOperator t1 = lift(s, m1);
    const SemiHilbertOperator t2 = lift(s, m2);
    const SemiHilbertOperator prod(s, t1.matrix() * t2.matrix());
    CHECK((is_a_invertible(t1) && is_a_invertible(t2)) == is_a_invertible(prod));

    // Singular factor kills the product.
    ComplexMatrix sing = m1;
    {
        // Shift a diagonal entry so that one eigenvalue lands at zero.
        const std::vector<Complex> eigs = general_eig(m1);
        for (std::size_t i = 0; i < 4; ++i) sing(i, i) -= eigs[0];
    }
    const SemiHilbertOperator t_sing = lift(s, sing);
    ComplexMatrix sing2 = sing * sing;
    for (std::size_t i = 0; i < 4; ++i) sing2(i, i) += 1.0;
    const SemiHilbertOperator t_reg = lift(s, sing2); // commutes with t_sing
    const SemiHilbertOperator prod2(s, t_sing.matrix() * t_reg.matrix());
    CHECK_FALSE(is_a_invertible(t_sing));
    CHECK_FALSE(is_a_invertible(prod2));

    // |lambda| beyond the seminorm forces invertibility.
    const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(4, rng), rng);
    const double lam = 1.5 * a_operator_norm(op) + 0.25;
    ComplexMatrix shifted = -op.matrix();
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += lam;
    CHECK(is_a_invertible(SemiHilbertOperator(s, shifted)));
}

TEST_CASE("boundary of the spectrum is the spectrum at finite dimension") {
    Rng rng(49);
    const SpacePtr s = random_space(7, 5, rng);
    const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(5, rng), rng);
    const SpectrumSet full = a_spectrum(op);
    const ApproxSpectrum approx = a_approx_spectrum(op);
    // Finite sets are their own boundary; containment becomes equality.
    CHECK(multiset_match_distance(full.points, approx.set.points) <=
          1e-8 * (1.0 + op.compressed().frobenius_norm()));
}
