#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "semihilbert/eig.hpp"
#include "semihilbert/errors.hpp"
#include "semihilbert/generators.hpp"
#include "semihilbert/operator.hpp"
#include "semihilbert/space.hpp"
#include "semihilbert/spectra.hpp"

using namespace semihilbert;

namespace {

const ComplexMatrix kA2 = ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
const ComplexMatrix kT2 = ComplexMatrix::from_rows({{2.0, 2.0}, {0.0, 0.0}});

ComplexMatrix five_by_five_weight() {
    return ComplexMatrix::diagonal(std::vector<double>{1, 1, 2, 1, 1});
}

} // namespace

TEST_CASE("make_space on the rank-one all-ones weight") {
    const SpacePtr s = make_space(kA2);
    CHECK(s->rank() == 1);
    CHECK(s->lambda()[0] == doctest::Approx(2.0).epsilon(1e-14));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s->range_basis()(0, 0) - Complex(inv_sqrt2)) <= 1e-13);
    CHECK(std::abs(s->range_basis()(1, 0) - Complex(inv_sqrt2)) <= 1e-13);
    // P = Q Q^*, idempotent Hermitian, A P = A.
    const ComplexMatrix& p = s->projection();
    CHECK((p * p - p).frobenius_norm() <= 1e-13);
    CHECK((p - p.adjoint()).frobenius_norm() <= 1e-13);
    CHECK((s->a() * p - s->a()).frobenius_norm() <= 1e-13);
}

TEST_CASE("make_space on identity and the block weight") {
    CHECK(make_space(ComplexMatrix::identity(4))->rank() == 4);
    CHECK(make_space(five_by_five_weight())->rank() == 5);
}

TEST_CASE("make_space rejects bad weights") {
    CHECK_THROWS_AS(make_space(ComplexMatrix(3, 3)), NotPositiveError);
    CHECK_THROWS_AS(make_space(ComplexMatrix::diagonal(std::vector<double>{1.0, -1.0})),
                    NotPositiveError);
    CHECK_THROWS_AS(make_space(ComplexMatrix::from_rows({{0.0, 1.0}, {-1.0, 0.0}})),
                    NotPositiveError);
}

TEST_CASE("weighted norm basics") {
    const SpacePtr eye = make_space(ComplexMatrix::identity(3));
    CHECK(eye->a_norm({1.0, 0.0, 0.0}) == doctest::Approx(1.0));

    // Harmonic weights make sqrt(n) e_n unit vectors.
    const std::size_t n = 6;
    std::vector<double> diag(n);
    for (std::size_t k = 0; k < n; ++k) diag[k] = 1.0 / static_cast<double>(k + 1);
    const SpacePtr harmonic = make_space(ComplexMatrix::diagonal(diag));
    ComplexVector x(n, Complex(0.0));
    x[n - 1] = std::sqrt(static_cast<double>(n));
    CHECK(harmonic->a_norm(x) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("weighted norm agrees with the square-root route and kills the kernel") {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + trial % 5;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        ComplexVector x(n);
        for (auto& z : x) z = random_gaussian(rng);
        const ComplexVector hx = s->half().apply(x);
        CHECK(s->a_norm(x) == doctest::Approx(vec_norm(hx)).epsilon(1e-10));

        // Kernel directions have zero seminorm. The quadratic form
        // cancels order-one terms, so the square root floors near
        // sqrt(machine epsilon) times the scale.
        const ComplexMatrix complement = ComplexMatrix::identity(n) - s->projection();
        const ComplexVector kx = complement.apply(x);
        CHECK(s->a_norm(kx) <= 1e-7 * (1.0 + vec_norm(x)));
    }
}

TEST_CASE("membership flags and their failure") {
    const SpacePtr s = make_space(ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0}));
    // e2 -> e1 leaves the kernel, so no compression exists.
    const SemiHilbertOperator bad(s, ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}));
    CHECK_FALSE(bad.in_b_a_half());
    CHECK_FALSE(bad.in_b_a());
    CHECK_THROWS_AS(bad.compressed(), NotABoundedError);
    CHECK_THROWS_AS(sharp(bad), NotAAdjointableError);

    const SemiHilbertOperator good(s, ComplexMatrix::from_rows({{0.0, 0.0}, {1.0, 0.0}}));
    CHECK(good.in_b_a_half());
    CHECK(good.in_b_a());
}

TEST_CASE("sharp on the worked pair and standard identities") {
    const SpacePtr s = make_space(kA2);
    const SemiHilbertOperator op(s, kT2);
    const SemiHilbertOperator adj = sharp(op);
    CHECK((adj.matrix() - ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}})).frobenius_norm() <=
          1e-13);

    // Identity weight: the sharp is the conjugate transpose.
    Rng rng(22);
    const SpacePtr eye = make_space(ComplexMatrix::identity(4));
    const ComplexMatrix t = random_ginibre(4, rng);
    const SemiHilbertOperator classical(eye, t);
    CHECK((sharp(classical).matrix() - t.adjoint()).frobenius_norm() <= 1e-12);

    // T = I lifts to the projection.
    const SemiHilbertOperator ident(s, ComplexMatrix::identity(2));
    CHECK((sharp(ident).matrix() - s->projection()).frobenius_norm() <= 1e-12);
}

TEST_CASE("sharp satisfies the adjoint relation on a basis") {
    Rng rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 3 + trial % 4;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(r, rng), rng);
        const SemiHilbertOperator adj = sharp(op);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ComplexVector ei(n, Complex(0.0));
            ei[i] = 1.0;
            const ComplexVector ti = op.matrix().apply(ei);
            for (std::size_t j = 0; j < n; ++j) {
                ComplexVector ej(n, Complex(0.0));
                ej[j] = 1.0;
                const ComplexVector wj = adj.matrix().apply(ej);
                worst = std::max(worst, std::abs(s->a_inner(ti, ej) - s->a_inner(ei, wj)));
            }
        }
        CHECK(worst <= 1e-9 * (1.0 + op.matrix().frobenius_norm()));
    }
}

TEST_CASE("compress on the worked pair, identity weight, and the intertwining relation") {
    const SpacePtr s = make_space(kA2);
    const SemiHilbertOperator op(s, kT2);
    const ComplexMatrix m = compress(op);
    CHECK(m.rows() == 1);
    CHECK(std::abs(m(0, 0) - Complex(2.0)) <= 1e-12);
    CHECK(op.intertwining_residual() <= 1e-12);

    Rng rng(24);
    const SpacePtr eye = make_space(ComplexMatrix::identity(3));
    const ComplexMatrix t = random_ginibre(3, rng);
    CHECK((compress(SemiHilbertOperator(eye, t)) - t).frobenius_norm() <= 1e-12);
}

TEST_CASE("compress is an algebra homomorphism") {
    Rng rng(25);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 4 + trial % 4;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        const SemiHilbertOperator t1 = random_b_a_member(s, random_ginibre(r, rng), rng);
        const SemiHilbertOperator t2 = random_b_a_member(s, random_ginibre(r, rng), rng);
        const Complex lambda = random_gaussian(rng);

        const ComplexMatrix m1 = compress(t1);
        const ComplexMatrix m2 = compress(t2);
        const SemiHilbertOperator prod(s, t1.matrix() * t2.matrix());
        const SemiHilbertOperator comb(s, t1.matrix() + lambda * t2.matrix());
        const double scale = (1.0 + m1.frobenius_norm()) * (1.0 + m2.frobenius_norm());
        CHECK((compress(prod) - m1 * m2).frobenius_norm() <= 1e-10 * scale);
        CHECK((compress(comb) - (m1 + lambda * m2)).frobenius_norm() <=
              1e-10 * scale * (1.0 + std::abs(lambda)));

        // Adjoint compresses to the conjugate transpose.
        CHECK((compress(sharp(t1)) - m1.adjoint()).frobenius_norm() <=
              1e-9 * (1.0 + m1.frobenius_norm()));
    }
}

TEST_CASE("lift inverts compress") {
    const SpacePtr s = make_space(kA2);
    // The identity lifts to the projection.
    CHECK((lift(s, ComplexMatrix::identity(1)).matrix() - s->projection()).frobenius_norm() <=
          1e-13);
    ComplexMatrix two(1, 1);
    two(0, 0) = 2.0;
    CHECK((lift(s, two).matrix() - ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}))
              .frobenius_norm() <= 1e-13);

    Rng rng(26);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 3 + trial % 5;
        const std::size_t r = 1 + trial % n;
        const SpacePtr sp = random_space(n, r, rng);
        const ComplexMatrix m = random_ginibre(r, rng);
        const SemiHilbertOperator lifted = lift(sp, m);
        CHECK((compress(lifted) - m).frobenius_norm() <= 1e-12 * (1.0 + m.frobenius_norm()));
        // Range lives inside R(A) and the kernel is annihilated.
        const ComplexMatrix complement = ComplexMatrix::identity(n) - sp->projection();
        CHECK((complement * lifted.matrix()).frobenius_norm() <=
              1e-10 * (1.0 + lifted.matrix().frobenius_norm()));
        CHECK((lifted.matrix() * complement).frobenius_norm() <=
              1e-10 * (1.0 + lifted.matrix().frobenius_norm()));
        CHECK_THROWS_AS(lift(sp, ComplexMatrix(r + 1, r + 1)), DimensionError);
    }
}

TEST_CASE("operator seminorm") {
    const SpacePtr s = make_space(kA2);
    CHECK(a_operator_norm(SemiHilbertOperator(s, kT2)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a_operator_norm(SemiHilbertOperator(s, s->projection())) ==
          doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(27);
    const SpacePtr eye = make_space(ComplexMatrix::identity(4));
    CHECK(a_operator_norm(SemiHilbertOperator(eye, random_unitary(4, rng))) ==
          doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("operator seminorm dominates sampled Rayleigh quotients") {
    Rng rng(28);
    const std::size_t n = 5;
    const SpacePtr s = random_space(n, 3, rng);
    const SemiHilbertOperator op = random_b_a_member(s, random_ginibre(3, rng), rng);
    const double norm = a_operator_norm(op);
    double best = 0.0;
    for (int k = 0; k < 4000; ++k) {
        ComplexVector x(n);
        for (auto& z : x) z = random_gaussian(rng);
        const double nx = s->a_norm(x);
        if (nx < 1e-8) continue;
        best = std::max(best, s->a_norm(op.matrix().apply(x)) / nx);
    }
    CHECK(best <= norm + 1e-9);
    CHECK(best >= 0.9 * norm); // sampling comes close at this size
}

TEST_CASE("weighted normality on the worked pair") {
    const SpacePtr s = make_space(kA2);
    const SemiHilbertOperator op(s, kT2);
    CHECK(is_a_normal(op));
    const SemiHilbertOperator adj = sharp(op);
    // The unweighted products differ even though the weighted ones agree.
    CHECK((adj.matrix() * kT2 - kT2 * adj.matrix()).frobenius_norm() > 1.0);
    const ANormalDiagnostics d = a_normal_diagnostics(op);
    CHECK(d.refined);
    CHECK_FALSE(d.classic);
}

TEST_CASE("weighted normality rejects the nilpotent block and the 5x5 example") {
    const SpacePtr eye = make_space(ComplexMatrix::identity(2));
    CHECK_FALSE(is_a_normal(
        SemiHilbertOperator(eye, ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}))));

    ComplexMatrix t5(5, 5);
    t5(0, 1) = 1.0;
    t5(2, 2) = Complex(0, 2);
    t5(3, 3) = Complex(-1.5, -1);
    t5(4, 4) = Complex(1.5, -1);
    CHECK_FALSE(is_a_normal(SemiHilbertOperator(make_space(five_by_five_weight()), t5)));
}

TEST_CASE("seminorm equality characterizes weighted normality") {
    Rng rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        const SemiHilbertOperator op =
            (trial % 2 == 0) ? random_a_normal(s, rng) : random_a_nonnormal(s, rng);
        const SemiHilbertOperator adj = sharp(op);
        const ComplexMatrix& a = s->a();
        const double scale =
            std::max(1.0, a.frobenius_norm() * std::pow(op.matrix().frobenius_norm(), 2));
        const double residual = (op.matrix().adjoint() * (a * op.matrix()) -
                                 adj.matrix().adjoint() * (a * adj.matrix()))
                                    .frobenius_norm() /
                                scale;
        CHECK((residual <= 1e-9) == is_a_normal(op));

        // The sharp inherits normality both ways.
        CHECK(is_a_normal(adj) == is_a_normal(op));
    }
}

TEST_CASE("normality survives translation") {
    Rng rng(30);
    const SpacePtr s = random_space(6, 4, rng);
    const SemiHilbertOperator op = random_a_normal(s, rng);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        const Complex lambda(coord(rng), coord(rng));
        ComplexMatrix shifted = op.matrix();
        for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= lambda;
        CHECK(is_a_normal(SemiHilbertOperator(s, shifted)));
    }
}

TEST_CASE("weighted hyponormality at finite dimension") {
    const SpacePtr eye = make_space(ComplexMatrix::identity(2));
    // Any weighted normal operator is hyponormal.
    const SpacePtr s = make_space(kA2);
    CHECK(is_a_hyponormal(SemiHilbertOperator(s, kT2)));

    // Both shift orientations produce an indefinite defect diag(+-1):
    // at finite rank hyponormal collapses to normal.
    const ComplexMatrix up = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
    const ComplexMatrix down = ComplexMatrix::from_rows({{0.0, 0.0}, {1.0, 0.0}});
    CHECK_FALSE(is_a_hyponormal(SemiHilbertOperator(eye, up)));
    CHECK_FALSE(is_a_hyponormal(SemiHilbertOperator(eye, down)));

    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const SpacePtr sp = random_space(5, 3, rng);
        CHECK(is_a_hyponormal(random_a_normal(sp, rng)));
    }
}

TEST_CASE("weighted inverse") {
    const SpacePtr s = make_space(kA2);
    // The projection inverts itself modulo the weight.
    const SemiHilbertOperator proj(s, s->projection());
    const SemiHilbertOperator pinv = a_inverse(proj);
    CHECK((s->a() * (proj.matrix() * pinv.matrix()) - s->a()).frobenius_norm() <= 1e-12);

    Rng rng(33);
    const SpacePtr eye = make_space(ComplexMatrix::identity(4));
    ComplexMatrix t = random_ginibre(4, rng);
    for (std::size_t i = 0; i < 4; ++i) t(i, i) += 3.0; // keep it invertible
    const SemiHilbertOperator classical(eye, t);
    CHECK((a_inverse(classical).matrix() - inverse(t)).frobenius_norm() <=
          1e-9 * (1.0 + inverse(t).frobenius_norm()));

    // Nilpotent compressions are not invertible.
    const SemiHilbertOperator nil(eye, ComplexMatrix::from_rows(
                                           {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}).direct_sum(
                                           ComplexMatrix::identity(1)));
    CHECK_THROWS_AS(a_inverse(nil), NotAInvertibleError);
}

TEST_CASE("weighted inverse residuals and the adjoint inverse identity") {
    Rng rng(34);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 3 + trial % 5;
        const std::size_t r = 1 + trial % n;
        const SpacePtr s = random_space(n, r, rng);
        ComplexMatrix m = random_ginibre(r, rng);
        for (std::size_t i = 0; i < r; ++i) m(i, i) += 3.0;
        const SemiHilbertOperator op = random_b_a_member(s, m, rng);
        const SemiHilbertOperator inv = a_inverse(op);
        const ComplexMatrix& a = s->a();
        const double scale = 1.0 + a.frobenius_norm() * (1.0 + m.frobenius_norm());
        CHECK((a * (op.matrix() * inv.matrix()) - a).frobenius_norm() <= 1e-10 * scale);
        CHECK((a * (inv.matrix() * op.matrix()) - a).frobenius_norm() <= 1e-10 * scale);

        // Adjoints invert on the weighted side as well.
        const ComplexMatrix ts = sharp(op).matrix();
        const ComplexMatrix ss = sharp(inv).matrix();
        CHECK((a * (ss * ts) - a).frobenius_norm() <= 1e-9 * scale);
        CHECK((a * (ts * ss) - a).frobenius_norm() <= 1e-9 * scale);
    }
}

TEST_CASE("inverse of a weighted normal operator stays weighted normal") {
    Rng rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        const SpacePtr s = random_space(6, 4, rng);
        const SemiHilbertOperator op = random_a_normal(s, rng);
        if (!is_a_invertible(op)) continue;
        CHECK(is_a_normal(a_inverse(op)));
    }
}
