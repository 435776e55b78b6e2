#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "semihilbert/cso.hpp"
#include "semihilbert/errors.hpp"
#include "semihilbert/generators.hpp"

using namespace semihilbert;

TEST_CASE("conjugation validation") {
    CHECK_NOTHROW(make_conjugation(ComplexMatrix::identity(3)));

    ComplexMatrix flip(3, 3);
    for (std::size_t i = 0; i < 3; ++i) flip(i, 2 - i) = 1.0;
    CHECK_NOTHROW(make_conjugation(flip));

    // Unitary but not symmetric: not an involutive conjugation.
    ComplexMatrix rot(2, 2);
    rot(0, 1) = 1.0;
    rot(1, 0) = -1.0;
    CHECK_THROWS_AS(make_conjugation(rot), Error);

    // Symmetric but far from unitary.
    CHECK_THROWS_AS(make_conjugation(Complex(2.0) * ComplexMatrix::identity(2)), Error);
}

TEST_CASE("scalar and symmetric compressions are C-symmetric") {
    ComplexMatrix one(1, 1);
    one(0, 0) = Complex(3.0, -1.0);
    CHECK(is_cso_with(one, make_conjugation(ComplexMatrix::identity(1))));

    const ComplexMatrix sym =
        ComplexMatrix::from_rows({{1.0, Complex(2, 1)}, {Complex(2, 1), Complex(0, 3)}});
    CHECK(is_cso_with(sym, make_conjugation(ComplexMatrix::identity(2))));
}

TEST_CASE("the balanced superdiagonal matrix is C-symmetric under the flip") {
    const ComplexMatrix t = ComplexMatrix::from_rows({{1, 1, 0}, {0, 0, 1}, {0, 0, 1}});
    ComplexMatrix flip(3, 3);
    for (std::size_t i = 0; i < 3; ++i) flip(i, 2 - i) = 1.0;
    CHECK(is_cso_with(t, make_conjugation(flip)));
    // And matrix_induces_cso finds some witness on its own.
    CHECK(matrix_induces_cso(t).verdict == CsoVerdict::yes);
}

TEST_CASE("rank-one weight induces a scalar compression") {
    const ComplexMatrix a = ComplexMatrix::diagonal(std::vector<double>{1, 0, 0});
    const ComplexMatrix t = ComplexMatrix::from_rows({{1, 1, 0}, {0, 0, 0}, {0, 0, 1}});
    const SemiHilbertOperator op(make_space(a), t);

    const CsoResult res = induces_cso(op);
    CHECK(res.verdict == CsoVerdict::yes);
    REQUIRE(res.witness.has_value());
    REQUIRE(res.certificate.has_value());
    CHECK(res.certificate->symmetry_residual <= 1e-10);
    CHECK(res.certificate->orthonormal_residual <= 1e-10);
}

TEST_CASE("unbalanced superdiagonal weights are rejected") {
    const ComplexMatrix t = ComplexMatrix::from_rows({{1, 1, 0}, {0, 0, 2}, {0, 0, 1}});
    const SemiHilbertOperator op(make_space(ComplexMatrix::identity(3)), t);
    CHECK(induces_cso(op).verdict == CsoVerdict::no);

    // The a=1, b=0 member of the family is not C-symmetric either;
    // at the very least no witness may be produced for it.
    const ComplexMatrix t0 = ComplexMatrix::from_rows({{1, 1, 0}, {0, 0, 0}, {0, 0, 1}});
    const CsoResult res = matrix_induces_cso(t0);
    CHECK(res.verdict != CsoVerdict::yes);
}

TEST_CASE("weighted normal operators induce complex symmetric compressions") {
    Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const std::size_t r = 1 + std::min<std::size_t>(trial % n, 5);
        const SpacePtr s = random_space(n, r, rng);
        const SemiHilbertOperator op = random_a_normal(s, rng);
        const CsoResult res = induces_cso(op);
        REQUIRE(res.verdict == CsoVerdict::yes);
        REQUIRE(res.witness.has_value());
        CHECK(is_cso_with(op.range_compression(), *res.witness, 1e-7));
        REQUIRE(res.certificate.has_value());
        const double scale = 1.0 + op.range_compression().frobenius_norm();
        CHECK(res.certificate->symmetry_residual <= 1e-7 * scale);
        CHECK(res.certificate->orthonormal_residual <= 1e-7);
    }
}

TEST_CASE("the symmetric-form family certifies the equivalence") {
    Rng rng(72);
    const SpacePtr s = random_space(6, 4, rng);
    const SemiHilbertOperator op = random_a_normal(s, rng);
    const CsoResult res = induces_cso(op);
    REQUIRE(res.verdict == CsoVerdict::yes);
    REQUIRE(res.certificate.has_value());
    const auto& family = res.certificate->family;
    REQUIRE(family.size() == 4);
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < family.size(); ++j) {
            const Complex sij = s->a_inner(op.matrix().apply(family[i]), family[j]);
            const Complex sji = s->a_inner(op.matrix().apply(family[j]), family[i]);
            CHECK(std::abs(sij - sji) <= 1e-8 * (1.0 + std::abs(sij)));
            const double expected = i == j ? 1.0 : 0.0;
            CHECK(std::abs(s->a_inner(family[i], family[j]) - expected) <= 1e-8);
        }
    }
}

TEST_CASE("verdict is invariant under unitary similarity") {
    Rng rng(73);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t r = 2 + trial % 4;
        const ComplexMatrix m = random_normal_matrix(r, rng);
        const ComplexMatrix w = random_unitary(r, rng);
        const CsoResult base = matrix_induces_cso(m);
        const CsoResult rotated = matrix_induces_cso(w * m * w.adjoint());
        CHECK(base.verdict == CsoVerdict::yes);
        CHECK(rotated.verdict == CsoVerdict::yes);
    }
    // And a certified negative stays negative.
    const ComplexMatrix bad = ComplexMatrix::from_rows({{1, 1, 0}, {0, 0, 2}, {0, 0, 1}});
    const ComplexMatrix w = random_unitary(3, rng);
    CHECK(matrix_induces_cso(w * bad * w.adjoint()).verdict == CsoVerdict::no);
}

TEST_CASE("c_real_basis spans the fixed subspace") {
    Rng rng(74);
    const std::size_t r = 5;
    const ComplexMatrix u = random_unitary(r, rng);
    const Conjugation c = make_conjugation(u * u.transpose());
    const ComplexMatrix basis = c_real_basis(c);
    // Orthonormal and fixed by the conjugation.
    CHECK((basis.adjoint() * basis - ComplexMatrix::identity(r)).frobenius_norm() <= 1e-9);
    const ComplexMatrix fixed = c.j * basis.conjugate();
    CHECK((fixed - basis).frobenius_norm() <= 1e-7);
}
