#pragma once

#include <memory>
#include <mutex>

#include "semihilbert/complex_matrix.hpp"
#include "semihilbert/space.hpp"

namespace semihilbert {

/// A pair (space, T). On construction two membership residuals are
/// computed:
///
///  - the A-bounded class: T leaves N(A) invariant, tested as
///    || A^(1/2) T (I - P) ||_F up to scale;
///  - the A-adjointable class: R(T^* A) is contained in R(A), tested as
///    || (I - P) T^* A ||_F up to scale.
///
/// Douglas range inclusion reduces to these projection residuals at
/// finite dimension. The compressed matrix
///
///    M = Lambda^(1/2) Q^* T Q Lambda^(-1/2)
///
/// realizes the induced operator on the range-space model and is cached
/// write-once, so concurrent readers of a shared operator are fine.
class SemiHilbertOperator {
public:
    SemiHilbertOperator(SpacePtr space, ComplexMatrix t, double tol = 1e-10);

    const SemiHilbertSpace& space() const noexcept { return *space_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }
    const ComplexMatrix& matrix() const noexcept { return t_; }
    double tol() const noexcept { return tol_; }

    bool in_b_a_half() const noexcept { return in_b_a_half_; }
    bool in_b_a() const noexcept { return in_b_a_; }
    double b_a_half_residual() const noexcept { return half_residual_; }
    double b_a_residual() const noexcept { return ba_residual_; }

    /// The r x r compressed matrix. Throws NotABoundedError when the
    /// operator is not A-bounded.
    const ComplexMatrix& compressed() const;

    /// Compression of the restriction P T P. Defined for every
    /// operator and equal to compressed() exactly on the A-bounded
    /// ones, where the restriction determines the induced operator.
    const ComplexMatrix& range_compression() const;

    /// Frobenius residual of the intertwining relation
    /// M Lambda^(1/2) Q^* = Lambda^(1/2) Q^* T, available after the
    /// compression has been formed.
    double intertwining_residual() const;

private:
    struct Cache {
        std::once_flag once;
        ComplexMatrix m;
        double residual = 0.0;
    };

    SpacePtr space_;
    ComplexMatrix t_;
    double tol_;
    bool in_b_a_half_ = false;
    bool in_b_a_ = false;
    double half_residual_ = 0.0;
    double ba_residual_ = 0.0;
    std::shared_ptr<Cache> cache_;
};

/// The distinguished adjoint A^+ T^* A. Requires membership in the
/// A-adjointable class.
SemiHilbertOperator sharp(const SemiHilbertOperator& op);

ComplexMatrix compress(const SemiHilbertOperator& op);

/// Inverse of compression: the unique operator with range inside R(A)
/// and kernel containing N(A) whose compression is `m`.
SemiHilbertOperator lift(SpacePtr space, const ComplexMatrix& m);

/// Operator seminorm, the largest singular value of the compression.
double a_operator_norm(const SemiHilbertOperator& op);

struct ANormalDiagnostics {
    double matrix_residual = 0.0;     // || A T# T - A T T# ||_F, relative
    double compressed_residual = 0.0; // || M M^* - M^* M ||_F, relative
    double classic_residual = 0.0;    // || T# T - T T# ||_F, relative
    bool refined = false;             // weighted commutation holds
    bool classic = false;             // plain commutation of T# and T holds
};

/// Both routes to normality of the induced operator: the weighted
/// commutator A T# T = A T T# and normality of the compression. The two
/// are equivalent; the implementation computes both and insists they
/// agree. The `classic` flag in the diagnostics tracks the stronger
/// unweighted commutation T# T = T T#, which can fail while the
/// weighted form holds.
bool is_a_normal(const SemiHilbertOperator& op, double tol = 1e-10);
ANormalDiagnostics a_normal_diagnostics(const SemiHilbertOperator& op, double tol = 1e-10);

/// Weighted hyponormality: the Hermitian matrix A T# T - A T T# is
/// positive semidefinite up to tolerance.
bool is_a_hyponormal(const SemiHilbertOperator& op, double tol = 1e-10);

/// Two-sided inverse modulo the weight: S with A T S = A S T = A.
/// Exists exactly when the compression has no eigenvalue at zero.
SemiHilbertOperator a_inverse(const SemiHilbertOperator& op, double tol = 1e-10);

bool is_a_invertible(const SemiHilbertOperator& op, double tol = 1e-10);

} // namespace semihilbert
