#pragma once

#include <cstddef>
#include <vector>

#include "semihilbert/complex_matrix.hpp"

namespace semihilbert {

/// Eigendecomposition of a Hermitian matrix. `values` ascend and
/// `vectors` is unitary with eigenvectors as columns, so
/// H * vectors = vectors * diag(values).
struct HermEig {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Cyclic Jacobi with threshold sweeps. Unconditionally stable; keeps
/// rotating until the off-diagonal mass falls below tol * ||H||_F.
HermEig herm_eig(const ComplexMatrix& h, double tol = 1e-14);

/// Eigenvalues of a general square complex matrix via Householder
/// Hessenberg reduction followed by Wilkinson-shifted QR with
/// deflation (Givens sweeps, at most 30 n shift steps, exceptional
/// shift every tenth step on a stuck block). Returns all n eigenvalues
/// sorted by (real, imag); throws ConvergenceError carrying the partial
/// deflation state if the iteration budget is exhausted.
std::vector<Complex> general_eig(const ComplexMatrix& m);

/// Thin singular value decomposition b = u * diag(sigma) * v^*, built on
/// the Hermitian eigensolver applied to b^* b. Singular values descend;
/// columns of `u` for singular values below rel_tol * sigma_max are
/// completed to an orthonormal set only as far as the positive part.
struct Svd {
    std::vector<double> sigma; // descending
    ComplexMatrix u;           // rows(b) x k
    ComplexMatrix v;           // cols(b) x k
};
Svd svd(const ComplexMatrix& b);

double largest_singular_value(const ComplexMatrix& b);
double smallest_singular_value(const ComplexMatrix& b);

/// Moore-Penrose pseudoinverse with relative rank cutoff.
ComplexMatrix pseudo_inverse(const ComplexMatrix& b, double rel_tol = 1e-12);

/// Inverse via LU with partial pivoting. Throws NotAInvertibleError on a
/// numerically singular pivot.
ComplexMatrix inverse(const ComplexMatrix& m);

/// Spectral factorization package of a positive semidefinite matrix:
/// pseudoinverse, square root, pseudoinverse of the square root, an
/// orthonormal range basis and the positive eigenvalues.
struct PsdFactorization {
    ComplexMatrix dagger;      // A^+
    ComplexMatrix half;        // A^(1/2)
    ComplexMatrix half_dagger; // (A^(1/2))^+
    ComplexMatrix range_basis; // n x r, orthonormal columns spanning R(A)
    std::vector<double> lambda; // r positive eigenvalues, ascending
    std::size_t rank = 0;
};

/// Eigenvalues at or below rank_tol * lambda_max are truncated to zero.
/// Throws NotPositiveError when an eigenvalue falls below -tol * ||A||.
PsdFactorization psd_pinv_sqrt(const ComplexMatrix& a, double rank_tol = 1e-12);

} // namespace semihilbert
