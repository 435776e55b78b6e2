#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semihilbert/operator.hpp"

namespace semihilbert {

/// Antilinear conjugation C x = J conj(x) on the range-space model,
/// represented by its symmetric unitary matrix J. Symmetry together
/// with unitarity is equivalent to J conj(J) = I, the involution law.
struct Conjugation {
    ComplexMatrix j;
};

/// Validates unitarity and symmetry of `j` within tol.
Conjugation make_conjugation(ComplexMatrix j, double tol = 1e-8);

/// C-symmetry of a compressed matrix: M = J M^T J^*.
bool is_cso_with(const ComplexMatrix& m, const Conjugation& c, double tol = 1e-8);
bool is_cso_with(const SemiHilbertOperator& op, const Conjugation& c, double tol = 1e-8);

enum class CsoVerdict { yes, no, unknown };

/// Both certificates carried by a positive verdict: an orthonormal
/// family {x_n} whose images A x_n form an orthonormal basis of the
/// range-space model in which the operator acts by a symmetric matrix.
struct SymmetricBasisCertificate {
    std::vector<ComplexVector> family;  // the x_n, living in R(A)
    double symmetry_residual = 0.0;     // max |<T x_n, x_m>_A - <T x_m, x_n>_A|
    double orthonormal_residual = 0.0;  // max |<x_n, x_m>_A - delta_nm|
};

struct CsoResult {
    CsoVerdict verdict = CsoVerdict::unknown;
    std::optional<Conjugation> witness;
    std::optional<SymmetricBasisCertificate> certificate;
    std::string reason;
};

/// Decides whether the compression is a complex symmetric operator.
///
/// yes  - a conjugation witness was found and verified; the
///        symmetric-form certificate is attached.
/// no   - certified impossible, either by the eigenvector-angle
///        criterion (distinct eigenvalues: the Gram moduli of right and
///        left eigenvectors must agree) or by a trace-word asymmetry
///        (a word trace differing from its reversal rules out unitary
///        equivalence to the transpose, which C-symmetry implies).
/// unknown - the bounded witness search failed without a certificate
///        of impossibility.
CsoResult induces_cso(const SemiHilbertOperator& op, double tol = 1e-8);

/// Same decision applied directly to a compressed matrix.
CsoResult matrix_induces_cso(const ComplexMatrix& m, double tol = 1e-8);

/// Orthonormal basis of fixed points of the conjugation.
ComplexMatrix c_real_basis(const Conjugation& c, double tol = 1e-8);

} // namespace semihilbert
