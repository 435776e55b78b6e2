#pragma once

#include <memory>

#include "semihilbert/complex_matrix.hpp"
#include "semihilbert/eig.hpp"

namespace semihilbert {

/// A nonzero positive semidefinite weight A together with the cached
/// spectral machinery the theory runs on: Moore-Penrose inverse,
/// square root and its pseudoinverse, an orthonormal range basis Q with
/// positive eigenvalues lambda, and the orthogonal projection P onto
/// R(A). The weighted form is <x,y>_A = y^* A x; its seminorm vanishes
/// exactly on the kernel of A.
///
/// Immutable after construction and safe to share between threads.
class SemiHilbertSpace {
public:
    SemiHilbertSpace(ComplexMatrix a, PsdFactorization f, double rank_tol);

    const ComplexMatrix& a() const noexcept { return a_; }
    const ComplexMatrix& dagger() const noexcept { return f_.dagger; }
    const ComplexMatrix& half() const noexcept { return f_.half; }
    const ComplexMatrix& half_dagger() const noexcept { return f_.half_dagger; }
    const ComplexMatrix& range_basis() const noexcept { return f_.range_basis; }
    const std::vector<double>& lambda() const noexcept { return f_.lambda; }
    const ComplexMatrix& projection() const noexcept { return p_; }

    std::size_t dim() const noexcept { return a_.rows(); }
    std::size_t rank() const noexcept { return f_.rank; }
    double rank_tol() const noexcept { return rank_tol_; }

    Complex a_inner(const ComplexVector& x, const ComplexVector& y) const;
    double a_norm(const ComplexVector& x) const;

    /// Coordinates of A x in the orthonormal model of the range space,
    /// i.e. Lambda^(1/2) Q^* x. The compression intertwines through
    /// this map.
    ComplexVector embed(const ComplexVector& x) const;

    /// A representative x in R(A) with the given embedded coordinates.
    ComplexVector unembed(const ComplexVector& coords) const;

private:
    ComplexMatrix a_;
    PsdFactorization f_;
    ComplexMatrix p_;
    double rank_tol_;
};

using SpacePtr = std::shared_ptr<const SemiHilbertSpace>;

/// Validates that `a` is Hermitian positive semidefinite and nonzero,
/// truncating eigenvalues at rank_tol relative to the largest.
SpacePtr make_space(const ComplexMatrix& a, double rank_tol = 1e-12);

} // namespace semihilbert
