#include "semihilbert/space.hpp"

#include <cmath>

#include "semihilbert/errors.hpp"

namespace semihilbert {

SemiHilbertSpace::SemiHilbertSpace(ComplexMatrix a, PsdFactorization f, double rank_tol)
    : a_(std::move(a)), f_(std::move(f)), rank_tol_(rank_tol) {
    p_ = f_.range_basis * f_.range_basis.adjoint();
}

Complex SemiHilbertSpace::a_inner(const ComplexVector& x, const ComplexVector& y) const {
    return vec_dot(a_.apply(x), y);
}

double SemiHilbertSpace::a_norm(const ComplexVector& x) const {
    const double v = a_inner(x, x).real();
    return std::sqrt(std::max(v, 0.0));
}

ComplexVector SemiHilbertSpace::embed(const ComplexVector& x) const {
    if (x.size() != dim()) throw DimensionError("embed: vector length mismatch");
    ComplexVector out(rank(), Complex(0.0));
    for (std::size_t k = 0; k < rank(); ++k) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < dim(); ++i) acc += std::conj(f_.range_basis(i, k)) * x[i];
        out[k] = std::sqrt(f_.lambda[k]) * acc;
    }
    return out;
}

ComplexVector SemiHilbertSpace::unembed(const ComplexVector& coords) const {
    if (coords.size() != rank()) throw DimensionError("unembed: coordinate length mismatch");
    ComplexVector out(dim(), Complex(0.0));
    for (std::size_t k = 0; k < rank(); ++k) {
        const Complex c = coords[k] / std::sqrt(f_.lambda[k]);
        for (std::size_t i = 0; i < dim(); ++i) out[i] += f_.range_basis(i, k) * c;
    }
    return out;
}

SpacePtr make_space(const ComplexMatrix& a, double rank_tol) {
    if (!a.is_square()) throw DimensionError("make_space: weight must be square");
    if (a.rows() == 0) throw DimensionError("make_space: empty weight");
    if (!a.is_hermitian(1e-10)) throw NotPositiveError("make_space: weight is not Hermitian");
    if (a.frobenius_norm() <= 0.0) throw NotPositiveError("make_space: weight is zero");

    PsdFactorization f = psd_pinv_sqrt(a, rank_tol);
    if (f.rank == 0) throw NotPositiveError("make_space: weight is numerically zero");
    return std::make_shared<const SemiHilbertSpace>(a, std::move(f), rank_tol);
}

} // namespace semihilbert
