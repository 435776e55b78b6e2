#pragma once

#include <vector>

#include "semihilbert/operator.hpp"

namespace semihilbert {

enum class SpectrumKind { full, point, approximate, essential };

struct SpectrumSet {
    std::vector<Complex> points; // multiset, sorted by (re, im)
    SpectrumKind kind = SpectrumKind::full;
    double tol = 0.0; // dedup / matching tolerance used to produce it
};

/// Weighted spectrum: eigenvalues of the compressed operator. Every
/// returned point fails A-invertibility of T - lambda and points with a
/// margin succeed; both directions are exercised by the test suites.
SpectrumSet a_spectrum(const SemiHilbertOperator& op);

/// Weighted point spectrum: eigenvalues of the range compression
/// Q^* T Q. Similar to the full compression, so the two spectra agree
/// as multisets at finite dimension.
SpectrumSet a_point_spectrum(const SemiHilbertOperator& op);

struct ApproxWitness {
    Complex lambda;
    ComplexVector x;  // unit vector in the weighted seminorm, inside R(A)
    double residual;  // ||(T - lambda) x||_A
};

struct ApproxSpectrum {
    SpectrumSet set;
    std::vector<ApproxWitness> witnesses;
};

/// At finite dimension the approximate point spectrum coincides with
/// the full weighted spectrum; each point comes with an explicit
/// weighted-unit witness vector.
ApproxSpectrum a_approx_spectrum(const SemiHilbertOperator& op);

/// Empty for every finite pair: a finite-rank weight makes every
/// translate invertible modulo finite-rank defects.
SpectrumSet a_essential_spectrum(const SemiHilbertOperator& op);

/// Constructive regularizer at lambda: S together with the defects
/// K1, K2 satisfying A (T - lambda) S - A = A K1 and
/// A S (T - lambda) - A = A K2 up to the reported residuals.
struct FredholmWitness {
    SemiHilbertOperator s;
    ComplexMatrix k1;
    ComplexMatrix k2;
    double residual1;
    double residual2;
};
FredholmWitness a_fredholm_witness(const SemiHilbertOperator& op, Complex lambda);

struct SpectralRadius {
    double from_spectrum;    // max |lambda| over the weighted spectrum
    double from_power_limit; // ||M^(2^k)||^(1/2^k) at k = 7, by repeated squaring
};
SpectralRadius a_spectral_radius(const SemiHilbertOperator& op);

/// Evaluate a polynomial (coefficients low to high) on a matrix.
ComplexMatrix apply_polynomial(const ComplexMatrix& t, const std::vector<Complex>& coeffs);

/// Greedy closest-pair multiset matching; returns the largest matched
/// distance, or infinity when the sizes differ.
double multiset_match_distance(std::vector<Complex> a, std::vector<Complex> b);

/// Spectral mapping: the weighted spectrum of p(T) matches the image of
/// the weighted spectrum under p, within a tolerance that grows with
/// the degree and the spectral radius.
bool spectral_mapping_check(const SemiHilbertOperator& op, const std::vector<Complex>& coeffs,
                            double tol = 1e-7);

} // namespace semihilbert
