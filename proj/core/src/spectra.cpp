#include "semihilbert/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semihilbert/eig.hpp"
#include "semihilbert/errors.hpp"

namespace semihilbert {

SpectrumSet a_spectrum(const SemiHilbertOperator& op) {
    SpectrumSet s;
    s.points = general_eig(op.compressed());
    s.kind = SpectrumKind::full;
    return s;
}

SpectrumSet a_point_spectrum(const SemiHilbertOperator& op) {
    if (!op.in_b_a_half()) throw NotABoundedError("a_point_spectrum: operator is not A-bounded");
    const SemiHilbertSpace& sp = op.space();
    const std::size_t r = sp.rank();
    const std::size_t n = sp.dim();
    const ComplexMatrix tq = op.matrix() * sp.range_basis();
    ComplexMatrix qtq(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += std::conj(sp.range_basis()(k, i)) * tq(k, j);
            qtq(i, j) = acc;
        }
    SpectrumSet s;
    s.points = general_eig(qtq);
    s.kind = SpectrumKind::point;
    return s;
}

ApproxSpectrum a_approx_spectrum(const SemiHilbertOperator& op) {
    const ComplexMatrix& m = op.compressed();
    const std::size_t r = m.rows();
    ApproxSpectrum out;
    out.set = a_spectrum(op);
    out.set.kind = SpectrumKind::approximate;

    for (const Complex lambda : out.set.points) {
        ComplexMatrix shifted = m;
        for (std::size_t i = 0; i < r; ++i) shifted(i, i) -= lambda;
        // Smallest right singular vector gives the best near-kernel
        // direction; lift its coordinates back into R(A).
        const Svd s = svd(shifted);
        ComplexVector w(r);
        const std::size_t last = r - 1;
        for (std::size_t i = 0; i < r; ++i) w[i] = s.v(i, last);
        const double wn = vec_norm(w);
        if (wn > 0.0)
            for (auto& z : w) z /= wn;

        ApproxWitness witness;
        witness.lambda = lambda;
        witness.x = op.space().unembed(w);
        ComplexVector tx = op.matrix().apply(witness.x);
        for (std::size_t i = 0; i < tx.size(); ++i) tx[i] -= lambda * witness.x[i];
        witness.residual = op.space().a_norm(tx);
        out.witnesses.push_back(std::move(witness));
    }
    return out;
}

SpectrumSet a_essential_spectrum(const SemiHilbertOperator& op) {
    if (!op.in_b_a_half()) {
        throw NotABoundedError("a_essential_spectrum: operator is not A-bounded");
    }
    SpectrumSet s;
    s.kind = SpectrumKind::essential;
    return s; // finite-rank weight: empty
}

FredholmWitness a_fredholm_witness(const SemiHilbertOperator& op, Complex lambda) {
    const ComplexMatrix& m = op.compressed();
    const std::size_t r = m.rows();
    ComplexMatrix shifted = m;
    for (std::size_t i = 0; i < r; ++i) shifted(i, i) -= lambda;

    const ComplexMatrix pinv = pseudo_inverse(shifted, 1e-12);
    const ComplexMatrix eye = ComplexMatrix::identity(r);
    SemiHilbertOperator s_op = lift(op.space_ptr(), pinv);
    const ComplexMatrix k1 = (lift(op.space_ptr(), shifted * pinv - eye)).matrix();
    const ComplexMatrix k2 = (lift(op.space_ptr(), pinv * shifted - eye)).matrix();

    const ComplexMatrix& a = op.space().a();
    ComplexMatrix t_shift = op.matrix();
    for (std::size_t i = 0; i < t_shift.rows(); ++i) t_shift(i, i) -= lambda;

    const double scale = std::max(a.frobenius_norm() * (1.0 + t_shift.frobenius_norm()), 1e-300);
    const double res1 =
        (a * (t_shift * s_op.matrix()) - a - a * k1).frobenius_norm() / scale;
    const double res2 =
        (a * (s_op.matrix() * t_shift) - a - a * k2).frobenius_norm() / scale;
    return FredholmWitness{std::move(s_op), k1, k2, res1, res2};
}

SpectralRadius a_spectral_radius(const SemiHilbertOperator& op) {
    const SpectrumSet spec = a_spectrum(op);
    double r_spec = 0.0;
    for (const auto& l : spec.points) r_spec = std::max(r_spec, std::abs(l));

    // ||M^(2^k)||^(1/2^k) by repeated squaring with rescaling; the log
    // bookkeeping avoids overflow and underflow along the way.
    const int k_max = 7;
    ComplexMatrix b = op.compressed();
    double log_acc = 0.0; // log ||M^(2^k)|| - log ||b_k||, accumulated scaling
    double r_limit = 0.0;
    for (int k = 0; k < k_max; ++k) {
        const double nb = largest_singular_value(b);
        if (nb <= 0.0) {
            r_limit = 0.0;
            log_acc = -std::numeric_limits<double>::infinity();
            break;
        }
        ComplexMatrix scaled = b;
        scaled *= Complex(1.0 / nb);
        b = scaled * scaled;
        log_acc = 2.0 * (log_acc + std::log(nb));
    }
    if (std::isfinite(log_acc)) {
        const double nb = largest_singular_value(b);
        if (nb <= 0.0) {
            r_limit = 0.0;
        } else {
            r_limit = std::exp((log_acc + std::log(nb)) / std::pow(2.0, k_max));
        }
    }
    return SpectralRadius{r_spec, r_limit};
}

ComplexMatrix apply_polynomial(const ComplexMatrix& t, const std::vector<Complex>& coeffs) {
    if (!t.is_square()) throw DimensionError("apply_polynomial: matrix must be square");
    const std::size_t n = t.rows();
    if (coeffs.empty()) return ComplexMatrix(n, n);
    ComplexMatrix acc(n, n);
    for (std::size_t i = 0; i < n; ++i) acc(i, i) = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        acc = acc * t;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += coeffs[k];
    }
    return acc;
}

double multiset_match_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const std::size_t n = a.size();
    std::vector<bool> used_a(n, false);
    std::vector<bool> used_b(n, false);
    double worst = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_a[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (used_b[j]) continue;
                const double d = std::abs(a[i] - b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = true;
        used_b[bj] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

bool spectral_mapping_check(const SemiHilbertOperator& op, const std::vector<Complex>& coeffs,
                            double tol) {
    if (coeffs.size() > 7) {
        throw DimensionError("spectral_mapping_check: polynomial degree above the supported cap");
    }
    const SpectrumSet base = a_spectrum(op);
    const SemiHilbertOperator pt(op.space_ptr(), apply_polynomial(op.matrix(), coeffs), op.tol());
    const SpectrumSet lhs = a_spectrum(pt);

    std::vector<Complex> rhs;
    rhs.reserve(base.points.size());
    double max_mod = 0.0;
    for (const auto& l : base.points) max_mod = std::max(max_mod, std::abs(l));
    for (const auto& l : base.points) {
        Complex acc = 0.0;
        Complex p = 1.0;
        for (const auto& c : coeffs) {
            acc += c * p;
            p *= l;
        }
        rhs.push_back(acc);
    }

    const double deg = coeffs.empty() ? 0.0 : static_cast<double>(coeffs.size() - 1);
    const double bound = tol * std::pow(1.0 + max_mod, deg);
    return multiset_match_distance(lhs.points, rhs) <= bound;
}

} // namespace semihilbert
