#include "semihilbert/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "semihilbert/errors.hpp"

namespace semihilbert {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void sort_eigenpairs(std::vector<double>& values, ComplexMatrix& vectors) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> sorted_values(n);
    ComplexMatrix sorted_vectors(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted_values[k] = values[order[k]];
        for (std::size_t i = 0; i < n; ++i) sorted_vectors(i, k) = vectors(i, order[k]);
    }
    values = std::move(sorted_values);
    vectors = std::move(sorted_vectors);
}

// Make the component of largest modulus real and positive. Purely a
// normalization; keeps repeated runs and diagonal inputs tidy.
void canonicalize_phases(ComplexMatrix& vectors) {
    const std::size_t n = vectors.rows();
    for (std::size_t k = 0; k < vectors.cols(); ++k) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(vectors(i, k));
            if (m > best) {
                best = m;
                arg = i;
            }
        }
        if (best <= 0.0) continue;
        const Complex phase = std::conj(vectors(arg, k)) / best;
        for (std::size_t i = 0; i < n; ++i) vectors(i, k) *= phase;
    }
}

} // namespace

HermEig herm_eig(const ComplexMatrix& h, double tol) {
    if (!h.is_square()) throw DimensionError("herm_eig: matrix must be square");
    const std::size_t n = h.rows();
    if (n == 0) throw DimensionError("herm_eig: empty matrix");
    const double scale = h.frobenius_norm();
    if (!h.is_hermitian(1e-10)) throw Error("herm_eig: matrix is not Hermitian");

    // Work on the exactly Hermitian average with a real diagonal.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
        a(i, i) = Complex(a(i, i).real(), 0.0);
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const int max_sweeps = 64;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        off = std::sqrt(2.0 * off);
        if (off <= tol * std::max(scale, 1e-300)) {
            converged = true;
            break;
        }

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mod = std::abs(apq);
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                if (mod <= 0.5 * kEps * (std::abs(app) + std::abs(aqq)) + 1e-300) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }

                // Annihilation condition: |apq| t^2 - (app - aqq) t - |apq| = 0;
                // take the smaller root for a rotation angle below pi/4.
                const double tau = (app - aqq) / (2.0 * mod);
                double t;
                if (tau > 0.0) {
                    t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
                } else if (tau < 0.0) {
                    t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                } else {
                    t = 1.0;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sr = t * c;
                const Complex phase = apq / mod;
                const Complex s = sr * phase;

                // Columns: A <- A J with J = [[c, s], [-conj(s), c]] on (p, q).
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = a(i, p);
                    const Complex aiq = a(i, q);
                    a(i, p) = c * aip - std::conj(s) * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                // Rows: A <- J^H A.
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = a(p, j);
                    const Complex aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = std::conj(s) * apj + c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);

                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = v(i, p);
                    const Complex viq = v(i, q);
                    v(i, p) = c * vip - std::conj(s) * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
    if (!converged) {
        throw ConvergenceError("herm_eig: Jacobi sweeps did not converge",
                               std::vector<Complex>(values.begin(), values.end()));
    }
    sort_eigenpairs(values, v);
    canonicalize_phases(v);
    return {std::move(values), std::move(v)};
}

namespace {

struct Givens {
    double c = 1.0;
    Complex s = 0.0;
};

Givens make_givens(Complex a, Complex b) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    Givens g;
    if (mb <= 1e-300) {
        return g;
    }
    if (ma <= 1e-300) {
        g.c = 0.0;
        g.s = std::conj(b) / mb;
        return g;
    }
    const double rho = std::hypot(ma, mb);
    g.c = ma / rho;
    g.s = (a / ma) * std::conj(b) / rho;
    return g;
}

void hessenberg_in_place(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        std::vector<Complex> x(m);
        double xnorm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = a(k + 1 + i, k);
            xnorm += std::norm(x[i]);
        }
        xnorm = std::sqrt(xnorm);
        if (xnorm <= 1e-300) continue;

        const double m0 = std::abs(x[0]);
        const Complex phase = m0 > 0.0 ? x[0] / m0 : Complex(1.0);
        std::vector<Complex> v = x;
        v[0] += phase * xnorm;
        double vnorm2 = 0.0;
        for (const auto& z : v) vnorm2 += std::norm(z);
        if (vnorm2 <= 1e-300) continue;
        const double beta = 2.0 / vnorm2;

        // Left reflection on rows k+1..n-1.
        for (std::size_t j = k; j < n; ++j) {
            Complex w = 0.0;
            for (std::size_t i = 0; i < m; ++i) w += std::conj(v[i]) * a(k + 1 + i, j);
            w *= beta;
            for (std::size_t i = 0; i < m; ++i) a(k + 1 + i, j) -= v[i] * w;
        }
        // Right reflection on columns k+1..n-1.
        for (std::size_t i = 0; i < n; ++i) {
            Complex w = 0.0;
            for (std::size_t j = 0; j < m; ++j) w += a(i, k + 1 + j) * v[j];
            w *= beta;
            for (std::size_t j = 0; j < m; ++j) a(i, k + 1 + j) -= w * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

std::pair<Complex, Complex> eig2x2(Complex a, Complex b, Complex c, Complex d) {
    const Complex mid = 0.5 * (a + d);
    const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    Complex l1 = mid + disc;
    Complex l2 = mid - disc;
    if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2);
    const Complex det = a * d - b * c;
    if (std::abs(l1) > 1e-300) l2 = det / l1;
    return {l1, l2};
}

} // namespace

std::vector<Complex> general_eig(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("general_eig: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) throw DimensionError("general_eig: empty matrix");

    ComplexMatrix h = m;
    hessenberg_in_place(h);

    std::vector<Complex> eigs;
    eigs.reserve(n);
    const double norm_scale = std::max(h.frobenius_norm(), 1e-300);

    long hi = static_cast<long>(n) - 1;
    long total_iters = 0;
    const long max_total = 30 * static_cast<long>(n) + 30;
    long stuck_iters = 0;

    auto negligible = [&](long k) {
        const double bound =
            kEps * (std::abs(h(k - 1, k - 1)) + std::abs(h(k, k))) + 1e-300 * norm_scale;
        return std::abs(h(k, k - 1)) <= bound;
    };

    while (hi >= 0) {
        // Deflate converged trailing entries.
        long lo = 0;
        for (long k = hi; k >= 1; --k) {
            if (negligible(k)) {
                h(k, k - 1) = 0.0;
                lo = k;
                break;
            }
        }

        if (lo == hi) {
            eigs.push_back(h(hi, hi));
            --hi;
            stuck_iters = 0;
            continue;
        }
        if (lo == hi - 1) {
            auto [l1, l2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
            eigs.push_back(l1);
            eigs.push_back(l2);
            hi -= 2;
            stuck_iters = 0;
            continue;
        }

        if (total_iters >= max_total) {
            std::vector<Complex> partial = eigs;
            for (long k = lo; k <= hi; ++k) partial.push_back(h(k, k));
            throw ConvergenceError("general_eig: no convergence within 30 n iterations",
                                   std::move(partial));
        }

        Complex shift;
        if (stuck_iters > 0 && stuck_iters % 10 == 0) {
            shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            auto [l1, l2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
            shift = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
        }

        for (long k = lo; k <= hi; ++k) h(k, k) -= shift;

        std::vector<Givens> rots(static_cast<std::size_t>(hi - lo));
        for (long k = lo; k < hi; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rots[static_cast<std::size_t>(k - lo)] = g;
            for (long j = k; j <= hi; ++j) {
                const Complex t1 = h(k, j);
                const Complex t2 = h(k + 1, j);
                h(k, j) = g.c * t1 + g.s * t2;
                h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
            }
            h(k + 1, k) = 0.0;
        }
        for (long k = lo; k < hi; ++k) {
            const Givens g = rots[static_cast<std::size_t>(k - lo)];
            const long top = std::min(k + 2, hi);
            for (long i = lo; i <= top; ++i) {
                const Complex t1 = h(i, k);
                const Complex t2 = h(i, k + 1);
                h(i, k) = g.c * t1 + std::conj(g.s) * t2;
                h(i, k + 1) = -g.s * t1 + g.c * t2;
            }
        }

        for (long k = lo; k <= hi; ++k) h(k, k) += shift;
        ++total_iters;
        ++stuck_iters;
    }

    std::sort(eigs.begin(), eigs.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return eigs;
}

Svd svd(const ComplexMatrix& b) {
    if (b.is_empty()) throw DimensionError("svd: empty matrix");
    const std::size_t rows = b.rows();
    const std::size_t cols = b.cols();

    const ComplexMatrix gram = b.adjoint() * b; // cols x cols
    HermEig eig = herm_eig(gram);

    // Descending singular values.
    Svd out;
    out.sigma.resize(cols);
    out.v = ComplexMatrix(cols, cols);
    for (std::size_t k = 0; k < cols; ++k) {
        const std::size_t src = cols - 1 - k;
        out.sigma[k] = std::sqrt(std::max(eig.values[src], 0.0));
        for (std::size_t i = 0; i < cols; ++i) out.v(i, k) = eig.vectors(i, src);
    }
    out.u = ComplexMatrix(rows, cols);
    const double cutoff = (out.sigma.empty() ? 0.0 : out.sigma[0]) * 1e-300;
    for (std::size_t k = 0; k < cols; ++k) {
        if (out.sigma[k] <= cutoff || out.sigma[k] == 0.0) continue;
        for (std::size_t i = 0; i < rows; ++i) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < cols; ++j) acc += b(i, j) * out.v(j, k);
            out.u(i, k) = acc / out.sigma[k];
        }
    }
    return out;
}

double largest_singular_value(const ComplexMatrix& b) {
    const Svd s = svd(b);
    return s.sigma.empty() ? 0.0 : s.sigma[0];
}

double smallest_singular_value(const ComplexMatrix& b) {
    const Svd s = svd(b);
    return s.sigma.empty() ? 0.0 : s.sigma[std::min(b.rows(), b.cols()) - 1];
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& b, double rel_tol) {
    const Svd s = svd(b);
    const double sig_max = s.sigma.empty() ? 0.0 : s.sigma[0];
    ComplexMatrix out(b.cols(), b.rows());
    for (std::size_t k = 0; k < s.sigma.size(); ++k) {
        if (s.sigma[k] <= rel_tol * sig_max || s.sigma[k] == 0.0) continue;
        const double inv = 1.0 / s.sigma[k];
        for (std::size_t i = 0; i < b.cols(); ++i) {
            const Complex vi = s.v(i, k) * inv;
            if (vi == Complex(0.0)) continue;
            for (std::size_t j = 0; j < b.rows(); ++j) out(i, j) += vi * std::conj(s.u(j, k));
        }
    }
    return out;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("inverse: matrix must be square");
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    const double scale = std::max(m.max_abs(), 1e-300);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            const double mag = std::abs(a(i, col));
            if (mag > best) {
                best = mag;
                pivot = i;
            }
        }
        if (best <= 1e-14 * scale) {
            throw NotAInvertibleError("inverse: numerically singular pivot");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(col, j), a(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        const Complex d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const Complex f = a(i, col);
            if (f == Complex(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

PsdFactorization psd_pinv_sqrt(const ComplexMatrix& a, double rank_tol) {
    if (!a.is_square()) throw DimensionError("psd_pinv_sqrt: matrix must be square");
    HermEig eig = herm_eig(a);
    const std::size_t n = a.rows();
    const double lam_max = eig.values.empty() ? 0.0 : eig.values.back();
    const double norm = a.frobenius_norm();
    const double neg_tol = 1e-10 * std::max(norm, 1e-300);
    if (eig.values.front() < -neg_tol) {
        throw NotPositiveError("psd_pinv_sqrt: matrix has a negative eigenvalue");
    }

    const double cut = rank_tol * std::max(lam_max, 0.0);
    std::vector<double> lambda;
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < n; ++k) {
        if (eig.values[k] > cut && eig.values[k] > 0.0) {
            lambda.push_back(eig.values[k]);
            keep.push_back(k);
        }
    }

    PsdFactorization f;
    f.rank = keep.size();
    f.lambda = lambda;
    f.range_basis = ComplexMatrix(n, f.rank);
    for (std::size_t k = 0; k < f.rank; ++k)
        for (std::size_t i = 0; i < n; ++i) f.range_basis(i, k) = eig.vectors(i, keep[k]);

    f.dagger = ComplexMatrix(n, n);
    f.half = ComplexMatrix(n, n);
    f.half_dagger = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < f.rank; ++k) {
        const double l = lambda[k];
        const double sl = std::sqrt(l);
        for (std::size_t i = 0; i < n; ++i) {
            const Complex qik = f.range_basis(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                const Complex w = qik * std::conj(f.range_basis(j, k));
                f.dagger(i, j) += w / l;
                f.half(i, j) += w * sl;
                f.half_dagger(i, j) += w / sl;
            }
        }
    }
    return f;
}

} // namespace semihilbert
