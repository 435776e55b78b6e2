#include "semihilbert/cso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "semihilbert/eig.hpp"
#include "semihilbert/errors.hpp"

namespace semihilbert {

namespace {

double cso_residual(const ComplexMatrix& m, const ComplexMatrix& j) {
    const double scale = std::max(1.0, m.frobenius_norm());
    return (j * m.transpose() * j.adjoint() - m).frobenius_norm() / scale;
}

// Newton iteration for the unitary polar factor; symmetry is preserved
// and re-imposed each step.
std::optional<ComplexMatrix> project_symmetric_unitary(ComplexMatrix j) {
    const std::size_t r = j.rows();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = i + 1; k < r; ++k) {
            const Complex avg = 0.5 * (j(i, k) + j(k, i));
            j(i, k) = avg;
            j(k, i) = avg;
        }
    for (int it = 0; it < 60; ++it) {
        ComplexMatrix inv_adj;
        try {
            inv_adj = inverse(j.adjoint());
        } catch (const NotAInvertibleError&) {
            return std::nullopt;
        }
        ComplexMatrix next = j;
        next += inv_adj;
        next *= Complex(0.5);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = i + 1; k < r; ++k) {
                const Complex avg = 0.5 * (next(i, k) + next(k, i));
                next(i, k) = avg;
                next(k, i) = avg;
            }
        const double step = (next - j).frobenius_norm();
        j = std::move(next);
        if (step <= 1e-15 * (1.0 + j.frobenius_norm())) break;
    }
    const ComplexMatrix gram = j.adjoint() * j;
    if ((gram - ComplexMatrix::identity(r)).frobenius_norm() > 1e-10 * std::sqrt(double(r))) {
        return std::nullopt;
    }
    return j;
}

// Joint unitary diagonalization of a (near-)normal matrix through its
// commuting Hermitian parts. Returns nothing if m is not normal.
std::optional<ComplexMatrix> normal_diagonalizer(const ComplexMatrix& m, double tol) {
    const std::size_t r = m.rows();
    const double scale = std::max(1.0, m.frobenius_norm());
    if ((m * m.adjoint() - m.adjoint() * m).frobenius_norm() > tol * scale * scale) {
        return std::nullopt;
    }
    ComplexMatrix re(r, r), im(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
            re(i, k) = 0.5 * (m(i, k) + std::conj(m(k, i)));
            im(i, k) = Complex(0.0, -0.5) * (m(i, k) - std::conj(m(k, i)));
        }
    const HermEig e1 = herm_eig(re);
    ComplexMatrix u = e1.vectors;

    const double cluster_tol = 1e-8 * scale;
    std::size_t lo = 0;
    while (lo < r) {
        std::size_t hi = lo + 1;
        while (hi < r && e1.values[hi] - e1.values[hi - 1] <= cluster_tol) ++hi;
        if (hi - lo > 1) {
            const ComplexMatrix block = u.block(0, lo, r, hi - lo);
            const ComplexMatrix compressed = block.adjoint() * (im * block);
            const HermEig e2 = herm_eig(compressed);
            const ComplexMatrix rotated = block * e2.vectors;
            u.set_block(0, lo, rotated);
        }
        lo = hi;
    }
    const ComplexMatrix d = u.adjoint() * (m * u);
    double off = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k)
            if (i != k) off += std::norm(d(i, k));
    if (std::sqrt(off) > 1e-7 * scale) return std::nullopt;
    return u;
}

struct EigenSystem {
    std::vector<Complex> values;
    ComplexMatrix right; // unit right eigenvectors as columns
    ComplexMatrix left;  // unit eigenvectors of M^* for conj(values)
    bool distinct = false;
};

EigenSystem eigen_system(const ComplexMatrix& m) {
    const std::size_t r = m.rows();
    EigenSystem sys;
    sys.values = general_eig(m);
    sys.right = ComplexMatrix(r, r);
    sys.left = ComplexMatrix(r, r);

    const double scale = std::max(1.0, m.max_abs());
    sys.distinct = true;
    for (std::size_t i = 0; i < r && sys.distinct; ++i)
        for (std::size_t k = i + 1; k < r; ++k)
            if (std::abs(sys.values[i] - sys.values[k]) <= 1e-7 * scale) {
                sys.distinct = false;
                break;
            }
    if (!sys.distinct) return sys;

    for (std::size_t k = 0; k < r; ++k) {
        ComplexMatrix shifted = m;
        for (std::size_t i = 0; i < r; ++i) shifted(i, i) -= sys.values[k];
        const Svd s = svd(shifted);
        for (std::size_t i = 0; i < r; ++i) {
            sys.right(i, k) = s.v(i, r - 1); // near-kernel of M - lambda
            sys.left(i, k) = s.u(i, r - 1);  // near-kernel of (M - lambda)^*
        }
    }
    return sys;
}

// Witness construction for the distinct-eigenvalue case: the symmetric
// candidates have the form U diag(c) U^T; moduli of c come from the
// eigenvector Gram matrix, phases from a consistency cocycle on its
// significant entries.
std::optional<ComplexMatrix> cocycle_witness(const EigenSystem& sys) {
    const std::size_t r = sys.right.rows();
    const ComplexMatrix g = sys.right.adjoint() * sys.right;
    ComplexMatrix ginv;
    try {
        ginv = inverse(g);
    } catch (const NotAInvertibleError&) {
        return std::nullopt;
    }

    std::vector<double> mod(r);
    for (std::size_t i = 0; i < r; ++i) {
        const double num = std::real(std::conj(ginv(i, i)));
        const double den = std::real(g(i, i));
        if (num <= 0.0 || den <= 0.0) return std::nullopt;
        mod[i] = std::sqrt(num / den);
    }

    std::vector<double> phase(r, 0.0);
    std::vector<bool> assigned(r, false);
    assigned[0] = true;
    for (std::size_t round = 1; round < r; ++round) {
        bool progress = false;
        for (std::size_t i = 0; i < r; ++i) {
            if (!assigned[i]) continue;
            for (std::size_t k = 0; k < r; ++k) {
                if (assigned[k] || i == k) continue;
                if (std::abs(g(i, k)) <= 1e-8) continue;
                phase[k] = phase[i] + std::arg(std::conj(ginv(i, k))) - std::arg(g(i, k));
                assigned[k] = true;
                progress = true;
            }
        }
        if (!progress) break;
    }
    for (std::size_t i = 0; i < r; ++i)
        if (!assigned[i]) phase[i] = 0.0; // disconnected block, free phase

    std::vector<Complex> c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = std::polar(mod[i], phase[i]);

    ComplexMatrix j(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
            Complex acc = 0.0;
            for (std::size_t l = 0; l < r; ++l) acc += sys.right(i, l) * c[l] * sys.right(k, l);
            j(i, k) = acc;
        }
    return project_symmetric_unitary(j);
}

// Necessary condition for a conjugation: any word trace must equal the
// trace of the reversed word, because transposition reverses products.
bool trace_word_asymmetry(const ComplexMatrix& m_in) {
    const std::size_t r = m_in.rows();
    const double norm = m_in.frobenius_norm();
    if (norm <= 0.0) return false;
    ComplexMatrix m = m_in;
    m *= Complex(1.0 / norm);
    const ComplexMatrix ms = m.adjoint();

    const double margin = 1e-8 * static_cast<double>(r);
    for (int len = 3; len <= 8; ++len) {
        for (unsigned mask = 0; mask < (1u << len); ++mask) {
            ComplexMatrix fwd = ComplexMatrix::identity(r);
            ComplexMatrix rev = ComplexMatrix::identity(r);
            for (int b = 0; b < len; ++b) {
                fwd = fwd * (((mask >> b) & 1u) ? ms : m);
                rev = rev * (((mask >> (len - 1 - b)) & 1u) ? ms : m);
            }
            if (std::abs(fwd.trace() - rev.trace()) > margin) return true;
        }
    }
    return false;
}

std::optional<ComplexMatrix> search_witness(const ComplexMatrix& m, double tol,
                                            const std::vector<ComplexMatrix>& seeds) {
    const std::size_t r = m.rows();

    // Orthonormal basis of symmetric matrices in vec coordinates.
    const std::size_t p = r * (r + 1) / 2;
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    idx.reserve(p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = i; k < r; ++k) idx.emplace_back(i, k);

    auto to_matrix = [&](const ComplexVector& x) {
        ComplexMatrix j(r, r);
        const double s = 1.0 / std::sqrt(2.0);
        for (std::size_t t = 0; t < p; ++t) {
            const auto [i, k] = idx[t];
            if (i == k) {
                j(i, i) = x[t];
            } else {
                j(i, k) = x[t] * s;
                j(k, i) = x[t] * s;
            }
        }
        return j;
    };
    auto to_coords = [&](const ComplexMatrix& j) {
        ComplexVector x(p);
        const double s = std::sqrt(2.0);
        for (std::size_t t = 0; t < p; ++t) {
            const auto [i, k] = idx[t];
            x[t] = (i == k) ? j(i, i) : Complex(0.5) * s * (j(i, k) + j(k, i));
        }
        return x;
    };

    // Null space of J -> J M^T - M J restricted to symmetric J.
    ComplexMatrix l(r * r, p);
    for (std::size_t t = 0; t < p; ++t) {
        ComplexVector unit(p, Complex(0.0));
        unit[t] = 1.0;
        const ComplexMatrix s_mat = to_matrix(unit);
        const ComplexMatrix img = s_mat * m.transpose() - m * s_mat;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < r; ++k) l(i * r + k, t) = img(i, k);
    }
    const HermEig null_eig = herm_eig(l.adjoint() * l);
    const double null_tol = 1e-18 * std::max(1.0, l.frobenius_norm() * l.frobenius_norm());
    std::vector<std::size_t> null_cols;
    for (std::size_t k = 0; k < p; ++k)
        if (null_eig.values[k] <= std::max(null_tol, 1e-14)) null_cols.push_back(k);
    if (null_cols.empty()) return std::nullopt;

    auto project_null = [&](const ComplexVector& x) {
        ComplexVector out(p, Complex(0.0));
        for (const std::size_t col : null_cols) {
            Complex coef = 0.0;
            for (std::size_t t = 0; t < p; ++t) coef += x[t] * std::conj(null_eig.vectors(t, col));
            for (std::size_t t = 0; t < p; ++t) out[t] += coef * null_eig.vectors(t, col);
        }
        return out;
    };

    std::mt19937_64 rng(0x5eedC50u);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<ComplexMatrix> starts = seeds;
    for (int extra = 0; extra < 6; ++extra) {
        ComplexVector x(p);
        for (auto& z : x) z = Complex(gauss(rng), gauss(rng));
        starts.push_back(to_matrix(x));
    }

    for (const auto& seed : starts) {
        if (seed.rows() != r) continue;
        ComplexVector x = project_null(to_coords(seed));
        for (int it = 0; it < 80; ++it) {
            const double xn = vec_norm(x);
            if (xn <= 1e-12) break;
            ComplexMatrix j = to_matrix(x);
            j *= Complex(std::sqrt(double(r)) / std::max(j.frobenius_norm(), 1e-300));
            const auto unit = project_symmetric_unitary(j);
            if (!unit) break;
            if (cso_residual(m, *unit) <= tol) return *unit;
            x = project_null(to_coords(*unit));
        }
    }
    return std::nullopt;
}

} // namespace

Conjugation make_conjugation(ComplexMatrix j, double tol) {
    if (!j.is_square() || j.rows() == 0) {
        throw DimensionError("make_conjugation: matrix must be square and non-empty");
    }
    const std::size_t r = j.rows();
    const double unitary = (j.adjoint() * j - ComplexMatrix::identity(r)).frobenius_norm();
    const double symmetric = (j - j.transpose()).frobenius_norm();
    const double scale = std::sqrt(static_cast<double>(r));
    if (unitary > tol * scale || symmetric > tol * scale) {
        throw Error("make_conjugation: matrix is not an involutive antilinear isometry");
    }
    return Conjugation{std::move(j)};
}

bool is_cso_with(const ComplexMatrix& m, const Conjugation& c, double tol) {
    if (c.j.rows() != m.rows()) throw DimensionError("is_cso_with: size mismatch");
    return cso_residual(m, c.j) <= tol;
}

bool is_cso_with(const SemiHilbertOperator& op, const Conjugation& c, double tol) {
    return is_cso_with(op.compressed(), c, tol);
}

ComplexMatrix c_real_basis(const Conjugation& c, double tol) {
    const std::size_t r = c.j.rows();
    ComplexMatrix basis(r, r);
    std::size_t built = 0;

    auto try_seed = [&](const ComplexVector& seed) -> bool {
        // Average with the conjugation to land in its fixed subspace.
        ComplexVector u(r);
        ComplexVector cj = c.j.apply([&] {
            ComplexVector conj_seed(r);
            for (std::size_t i = 0; i < r; ++i) conj_seed[i] = std::conj(seed[i]);
            return conj_seed;
        }());
        for (std::size_t i = 0; i < r; ++i) u[i] = seed[i] + cj[i];
        for (std::size_t k = 0; k < built; ++k) {
            ComplexVector bk(r);
            for (std::size_t i = 0; i < r; ++i) bk[i] = basis(i, k);
            const Complex coef = vec_dot(u, bk);
            for (std::size_t i = 0; i < r; ++i) u[i] -= coef * bk[i];
        }
        const double un = vec_norm(u);
        if (un <= 1e-6) return false;
        for (std::size_t i = 0; i < r; ++i) basis(i, built) = u[i] / un;
        ++built;
        return true;
    };

    for (std::size_t k = 0; k < r && built < r; ++k) {
        ComplexVector seed(r, Complex(0.0));
        seed[k] = 1.0;
        if (try_seed(seed)) continue;
        seed[k] = Complex(0.0, 1.0);
        try_seed(seed);
    }
    if (built != r) throw Error("c_real_basis: failed to complete a fixed-point basis");

    // Sanity: every column must be fixed by the conjugation.
    for (std::size_t k = 0; k < r; ++k) {
        ComplexVector bk(r), cbk(r);
        for (std::size_t i = 0; i < r; ++i) bk[i] = basis(i, k);
        for (std::size_t i = 0; i < r; ++i) cbk[i] = std::conj(bk[i]);
        cbk = c.j.apply(cbk);
        double diff = 0.0;
        for (std::size_t i = 0; i < r; ++i) diff += std::norm(cbk[i] - bk[i]);
        if (std::sqrt(diff) > 10.0 * tol * std::sqrt(double(r))) {
            throw Error("c_real_basis: basis vector escaped the fixed subspace");
        }
    }
    return basis;
}

CsoResult matrix_induces_cso(const ComplexMatrix& m, double tol) {
    const std::size_t r = m.rows();
    CsoResult result;

    auto accept = [&](ComplexMatrix j, std::string reason) {
        result.verdict = CsoVerdict::yes;
        result.witness = Conjugation{std::move(j)};
        result.reason = std::move(reason);
        return result;
    };

    if (r == 1) return accept(ComplexMatrix::identity(1), "scalar compression");

    if (cso_residual(m, ComplexMatrix::identity(r)) <= tol) {
        return accept(ComplexMatrix::identity(r), "matrix is already symmetric");
    }

    // Normal compressions are always C-symmetric: diagonalize with a
    // unitary U and take J = U U^T.
    if (const auto u = normal_diagonalizer(m, 1e-10)) {
        const ComplexMatrix j = (*u) * u->transpose();
        if (const auto unit = project_symmetric_unitary(j)) {
            if (cso_residual(m, *unit) <= tol) return accept(*unit, "normal compression");
        }
    }

    const EigenSystem sys = eigen_system(m);
    if (sys.distinct) {
        // Gram-moduli criterion: a conjugation carries right
        // eigenvectors to left eigenvectors antiunitarily, forcing
        // |<u_i, u_j>| = |<v_i, v_j>| for all pairs.
        double worst = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
            ComplexVector ui(r), vi(r);
            for (std::size_t t = 0; t < r; ++t) {
                ui[t] = sys.right(t, i);
                vi[t] = sys.left(t, i);
            }
            for (std::size_t k = i + 1; k < r; ++k) {
                ComplexVector uk(r), vk(r);
                for (std::size_t t = 0; t < r; ++t) {
                    uk[t] = sys.right(t, k);
                    vk[t] = sys.left(t, k);
                }
                worst = std::max(worst,
                                 std::abs(std::abs(vec_dot(ui, uk)) - std::abs(vec_dot(vi, vk))));
            }
        }
        if (worst > 1e-6) {
            result.verdict = CsoVerdict::no;
            result.reason = "eigenvector Gram moduli differ between right and left systems";
            return result;
        }
        if (const auto j = cocycle_witness(sys)) {
            if (cso_residual(m, *j) <= tol) return accept(*j, "distinct-eigenvalue construction");
        }
    }

    if (trace_word_asymmetry(m)) {
        result.verdict = CsoVerdict::no;
        result.reason = "word trace differs from its reversal";
        return result;
    }

    std::vector<ComplexMatrix> seeds;
    seeds.push_back(ComplexMatrix::identity(r));
    ComplexMatrix flip(r, r);
    for (std::size_t i = 0; i < r; ++i) flip(i, r - 1 - i) = 1.0;
    seeds.push_back(flip);
    if (const auto j = search_witness(m, tol, seeds)) {
        return accept(*j, "witness found by bounded search");
    }

    result.verdict = CsoVerdict::unknown;
    result.reason = "no witness found and no impossibility certificate";
    return result;
}

CsoResult induces_cso(const SemiHilbertOperator& op, double tol) {
    // The decision concerns the restriction of T to R(A); its
    // compression exists for every operator and matches the induced
    // operator whenever T is A-bounded.
    CsoResult result = matrix_induces_cso(op.range_compression(), tol);
    if (result.verdict == CsoVerdict::yes && result.witness) {
        const ComplexMatrix basis = c_real_basis(*result.witness, tol);
        const std::size_t r = basis.rows();
        SymmetricBasisCertificate cert;
        cert.family.reserve(r);
        for (std::size_t k = 0; k < r; ++k) {
            ComplexVector coords(r);
            for (std::size_t i = 0; i < r; ++i) coords[i] = basis(i, k);
            cert.family.push_back(op.space().unembed(coords));
        }
        for (std::size_t n = 0; n < r; ++n) {
            const ComplexVector tn = op.matrix().apply(cert.family[n]);
            for (std::size_t mm = 0; mm < r; ++mm) {
                const Complex snm = op.space().a_inner(tn, cert.family[mm]);
                const ComplexVector tm = op.matrix().apply(cert.family[mm]);
                const Complex smn = op.space().a_inner(tm, cert.family[n]);
                cert.symmetry_residual = std::max(cert.symmetry_residual, std::abs(snm - smn));
                const Complex gram = op.space().a_inner(cert.family[n], cert.family[mm]);
                const double target = (n == mm) ? 1.0 : 0.0;
                cert.orthonormal_residual =
                    std::max(cert.orthonormal_residual, std::abs(gram - target));
            }
        }
        result.certificate = std::move(cert);
    }
    return result;
}

} // namespace semihilbert
