#include "semihilbert/generators.hpp"

#include <cmath>

#include "semihilbert/eig.hpp"
#include "semihilbert/errors.hpp"

namespace semihilbert {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
    // splitmix64 over the combined word
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Complex random_gaussian(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    return Complex(g(rng), g(rng));
}

ComplexMatrix random_ginibre(std::size_t n, Rng& rng) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_gaussian(rng);
    return m;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    // Gram-Schmidt on a Ginibre sample with positive diagonal phases.
    ComplexMatrix g = random_ginibre(n, rng);
    ComplexMatrix q(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        ComplexVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = g(i, k);
        for (std::size_t p = 0; p < k; ++p) {
            Complex coef = 0.0;
            for (std::size_t i = 0; i < n; ++i) coef += v[i] * std::conj(q(i, p));
            for (std::size_t i = 0; i < n; ++i) v[i] -= coef * q(i, p);
        }
        double nrm = vec_norm(v);
        if (nrm < 1e-12) {
            // Statistically impossible; fall back to a basis vector.
            for (auto& z : v) z = 0.0;
            v[k] = 1.0;
            nrm = 1.0;
        }
        for (std::size_t i = 0; i < n; ++i) q(i, k) = v[i] / nrm;
    }
    return q;
}

ComplexMatrix random_psd(std::size_t n, std::size_t rank, Rng& rng) {
    if (rank == 0 || rank > n) throw DimensionError("random_psd: invalid rank");
    const ComplexMatrix u = random_unitary(n, rng);
    std::uniform_real_distribution<double> eig(0.25, 2.0);
    ComplexMatrix a(n, n);
    for (std::size_t k = 0; k < rank; ++k) {
        const double lam = eig(rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) += lam * u(i, k) * std::conj(u(j, k));
    }
    // Force exact Hermiticity against roundoff.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
        a(i, i) = Complex(a(i, i).real(), 0.0);
    }
    return a;
}

ComplexMatrix random_normal_matrix(std::size_t r, Rng& rng, double box) {
    const ComplexMatrix u = random_unitary(r, rng);
    std::uniform_real_distribution<double> coord(-box, box);
    ComplexMatrix m(r, r);
    for (std::size_t k = 0; k < r; ++k) {
        const Complex lam(coord(rng), coord(rng));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) m(i, j) += lam * u(i, k) * std::conj(u(j, k));
    }
    return m;
}

SemiHilbertOperator random_b_a_member(const SpacePtr& space, const ComplexMatrix& compressed,
                                      Rng& rng) {
    const std::size_t n = space->dim();
    const SemiHilbertOperator lifted = lift(space, compressed);
    if (space->rank() == n) return lifted;
    const ComplexMatrix complement = ComplexMatrix::identity(n) - space->projection();
    const ComplexMatrix kernel_part = complement * random_ginibre(n, rng);
    return SemiHilbertOperator(space, lifted.matrix() + kernel_part);
}

SemiHilbertOperator random_a_normal(const SpacePtr& space, Rng& rng) {
    return random_b_a_member(space, random_normal_matrix(space->rank(), rng), rng);
}

SemiHilbertOperator random_a_nonnormal(const SpacePtr& space, Rng& rng) {
    const std::size_t r = space->rank();
    ComplexMatrix m = random_normal_matrix(r, rng);
    if (r == 1) {
        // Scalars are always normal; no nonnormal instance exists.
        return random_b_a_member(space, m, rng);
    }
    // Add a nilpotent bump well above the normality tolerance.
    const double bump = 0.5 * (1.0 + m.frobenius_norm());
    m(0, r - 1) += bump;
    return random_b_a_member(space, m, rng);
}

SpacePtr random_space(std::size_t n, std::size_t rank, Rng& rng) {
    return make_space(random_psd(n, rank, rng));
}

} // namespace semihilbert
