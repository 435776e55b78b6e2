#pragma once

#include <cstdint>
#include <random>

#include "semihilbert/operator.hpp"

namespace semihilbert {

/// Counter-mode seed derivation so that parallel instances stay
/// reproducible from (suite seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter);

using Rng = std::mt19937_64;

Complex random_gaussian(Rng& rng);
ComplexMatrix random_ginibre(std::size_t n, Rng& rng);
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

/// Hermitian PSD with the prescribed rank; positive eigenvalues are
/// drawn from [0.25, 2] to keep compressions well conditioned while the
/// kernel stays genuinely degenerate.
ComplexMatrix random_psd(std::size_t n, std::size_t rank, Rng& rng);

/// Normal r x r matrix with eigenvalues in the centered box of the
/// given half width.
ComplexMatrix random_normal_matrix(std::size_t r, Rng& rng, double box = 2.0);

/// Generic A-adjointable operator: a lifted matrix plus an arbitrary
/// part mapping into the kernel of the weight. Exercises the degenerate
/// kernel paths constantly.
SemiHilbertOperator random_b_a_member(const SpacePtr& space, const ComplexMatrix& compressed,
                                      Rng& rng);

/// Weighted-normal operator built by lifting a random normal matrix.
SemiHilbertOperator random_a_normal(const SpacePtr& space, Rng& rng);

/// Weighted-nonnormal operator with a guaranteed normality margin.
SemiHilbertOperator random_a_nonnormal(const SpacePtr& space, Rng& rng);

SpacePtr random_space(std::size_t n, std::size_t rank, Rng& rng);

} // namespace semihilbert
