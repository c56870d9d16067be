#pragma once

#include <cstddef>
#include <cstdint>

#include "lsqstab/conditioning.hpp"
#include "lsqstab/jacobi_basis.hpp"
#include "lsqstab/sampler.hpp"

namespace lsqstab {

/// Largest degree b_exact accepts.
inline constexpr int kOracleMaxDegree = 20;

/// Value of max p(x*) over p in P_m with |p(x_i)| <= 1 at every sample,
/// i.e. the Lebesgue-type function of the sample set at x*. Solved as an LP
/// in Chebyshev coefficients. Preconditions as for b_exact.
double b_exact_at(const SampleSet& samples, int m, double x_star);

/// B(n, m) = sup_{p in P_m} ||p||_inf / max_i |p(x_i)|.
///
/// The Lebesgue-type function is evaluated on a Chebyshev grid of
/// `grid_size` points (both endpoints included); the three largest local
/// grid maxima are then refined by golden-section search inside their
/// neighbouring grid cells.
///
/// Throws RankError with fewer than m+1 distinct points, ContractError when
/// m > kOracleMaxDegree or grid_size < max(8m, 2).
double b_exact(const SampleSet& samples, int m, std::size_t grid_size);

/// max over random unit coefficient vectors w and the lambda_min eigenvector
/// of sqrt(w^T w / w^T G w). The eigenvector attains kappa_2, so the result
/// equals condition_from_gram(G).kappa up to rounding.
double d_random_check(const OrthonormalBasis& basis, const GramMatrix& g,
                      std::size_t trials, std::uint64_t seed);

}  // namespace lsqstab
