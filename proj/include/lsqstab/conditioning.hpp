#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lsqstab/dense_numerics.hpp"
#include "lsqstab/jacobi_basis.hpp"
#include "lsqstab/sampler.hpp"

namespace lsqstab {

/// Below this the smallest Gram eigenvalue is treated as numerically zero
/// and replaced by the threshold itself, capping kappa at 10^6.5.
inline constexpr double kLambdaFloor = 1e-13;

/// Empirical Gram matrix G_jk = (1/n) sum_i L_j(x_i) L_k(x_i).
class GramMatrix {
 public:
  GramMatrix(SymmetricMatrix entries, std::size_t sample_count);

  int m() const noexcept { return static_cast<int>(entries_.order()) - 1; }
  std::size_t n() const noexcept { return n_; }
  const SymmetricMatrix& entries() const noexcept { return entries_; }
  double operator()(std::size_t j, std::size_t k) const { return entries_(j, k); }

 private:
  SymmetricMatrix entries_;
  std::size_t n_;
};

/// n x (m+1) matrix of L_k(x_i).
Matrix basis_values(const OrthonormalBasis& basis, const SampleSet& samples);

/// Accumulates in ascending sample order with Neumaier compensation, so the
/// result does not depend on threading. Throws ContractError on empty input.
GramMatrix gram(const OrthonormalBasis& basis, const SampleSet& samples);

struct MinEigen {
  double lambda_min = 1.0;
  bool clamped = false;
};

MinEigen min_eigenvalue(const GramMatrix& g);

struct Conditioning {
  double kappa = 1.0;  ///< lambda_min(G)^{-1/2}, after clamping
  double lambda_min = 1.0;
  bool clamped = false;
};

/// Eigenvalue route; loses accuracy like eps * kappa^2.
Conditioning condition_from_gram(const GramMatrix& g);

/// kappa_2 of the discrete least-squares projection onto P_m. lambda_min(G)
/// is taken as the squared smallest singular value of the n x (m+1) matrix
/// L_k(x_i)/sqrt(n), which keeps about eps * kappa relative accuracy.
Conditioning condition_number(const OrthonormalBasis& basis, const SampleSet& samples);

/// Spectral norm |||G - I||| = max_mu |mu - 1|.
double spectral_distance_to_identity(const GramMatrix& g);

/// Coefficients u of the least-squares fit sum_j u_j L_j, from G u = b with
/// b_k = (1/n) sum_i f(x_i) L_k(x_i). Solved through the eigendecomposition
/// of G with eigenvalues floored at kLambdaFloor.
/// Throws RankError with fewer than m+1 distinct points.
std::vector<double> least_squares_fit(const OrthonormalBasis& basis,
                                      const SampleSet& samples,
                                      std::span<const double> values);

/// sum_j coeffs[j] L_j(x).
double evaluate_expansion(const OrthonormalBasis& basis, std::span<const double> coeffs,
                          double x);

}  // namespace lsqstab
