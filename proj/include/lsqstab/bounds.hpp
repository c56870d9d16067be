#pragma once

#include <cstddef>
#include <vector>

#include "lsqstab/jacobi_basis.hpp"
#include "lsqstab/sampler.hpp"

namespace lsqstab {

/// lambda = (m^{2(1+gamma)} / (C n))^{1/(1+2 gamma)}. Requires gamma > -1/2.
double theoretical_exponent(int m, std::size_t n, const JacobiParams& params,
                            double big_c);

/// iota(r) = (1 - ln 2) / (2 + 2r), the constant of the sufficient
/// sampling condition K(m+1) <= iota n / ln n (natural logarithm).
double iota(double r);

/// Smallest integer n >= m+2 with K(m+1) <= iota(r) n / ln n, where m is the
/// basis degree. Found by doubling then bisection.
std::size_t cohen_threshold(const OrthonormalBasis& basis, double r);

/// 1 - 2 n^{-r}: probability that |||G - I||| <= 1/2 once n meets the
/// threshold.
double cohen_target_probability(std::size_t n, double r);

/// 1 - 2 e^2 cbar1 / C: lower bound on the probability of the order-statistic
/// event. Throws DomainError unless C > 2 e^2 cbar1.
double orderstat_probability_bound(const JacobiParams& params, double big_c);

/// 2 e^2 cbar + 1, the smallest round choice above the hypothesis C > 2 e^2 cbar.
double default_big_c(const JacobiParams& params);

/// max{(2 pi^2)^{(1+b)/(1+2b)}, 9 pi^2 / 8}: the exponent beyond which the
/// witness construction applies, for right exponent b (after reflection).
double witness_threshold(double beta);

/// The witness polynomial
///   p(x) = 1/2 T_m(x) prod_{j=0..K} (x - x_(j)) / (x - y_j),
/// with y_j = -cos(pi (2j+1) / (2m)) the Chebyshev zeros and x_(0) = -1.
/// Since T_m(x) = 2^{m-1} prod_j (x - y_j), p is stored in the pole-free form
///   2^{m-2} prod_{j=K+1..m-1} (x - y_j) prod_{j=0..K} (x - x_(j))
/// and evaluated in log-magnitude and sign arithmetic.
class WitnessPolynomial {
 public:
  /// `order_stats` are x_(1), ..., x_(K) (sorted ascending); 1 <= K <= m-1.
  WitnessPolynomial(int m, std::vector<double> order_stats);

  struct LogValue {
    double log_abs;  ///< -inf at a root
    int sign;        ///< -1, 0 or +1
  };

  LogValue log_eval(double x) const;
  double operator()(double x) const;

  int degree() const noexcept { return m_; }
  const std::vector<double>& roots() const noexcept { return roots_; }

 private:
  int m_;
  std::vector<double> roots_;  // x_(0..K) followed by y_{K+1..m-1}
};

enum class WitnessCase { I, II };

struct WitnessResult {
  WitnessCase witness_case = WitnessCase::II;
  int K = 0;
  double lambda = 0.0;
  /// Certified lower bound on B(n, m) = sup_p ||p||_inf / max_i |p(x_i)|.
  double bound = 1.0;
  /// Order-statistic event at C, evaluated after reflection when alpha > beta.
  bool event_holds = false;
  /// Where the witness maximum was found, in original coordinates
  /// (NaN in case II).
  double sup_location = 0.0;
  /// max_i |p(x_i)| over the sample (NaN in case II).
  double max_on_samples = 0.0;
};

/// Lower bound on B(n, m) from the witness polynomial built on the smallest
/// order statistics. When alpha > beta the points are reflected and the
/// exponents swapped first. Case II (lambda <= witness_threshold, or m < 2)
/// returns the trivial bound 1. The bound holds for the given sample whether
/// or not the order-statistic event holds.
///
/// Throws ContractError unless the input is sorted and 1 <= m <= n-1,
/// DomainError unless gamma > -1/2 and C > 0.
WitnessResult witness_lower_bound(const SampleSet& sorted, int m,
                                  const JacobiParams& params, double big_c);

}  // namespace lsqstab
