#pragma once

#include <span>
#include <vector>

namespace lsqstab {

/// Probability measure c(1-x)^alpha (1+x)^beta dx on [-1, 1].
///
/// The derived constants are the ones the probability bounds are stated in:
/// `cbar` bounds the measure of a neighbourhood of either endpoint, `cbar1`
/// and `cbar2` the left and right one separately.
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;
  double c = 0.5;
  double gamma = 0.0;  ///< max(alpha, beta)
  double cbar = 0.5;   ///< c 2^min(alpha,beta) / (1 + gamma)
  double cbar1 = 0.5;  ///< c 2^alpha / (1 + beta)
  double cbar2 = 0.5;  ///< c 2^beta / (1 + alpha)
};

/// Builds the normalized measure. Throws DomainError when an exponent is
/// not greater than -1.
JacobiParams make_params(double alpha, double beta);

/// Density of the measure at x. Throws DomainError at a singular endpoint.
double weight(const JacobiParams& params, double x);

/// h_j: squared norm of the standard Jacobi polynomial P_j under the
/// probability measure. h_0 == 1 up to rounding.
double squared_norm(const JacobiParams& params, int j);

/// sup |P_j| on [-1, 1] = (gamma+1)_j / j!, attained at x = 1 when
/// alpha >= beta and at x = -1 otherwise. Requires gamma >= -1/2.
double endpoint_sup(const JacobiParams& params, int j);

/// Orthonormal polynomials L_0, ..., L_m under a Jacobi probability measure.
///
/// Index j here is the polynomial degree, so the basis functions usually
/// numbered 1..m+1 are stored as 0..m. L_j = P_j / sqrt(h_j), with P_j the
/// standard Jacobi polynomial (P_j(1) = (alpha+1)_j / j!) evaluated by the
/// three-term recurrence and scaled once per degree.
class OrthonormalBasis {
 public:
  OrthonormalBasis(const JacobiParams& params, int degree);

  const JacobiParams& params() const noexcept { return params_; }
  int degree() const noexcept { return degree_; }
  int size() const noexcept { return degree_ + 1; }

  /// h_j of the unnormalized polynomial of degree j.
  double sqnorm(int j) const { return sqnorm_.at(static_cast<std::size_t>(j)); }

  /// Writes L_0(x), ..., L_m(x) into `out` (size m+1). No domain check.
  void eval_into(double x, std::span<double> out) const;

  /// Sum of L_j(x)^2 over j = 0..m.
  double christoffel_sum(double x) const;

 private:
  struct Step {
    double a;  // coefficient of x P_{j-1}
    double b;  // constant coefficient of P_{j-1}
    double c;  // coefficient of P_{j-2}
  };

  JacobiParams params_;
  int degree_;
  std::vector<Step> recurrence_;  // entry j used for degree j >= 2
  std::vector<double> sqnorm_;
  std::vector<double> scale_;  // 1/sqrt(h_j), scale_[0] == 1
};

/// L_0(x), ..., L_m(x). Throws DomainError for |x| > 1.
std::vector<double> eval_basis(const OrthonormalBasis& basis, double x);

/// K(m+1) = sup_x sum_j L_j(x)^2 over the m+1 basis functions.
///
/// When min(alpha, beta) >= -1/2 every |L_j| peaks at the same endpoint and
/// only x = +-1 is evaluated. Otherwise the sum is maximized over a
/// Chebyshev-clustered grid of max(4096, 50m) points including both
/// endpoints; the result is then a grid maximum, not a certified supremum.
double christoffel_K(const OrthonormalBasis& basis);

/// Points -cos(pi i / (count-1)), i = 0..count-1: clustered at +-1 and
/// containing both endpoints exactly. count >= 2.
std::vector<double> chebyshev_grid(std::size_t count);

}  // namespace lsqstab
