#include "lsqstab/jacobi_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "lsqstab/errors.hpp"

namespace lsqstab {

namespace {

double log_gamma(double x) { return boost::math::lgamma(x); }

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

void require_exponent(double value, const char* name) {
  if (!(value > -1.0)) {
    throw DomainError(std::string(name) + " must exceed -1");
  }
}

}  // namespace

JacobiParams make_params(double alpha, double beta) {
  require_exponent(alpha, "alpha");
  require_exponent(beta, "beta");

  JacobiParams p;
  p.alpha = alpha;
  p.beta = beta;
  // c^{-1} = 2^{alpha+beta+1} B(alpha+1, beta+1)
  p.c = std::exp(-(alpha + beta + 1.0) * std::numbers::ln2 -
                 log_beta(alpha + 1.0, beta + 1.0));
  p.gamma = std::max(alpha, beta);
  p.cbar = p.c * std::exp2(std::min(alpha, beta)) / (1.0 + p.gamma);
  p.cbar1 = p.c * std::exp2(alpha) / (1.0 + beta);
  p.cbar2 = p.c * std::exp2(beta) / (1.0 + alpha);
  return p;
}

double weight(const JacobiParams& params, double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("x outside [-1, 1]");
  }
  if ((params.alpha < 0.0 && x == 1.0) || (params.beta < 0.0 && x == -1.0)) {
    throw DomainError("singular endpoint");
  }
  return params.c * std::pow(1.0 - x, params.alpha) *
         std::pow(1.0 + x, params.beta);
}

double squared_norm(const JacobiParams& params, int j) {
  if (j < 0) {
    throw DomainError("degree must be non-negative");
  }
  const double a = params.alpha;
  const double b = params.beta;
  if (j == 0) {
    // c 2^{a+b+1} B(a+1, b+1); the Gamma quotient below is 0*inf at a+b = -1.
    return std::exp(std::log(params.c) + (a + b + 1.0) * std::numbers::ln2 +
                    log_beta(a + 1.0, b + 1.0));
  }
  const double jd = j;
  const double log_h = std::log(params.c) + (a + b + 1.0) * std::numbers::ln2 +
                       log_gamma(jd + a + 1.0) + log_gamma(jd + b + 1.0) -
                       std::log(2.0 * jd + a + b + 1.0) - log_gamma(jd + 1.0) -
                       log_gamma(jd + a + b + 1.0);
  return std::exp(log_h);
}

double endpoint_sup(const JacobiParams& params, int j) {
  if (j < 0) {
    throw DomainError("degree must be non-negative");
  }
  if (params.gamma < -0.5) {
    throw DomainError(
        "interior-maximum regime (max(alpha, beta) < -1/2): use a grid search");
  }
  if (j == 0) {
    return 1.0;
  }
  const double g = params.gamma;
  const double jd = j;
  return std::exp(log_gamma(jd + g + 1.0) - log_gamma(g + 1.0) -
                  log_gamma(jd + 1.0));
}

OrthonormalBasis::OrthonormalBasis(const JacobiParams& params, int degree)
    : params_(params), degree_(degree) {
  if (degree < 0) {
    throw DomainError("degree must be non-negative");
  }
  const auto count = static_cast<std::size_t>(degree) + 1;
  const double a = params.alpha;
  const double b = params.beta;

  recurrence_.assign(count, Step{0.0, 0.0, 0.0});
  for (std::size_t j = 2; j < count; ++j) {
    const double n = static_cast<double>(j);
    const double s = 2.0 * n + a + b;
    const double denom = 2.0 * n * (n + a + b) * (s - 2.0);
    recurrence_[j].a = (s - 1.0) * s * (s - 2.0) / denom;
    recurrence_[j].b = (s - 1.0) * (a * a - b * b) / denom;
    recurrence_[j].c = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s / denom;
  }

  sqnorm_.resize(count);
  scale_.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    sqnorm_[j] = squared_norm(params, static_cast<int>(j));
    scale_[j] = j == 0 ? 1.0 : 1.0 / std::sqrt(sqnorm_[j]);
  }
}

void OrthonormalBasis::eval_into(double x, std::span<double> out) const {
  const double a = params_.alpha;
  const double b = params_.beta;
  double prev2 = 1.0;
  out[0] = 1.0;
  if (degree_ == 0) {
    return;
  }
  double prev1 = 0.5 * ((a + b + 2.0) * x + (a - b));
  out[1] = prev1 * scale_[1];
  for (std::size_t j = 2; j < out.size(); ++j) {
    const Step& st = recurrence_[j];
    const double cur = (st.a * x + st.b) * prev1 - st.c * prev2;
    out[j] = cur * scale_[j];
    prev2 = prev1;
    prev1 = cur;
  }
}

double OrthonormalBasis::christoffel_sum(double x) const {
  std::vector<double> values(static_cast<std::size_t>(size()));
  eval_into(x, values);
  double sum = 0.0;
  for (double v : values) {
    sum += v * v;
  }
  return sum;
}

std::vector<double> eval_basis(const OrthonormalBasis& basis, double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("x outside [-1, 1]");
  }
  std::vector<double> out(static_cast<std::size_t>(basis.size()));
  basis.eval_into(x, out);
  return out;
}

std::vector<double> chebyshev_grid(std::size_t count) {
  if (count < 2) {
    throw DomainError("grid needs at least two points");
  }
  std::vector<double> grid(count);
  const double step = std::numbers::pi / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = -std::cos(step * static_cast<double>(i));
  }
  grid.front() = -1.0;
  grid.back() = 1.0;
  // Symmetric pairs, and an exact zero at the middle for odd counts.
  for (std::size_t i = 0; i < count / 2; ++i) {
    grid[count - 1 - i] = -grid[i];
  }
  if (count % 2 == 1) {
    grid[count / 2] = 0.0;
  }
  return grid;
}

double christoffel_K(const OrthonormalBasis& basis) {
  const JacobiParams& p = basis.params();
  if (std::min(p.alpha, p.beta) >= -0.5) {
    return std::max(basis.christoffel_sum(1.0), basis.christoffel_sum(-1.0));
  }
  const auto count =
      std::max<std::size_t>(4096, 50 * static_cast<std::size_t>(basis.degree()));
  const std::vector<double> grid = chebyshev_grid(count);
  std::vector<double> sums(count);
  double best = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sums[i] = basis.christoffel_sum(grid[i]);
    best = std::max(best, sums[i]);
  }
  // Golden-section polish of every interior local maximum of the grid.
  constexpr double kInvPhi = 0.6180339887498949;
  for (std::size_t i = 1; i + 1 < count; ++i) {
    if (sums[i] < sums[i - 1] || sums[i] < sums[i + 1]) {
      continue;
    }
    double lo = grid[i - 1];
    double hi = grid[i + 1];
    while (hi - lo > 1e-14) {
      const double left = hi - kInvPhi * (hi - lo);
      const double right = lo + kInvPhi * (hi - lo);
      if (basis.christoffel_sum(left) > basis.christoffel_sum(right)) {
        hi = right;
      } else {
        lo = left;
      }
    }
    best = std::max(best, basis.christoffel_sum(0.5 * (lo + hi)));
  }
  return best;
}

}  // namespace lsqstab
