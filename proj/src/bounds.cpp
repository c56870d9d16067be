#include "lsqstab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lsqstab/errors.hpp"

namespace lsqstab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kE2 = std::exp(2.0);

void require_gamma_above_half(double gamma) {
  if (!(gamma > -0.5)) {
    throw DomainError("max(alpha, beta) must exceed -1/2");
  }
}

}  // namespace

double theoretical_exponent(int m, std::size_t n, const JacobiParams& params,
                            double big_c) {
  if (m < 1 || n < 1) {
    throw ContractError("exponent needs m >= 1 and n >= 1");
  }
  if (!(big_c > 0.0)) {
    throw DomainError("C must be positive");
  }
  require_gamma_above_half(params.gamma);
  const double g = params.gamma;
  const double md = m;
  const double ratio = std::pow(md, 2.0 * (1.0 + g)) / (big_c * static_cast<double>(n));
  return std::pow(ratio, 1.0 / (1.0 + 2.0 * g));
}

double iota(double r) {
  if (!(r > 0.0)) {
    throw DomainError("r must be positive");
  }
  return (1.0 - std::numbers::ln2) / (2.0 + 2.0 * r);
}

std::size_t cohen_threshold(const OrthonormalBasis& basis, double r) {
  const double k = christoffel_K(basis);
  const double io = iota(r);
  auto holds = [&](std::size_t n) {
    const double nd = static_cast<double>(n);
    return k <= io * nd / std::log(nd);
  };
  std::size_t lo = static_cast<std::size_t>(basis.degree()) + 2;
  if (holds(lo)) {
    return lo;
  }
  std::size_t hi = lo;
  while (!holds(hi)) {
    lo = hi;
    hi *= 2;
  }
  // holds(lo) is false, holds(hi) is true.
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (holds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double cohen_target_probability(std::size_t n, double r) {
  return 1.0 - 2.0 * std::pow(static_cast<double>(n), -r);
}

double orderstat_probability_bound(const JacobiParams& params, double big_c) {
  const double threshold = 2.0 * kE2 * params.cbar1;
  if (!(big_c > threshold)) {
    throw DomainError("C must exceed 2 e^2 cbar1 = " + std::to_string(threshold));
  }
  return 1.0 - threshold / big_c;
}

double default_big_c(const JacobiParams& params) {
  return 2.0 * kE2 * params.cbar + 1.0;
}

double witness_threshold(double beta) {
  return std::max(std::pow(2.0 * kPi * kPi, (1.0 + beta) / (1.0 + 2.0 * beta)),
                  9.0 * kPi * kPi / 8.0);
}

WitnessPolynomial::WitnessPolynomial(int m, std::vector<double> order_stats) : m_(m) {
  const auto k = static_cast<int>(order_stats.size());
  if (k < 1 || k > m - 1) {
    throw ContractError("witness needs 1 <= K <= m-1");
  }
  roots_.reserve(static_cast<std::size_t>(m));
  roots_.push_back(-1.0);
  roots_.insert(roots_.end(), order_stats.begin(), order_stats.end());
  for (int j = k + 1; j <= m - 1; ++j) {
    roots_.push_back(-std::cos(kPi * (2.0 * j + 1.0) / (2.0 * m)));
  }
}

WitnessPolynomial::LogValue WitnessPolynomial::log_eval(double x) const {
  LogValue v{(m_ - 2) * std::numbers::ln2, 1};
  for (double r : roots_) {
    const double f = x - r;
    if (f == 0.0) {
      return {-std::numeric_limits<double>::infinity(), 0};
    }
    v.log_abs += std::log(std::abs(f));
    if (f < 0.0) {
      v.sign = -v.sign;
    }
  }
  return v;
}

double WitnessPolynomial::operator()(double x) const {
  const LogValue v = log_eval(x);
  return v.sign == 0 ? 0.0 : v.sign * std::exp(v.log_abs);
}

WitnessResult witness_lower_bound(const SampleSet& sorted, int m,
                                  const JacobiParams& params, double big_c) {
  if (!sorted.sorted) {
    throw ContractError("witness construction requires a sorted sample set");
  }
  if (m < 1 || static_cast<std::size_t>(m) >= sorted.n()) {
    throw ContractError("witness construction requires 1 <= m <= n-1");
  }
  if (!(big_c > 0.0)) {
    throw DomainError("C must be positive");
  }
  require_gamma_above_half(params.gamma);

  // Work with beta >= alpha: reflect x -> -x and swap exponents otherwise.
  const bool reflect = params.alpha > params.beta;
  SampleSet pts = sorted;
  JacobiParams eff = params;
  if (reflect) {
    for (double& x : pts.points) {
      x = -x;
    }
    std::reverse(pts.points.begin(), pts.points.end());
    eff = make_params(params.beta, params.alpha);
  }
  const double beta = eff.beta;
  const std::size_t n = pts.n();

  WitnessResult res;
  res.lambda = theoretical_exponent(m, n, eff, big_c);
  res.event_holds = orderstat_event(pts, eff, big_c).holds;
  if (res.lambda <= witness_threshold(beta) || m < 2) {
    res.witness_case = WitnessCase::II;
    res.K = 0;
    res.bound = 1.0;
    res.sup_location = std::numeric_limits<double>::quiet_NaN();
    res.max_on_samples = std::numeric_limits<double>::quiet_NaN();
    return res;
  }

  const double scale = std::pow(2.0 * kPi * kPi, (1.0 + beta) / (1.0 + 2.0 * beta));
  const double raw_k = std::floor(res.lambda / scale);
  const int k = static_cast<int>(std::clamp(raw_k, 1.0, static_cast<double>(m - 1)));
  res.witness_case = WitnessCase::I;
  res.K = k;

  const WitnessPolynomial p(
      m, std::vector<double>(pts.points.begin(), pts.points.begin() + k));

  double log_den = -std::numeric_limits<double>::infinity();
  for (double x : pts.points) {
    log_den = std::max(log_den, p.log_eval(x).log_abs);
  }
  if (!std::isfinite(log_den)) {
    throw RankError("witness vanishes on every sample point");
  }

  std::vector<double> candidates = chebyshev_grid(
      std::max<std::size_t>(8192, 100 * static_cast<std::size_t>(m)));
  candidates.push_back(-std::cos(kPi / m));
  double log_sup = -std::numeric_limits<double>::infinity();
  double where = -1.0;
  for (double x : candidates) {
    const double v = p.log_eval(x).log_abs;
    if (v > log_sup) {
      log_sup = v;
      where = x;
    }
  }

  res.max_on_samples = std::exp(log_den);
  res.bound = std::max(1.0, std::exp(log_sup - log_den));
  res.sup_location = reflect ? -where : where;
  return res;
}

}  // namespace lsqstab
