#include "lsqstab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lsqstab/dense_numerics.hpp"
#include "lsqstab/errors.hpp"
#include "lsqstab/random.hpp"

namespace lsqstab {

namespace {

std::vector<double> chebyshev_values(int m, double x) {
  std::vector<double> t(static_cast<std::size_t>(m) + 1);
  t[0] = 1.0;
  if (m >= 1) {
    t[1] = x;
  }
  for (std::size_t k = 2; k < t.size(); ++k) {
    t[k] = 2.0 * x * t[k - 1] - t[k - 2];
  }
  return t;
}

void check_oracle_input(const SampleSet& samples, int m) {
  if (m < 0) {
    throw ContractError("degree must be non-negative");
  }
  if (m > kOracleMaxDegree) {
    throw ContractError("oracle is capped at degree " + std::to_string(kOracleMaxDegree));
  }
  if (distinct_count(samples) < static_cast<std::size_t>(m) + 1) {
    throw RankError("oracle needs at least m+1 distinct sample points");
  }
}

/// Feasible region |p(x_i)| <= 1 in Chebyshev coefficients; objective set per x*.
class LebesgueLp {
 public:
  LebesgueLp(const SampleSet& samples, int m) : m_(m) {
    problem_.objective.assign(static_cast<std::size_t>(m) + 1, 0.0);
    for (double x : samples.points) {
      std::vector<double> t = chebyshev_values(m, x);
      std::vector<double> neg(t.size());
      std::transform(t.begin(), t.end(), neg.begin(), [](double v) { return -v; });
      problem_.constraints.push_back({std::move(t), 1.0});
      problem_.constraints.push_back({std::move(neg), 1.0});
    }
  }

  double operator()(double x_star) {
    problem_.objective = chebyshev_values(m_, x_star);
    const LPResult res = lp_maximize(problem_);
    if (res.status != LPStatus::optimal) {
      throw Error("internal", "oracle LP is not bounded and feasible");
    }
    return res.value;
  }

 private:
  int m_;
  LPProblem problem_;
};

double golden_max(LebesgueLp& f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  double best = std::max(fc, fd);
  for (int iter = 0; iter < 40 && b - a > 1e-13; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      best = std::max(best, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      best = std::max(best, fd);
    }
  }
  return best;
}

}  // namespace

double b_exact_at(const SampleSet& samples, int m, double x_star) {
  check_oracle_input(samples, m);
  LebesgueLp lp(samples, m);
  return lp(x_star);
}

double b_exact(const SampleSet& samples, int m, std::size_t grid_size) {
  check_oracle_input(samples, m);
  if (grid_size < std::max<std::size_t>(2, 8 * static_cast<std::size_t>(m))) {
    throw ContractError("oracle grid must have at least max(8m, 2) points");
  }
  LebesgueLp lp(samples, m);
  const std::vector<double> grid = chebyshev_grid(grid_size);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = lp(grid[i]);
  }
  double best = *std::max_element(values.begin(), values.end());

  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool left_ok = i == 0 || values[i] >= values[i - 1];
    const bool right_ok = i + 1 == grid.size() || values[i] >= values[i + 1];
    if (left_ok && right_ok) {
      peaks.push_back(i);
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&](std::size_t l, std::size_t r) { return values[l] > values[r]; });
  peaks.resize(std::min<std::size_t>(peaks.size(), 3));
  for (std::size_t i : peaks) {
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[i + 1 == grid.size() ? i : i + 1];
    best = std::max(best, golden_max(lp, lo, hi));
  }
  return best;
}

double d_random_check(const OrthonormalBasis& basis, const GramMatrix& g,
                      std::size_t trials, std::uint64_t seed) {
  if (g.m() != basis.degree()) {
    throw ContractError("Gram matrix and basis differ in degree");
  }
  if (trials == 0) {
    throw ContractError("at least one trial is required");
  }
  const std::size_t d = g.entries().order();
  const Matrix& a = g.entries().matrix();
  auto ratio = [&](const std::vector<double>& w) {
    double ww = 0.0;
    double wgw = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      ww += w[j] * w[j];
      double gw = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        gw += a(j, k) * w[k];
      }
      wgw += w[j] * gw;
    }
    return std::sqrt(ww / std::max(wgw, kLambdaFloor * ww));
  };

  const EigenDecomposition eig = symmetric_eigen(g.entries());
  double best = ratio(eig.vectors.column(0));

  Rng rng(seed);
  std::vector<double> w(d);
  for (std::size_t t = 0; t < trials; ++t) {
    double norm = 0.0;
    for (double& v : w) {
      v = rng.normal();
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (double& v : w) {
      v /= norm;
    }
    best = std::max(best, ratio(w));
  }
  return best;
}

}  // namespace lsqstab
