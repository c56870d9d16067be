#include "lsqstab/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lsqstab/errors.hpp"

namespace lsqstab {

namespace {

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

GramMatrix::GramMatrix(SymmetricMatrix entries, std::size_t sample_count)
    : entries_(std::move(entries)), n_(sample_count) {}

Matrix basis_values(const OrthonormalBasis& basis, const SampleSet& samples) {
  const auto d = static_cast<std::size_t>(basis.size());
  Matrix values(samples.n(), d);
  for (std::size_t i = 0; i < samples.n(); ++i) {
    const double x = samples.points[i];
    if (!(std::abs(x) <= 1.0)) {
      throw DomainError("sample point outside [-1, 1]");
    }
    basis.eval_into(x, values.row(i));
  }
  return values;
}

GramMatrix gram(const OrthonormalBasis& basis, const SampleSet& samples) {
  if (samples.n() == 0) {
    throw ContractError("Gram matrix needs at least one sample");
  }
  const auto d = static_cast<std::size_t>(basis.size());
  const Matrix values = basis_values(basis, samples);

  // Upper triangle, packed row by row.
  std::vector<Neumaier> acc(d * (d + 1) / 2);
  for (std::size_t i = 0; i < samples.n(); ++i) {
    const auto row = values.row(i);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const double vj = row[j];
      for (std::size_t k = j; k < d; ++k) {
        acc[idx++].add(vj * row[k]);
      }
    }
  }

  const double inv_n = 1.0 / static_cast<double>(samples.n());
  Matrix g(d, d);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j; k < d; ++k) {
      const double v = acc[idx++].value() * inv_n;
      g(j, k) = v;
      g(k, j) = v;
    }
  }
  return GramMatrix(SymmetricMatrix(std::move(g)), samples.n());
}

MinEigen min_eigenvalue(const GramMatrix& g) {
  const double lambda = symmetric_eigenvalues(g.entries()).front();
  if (lambda < kLambdaFloor) {
    return {kLambdaFloor, true};
  }
  return {lambda, false};
}

Conditioning condition_from_gram(const GramMatrix& g) {
  const MinEigen me = min_eigenvalue(g);
  return {1.0 / std::sqrt(me.lambda_min), me.lambda_min, me.clamped};
}

Conditioning condition_number(const OrthonormalBasis& basis, const SampleSet& samples) {
  if (samples.n() == 0) {
    throw ContractError("Gram matrix needs at least one sample");
  }
  Matrix scaled = basis_values(basis, samples);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(samples.n()));
  for (std::size_t i = 0; i < scaled.rows(); ++i) {
    for (double& v : scaled.row(i)) {
      v *= inv_sqrt_n;
    }
  }
  const double sigma = smallest_singular_value(std::move(scaled));
  const double lambda = sigma * sigma;
  if (lambda < kLambdaFloor) {
    return {1.0 / std::sqrt(kLambdaFloor), kLambdaFloor, true};
  }
  return {1.0 / sigma, lambda, false};
}

double spectral_distance_to_identity(const GramMatrix& g) {
  const std::vector<double> mu = symmetric_eigenvalues(g.entries());
  return std::max(std::abs(mu.front() - 1.0), std::abs(mu.back() - 1.0));
}

std::vector<double> least_squares_fit(const OrthonormalBasis& basis,
                                      const SampleSet& samples,
                                      std::span<const double> values) {
  if (values.size() != samples.n()) {
    throw ContractError("value count differs from sample count");
  }
  const auto d = static_cast<std::size_t>(basis.size());
  if (distinct_count(samples) < d) {
    throw RankError("least squares of degree " + std::to_string(basis.degree()) +
                    " needs at least " + std::to_string(d) + " distinct points");
  }

  const Matrix lv = basis_values(basis, samples);
  std::vector<Neumaier> acc(d);
  for (std::size_t i = 0; i < samples.n(); ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      acc[k].add(values[i] * lv(i, k));
    }
  }
  const double inv_n = 1.0 / static_cast<double>(samples.n());
  std::vector<double> rhs(d);
  for (std::size_t k = 0; k < d; ++k) {
    rhs[k] = acc[k].value() * inv_n;
  }

  const EigenDecomposition eig = symmetric_eigen(gram(basis, samples).entries());
  std::vector<double> u(d, 0.0);
  for (std::size_t e = 0; e < d; ++e) {
    double proj = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      proj += eig.vectors(k, e) * rhs[k];
    }
    proj /= std::max(eig.values[e], kLambdaFloor);
    for (std::size_t k = 0; k < d; ++k) {
      u[k] += proj * eig.vectors(k, e);
    }
  }
  return u;
}

double evaluate_expansion(const OrthonormalBasis& basis, std::span<const double> coeffs,
                          double x) {
  std::vector<double> l(static_cast<std::size_t>(basis.size()));
  basis.eval_into(x, l);
  double sum = 0.0;
  for (std::size_t j = 0; j < l.size() && j < coeffs.size(); ++j) {
    sum += coeffs[j] * l[j];
  }
  return sum;
}

}  // namespace lsqstab
