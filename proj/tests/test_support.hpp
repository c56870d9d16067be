#pragma once

// Independent references shared by the unit tests. Nothing here calls the
// library code paths it is used to check.

#include <cmath>
#include <cstddef>
#include <vector>

namespace test_support {

/// Standard Jacobi polynomial from the explicit sum
/// P_n(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^{n-s}.
inline double jacobi_explicit(int n, double a, double b, double x) {
  auto binom = [](long double top, int k) {
    return std::exp(std::lgamma(top + 1.0L) - std::lgamma(static_cast<long double>(k) + 1.0L) -
                    std::lgamma(top - k + 1.0L));
  };
  long double sum = 0.0L;
  const long double xm = (static_cast<long double>(x) - 1.0L) / 2.0L;
  const long double xp = (static_cast<long double>(x) + 1.0L) / 2.0L;
  for (int s = 0; s <= n; ++s) {
    sum += binom(n + a, n - s) * binom(n + b, s) * std::pow(xm, s) * std::pow(xp, n - s);
  }
  return static_cast<double>(sum);
}

/// Lebesgue function sum_i |l_i(x)| of polynomial interpolation at `nodes`.
inline double lebesgue_function(const std::vector<double>& nodes, double x) {
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double l = 1.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j != i) {
        l *= (x - nodes[j]) / (nodes[i] - nodes[j]);
      }
    }
    total += std::abs(l);
  }
  return total;
}

/// max of the Lebesgue function: golden-section search inside every gap
/// between consecutive (sorted) nodes, where it is smooth and unimodal.
inline double lebesgue_constant(const std::vector<double>& nodes) {
  double best = 1.0;
  const double inv_phi = 0.6180339887498949;
  for (std::size_t g = 0; g + 1 < nodes.size(); ++g) {
    double a = nodes[g];
    double b = nodes[g + 1];
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
      const double c = b - inv_phi * (b - a);
      const double d = a + inv_phi * (b - a);
      if (lebesgue_function(nodes, c) > lebesgue_function(nodes, d)) {
        b = d;
      } else {
        a = c;
      }
    }
    best = std::max(best, lebesgue_function(nodes, 0.5 * (a + b)));
  }
  return best;
}

}  // namespace test_support
