#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "lsqstab/dense_numerics.hpp"
#include "lsqstab/errors.hpp"
#include "lsqstab/jacobi_basis.hpp"
#include "test_support.hpp"

using namespace lsqstab;
using doctest::Approx;

namespace {

const std::vector<double> kExponents = {-0.9, -0.5, -0.25, 0.0, 0.5, 1.0, 2.0};

double tanh_sinh_mass(const JacobiParams& p) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  // xc is the signed distance to the nearest endpoint, which keeps the
  // singular factors accurate.
  auto g = [&](double, double xc) {
    const double one_minus = xc > 0 ? xc : 2.0 + xc;
    const double one_plus = xc > 0 ? 2.0 - xc : -xc;
    return p.c * std::pow(one_minus, p.alpha) * std::pow(one_plus, p.beta);
  };
  return integrator.integrate(g, -1.0, 1.0);
}

}  // namespace

TEST_CASE("make_params normalizes the measure") {
  const JacobiParams uni = make_params(0.0, 0.0);
  CHECK(uni.c == Approx(0.5).epsilon(1e-15));
  CHECK(uni.gamma == 0.0);

  CHECK(make_params(-0.5, -0.5).c == Approx(1.0 / std::numbers::pi).epsilon(1e-14));

  const JacobiParams lin = make_params(1.0, 0.0);
  CHECK(lin.c == Approx(0.5).epsilon(1e-14));
  CHECK(lin.gamma == 1.0);

  // cbar1 = c 2^alpha / (1 + beta): 1/2 for the uniform measure.
  CHECK(uni.cbar1 == Approx(0.5));
  CHECK(uni.cbar == Approx(0.5));

  for (double a : kExponents) {
    for (double b : kExponents) {
      const JacobiParams p = make_params(a, b);
      CHECK(p.gamma == std::max(a, b));
      CHECK(tanh_sinh_mass(p) == Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("make_params rejects exponents at or below -1") {
  CHECK_THROWS_WITH_AS(make_params(-1.0, 0.0), "alpha must exceed -1", DomainError);
  CHECK_THROWS_WITH_AS(make_params(0.0, -1.5), "beta must exceed -1", DomainError);
  CHECK_THROWS_AS(make_params(std::nan(""), 0.0), DomainError);
}

TEST_CASE("weight") {
  CHECK(weight(make_params(0, 0), 0.3) == Approx(0.5));
  CHECK(weight(make_params(-0.5, -0.5), 0.0) == Approx(1.0 / std::numbers::pi));
  CHECK(weight(make_params(0.5, 0.5), 0.0) == Approx(2.0 / std::numbers::pi).epsilon(1e-14));
  CHECK(weight(make_params(0.5, 0.5), 1.0) == 0.0);

  CHECK_THROWS_WITH_AS(weight(make_params(-0.5, 0.0), 1.0), "singular endpoint", DomainError);
  CHECK_THROWS_WITH_AS(weight(make_params(0.0, -0.5), -1.0), "singular endpoint", DomainError);
  CHECK_THROWS_AS(weight(make_params(0, 0), 1.5), DomainError);
}

TEST_CASE("eval_basis examples") {
  const OrthonormalBasis uni(make_params(0, 0), 1);
  const auto at_one = eval_basis(uni, 1.0);
  REQUIRE(at_one.size() == 2);
  CHECK(at_one[0] == 1.0);
  CHECK(at_one[1] == Approx(std::sqrt(3.0)).epsilon(1e-14));

  for (double a : kExponents) {
    const OrthonormalBasis b0(make_params(a, 0.3), 0);
    const auto v = eval_basis(b0, 0.77);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == 1.0);
  }

  const OrthonormalBasis cheb(make_params(-0.5, -0.5), 2);
  const auto c0 = eval_basis(cheb, 0.0);
  CHECK(c0[0] == 1.0);
  CHECK(std::abs(c0[1]) < 1e-15);
  CHECK(c0[2] == Approx(-std::sqrt(2.0)).epsilon(1e-13));

  CHECK_THROWS_AS(eval_basis(uni, 1.0000001), DomainError);
}

TEST_CASE("recurrence matches the explicit Jacobi sum") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  for (double a : kExponents) {
    for (double b : kExponents) {
      const JacobiParams p = make_params(a, b);
      const OrthonormalBasis basis(p, 10);
      for (int rep = 0; rep < 5; ++rep) {
        const double x = ux(gen);
        const auto l = eval_basis(basis, x);
        for (int j = 1; j <= 10; ++j) {
          const double expected = test_support::jacobi_explicit(j, a, b, x) /
                                  std::sqrt(squared_norm(p, j));
          CHECK(l[static_cast<std::size_t>(j)] ==
                Approx(expected).epsilon(1e-10).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("squared_norm") {
  const JacobiParams uni = make_params(0, 0);
  for (int j = 0; j <= 40; ++j) {
    CHECK(squared_norm(uni, j) == Approx(1.0 / (2.0 * j + 1.0)).epsilon(1e-12));
  }
  for (double a : kExponents) {
    for (double b : kExponents) {
      CHECK(squared_norm(make_params(a, b), 0) == Approx(1.0).epsilon(1e-13));
    }
  }
  // alpha + beta = -1 with unequal exponents.
  CHECK(squared_norm(make_params(-0.25, -0.75), 0) == Approx(1.0).epsilon(1e-13));
  // Standard normalization has P_1 = x/2 for the Chebyshev pair, so h_1 = 1/8;
  // rescaled to value 1 at x = 1 the norm is that of T_1, namely 1/2.
  const JacobiParams cheb = make_params(-0.5, -0.5);
  CHECK(squared_norm(cheb, 1) == Approx(0.125).epsilon(1e-13));
  const double p1_at_one = endpoint_sup(cheb, 1);
  CHECK(squared_norm(cheb, 1) / (p1_at_one * p1_at_one) == Approx(0.5).epsilon(1e-13));

  // Quadrature of P_j^2 w with an independent integrator.
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (double a : {0.5, 1.0, 2.0}) {
    const JacobiParams p = make_params(a, 0.25);
    for (int j : {1, 3, 6}) {
      auto f = [&](double x) {
        const double pj = test_support::jacobi_explicit(j, a, 0.25, x);
        return pj * pj * p.c * std::pow(1.0 - x, a) * std::pow(1.0 + x, 0.25);
      };
      CHECK(squared_norm(p, j) == Approx(integrator.integrate(f, -1.0, 1.0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("endpoint_sup") {
  for (int j = 0; j < 20; ++j) {
    CHECK(endpoint_sup(make_params(0, 0), j) == Approx(1.0).epsilon(1e-13));
  }
  CHECK(endpoint_sup(make_params(1, 0), 3) == Approx(4.0).epsilon(1e-13));
  CHECK(endpoint_sup(make_params(0.3, 2.0), 0) == 1.0);
  CHECK_THROWS_AS(endpoint_sup(make_params(-0.75, -0.6), 2), DomainError);

  // Equals |P_j| at the heavier endpoint.
  CHECK(endpoint_sup(make_params(0.5, 2.0), 5) ==
        Approx(std::abs(test_support::jacobi_explicit(5, 0.5, 2.0, -1.0))).epsilon(1e-12));
}

TEST_CASE("endpoint value of L_j equals endpoint_sup / sqrt(h_j)") {
  for (double a : {-0.5, -0.25, 0.0, 0.5, 1.0, 2.0}) {
    for (double b : {-0.5, -0.25, 0.0, 0.5, 1.0, 2.0}) {
      if (a < b) {
        continue;
      }
      const JacobiParams p = make_params(a, b);
      const OrthonormalBasis basis(p, 40);
      const auto l = eval_basis(basis, 1.0);
      for (int j = 0; j <= 40; ++j) {
        CHECK(l[static_cast<std::size_t>(j)] ==
              Approx(endpoint_sup(p, j) / std::sqrt(basis.sqnorm(j))).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("christoffel_K") {
  const JacobiParams uni = make_params(0, 0);
  for (int m = 0; m <= 50; ++m) {
    const double k = christoffel_K(OrthonormalBasis(uni, m));
    CHECK(k / ((m + 1.0) * (m + 1.0)) == Approx(1.0).epsilon(1e-9));
  }
  for (double a : kExponents) {
    CHECK(christoffel_K(OrthonormalBasis(make_params(a, -0.3), 0)) == Approx(1.0));
  }
  const JacobiParams cheb = make_params(-0.5, -0.5);
  for (int m = 0; m <= 30; ++m) {
    CHECK(christoffel_K(OrthonormalBasis(cheb, m)) == Approx(2.0 * m + 1.0).epsilon(1e-10));
  }
}

TEST_CASE("christoffel_K agrees with a brute-force grid and is monotone in m") {
  for (double a : kExponents) {
    for (double b : {-0.9, 0.0, 1.0}) {
      const JacobiParams p = make_params(a, b);
      double prev = 0.0;
      for (int m = 0; m <= 12; ++m) {
        const OrthonormalBasis basis(p, m);
        const double k = christoffel_K(basis);
        CHECK(k >= prev * (1.0 - 1e-12));
        prev = k;

        // Uniform grid of 20001 points: never above K, and close to it.
        double brute = 0.0;
        for (int i = 0; i <= 20000; ++i) {
          const double x = -1.0 + 2.0 * i / 20000.0;
          const auto l = eval_basis(basis, x);
          double s = 0.0;
          for (double v : l) {
            s += v * v;
          }
          brute = std::max(brute, s);
        }
        CHECK(brute <= k * (1.0 + 1e-12));
        CHECK(brute >= k * (1.0 - 1e-3));
      }
    }
  }
}

TEST_CASE("sup norm bounded by sqrt(K) times L2 norm") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  for (double a : {-0.9, -0.25, 0.0, 1.0}) {
    for (double b : {-0.5, 0.5}) {
      const OrthonormalBasis basis(make_params(a, b), 8);
      const double root_k = std::sqrt(christoffel_K(basis));
      const std::vector<double> grid = chebyshev_grid(4001);
      for (int rep = 0; rep < 100 / 8 + 1; ++rep) {
        std::vector<double> c(9);
        double norm = 0.0;
        for (double& v : c) {
          v = nd(gen);
          norm += v * v;
        }
        norm = std::sqrt(norm);
        double sup = 0.0;
        for (double x : grid) {
          const auto l = eval_basis(basis, x);
          double px = 0.0;
          for (std::size_t j = 0; j < c.size(); ++j) {
            px += c[j] * l[j];
          }
          sup = std::max(sup, std::abs(px));
        }
        CHECK(sup <= root_k * norm + 1e-8);
      }
    }
  }
}

TEST_CASE("orthonormality under Gauss-Jacobi quadrature") {
  for (double a : kExponents) {
    for (double b : kExponents) {
      const JacobiParams p = make_params(a, b);
      const int m = 30;
      const OrthonormalBasis basis(p, m);
      const Quadrature q = gauss_jacobi_nodes(p, m + 1);
      std::vector<std::vector<double>> vals;
      for (double x : q.nodes) {
        vals.push_back(eval_basis(basis, x));
      }
      double defect = 0.0;
      for (int j = 0; j <= m; ++j) {
        for (int k = 0; k <= m; ++k) {
          double s = 0.0;
          for (std::size_t i = 0; i < q.nodes.size(); ++i) {
            s += q.weights[i] * vals[i][static_cast<std::size_t>(j)] *
                 vals[i][static_cast<std::size_t>(k)];
          }
          defect = std::max(defect, std::abs(s - (j == k ? 1.0 : 0.0)));
        }
      }
      INFO("alpha=" << a << " beta=" << b);
      CHECK(defect < 1e-8);
    }
  }
}
