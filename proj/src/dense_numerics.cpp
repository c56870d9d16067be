#include "lsqstab/dense_numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lsqstab/errors.hpp"

namespace lsqstab {

Matrix Matrix::identity(std::size_t order) {
  Matrix m(order, order);
  for (std::size_t i = 0; i < order; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    out[r] = (*this)(r, c);
  }
  return out;
}

double Matrix::frobenius_norm() const {
  double sum = 0.0;
  for (double v : data_) {
    sum += v * v;
  }
  return std::sqrt(sum);
}

SymmetricMatrix::SymmetricMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ContractError("symmetric matrix must be square and non-empty");
  }
  const std::size_t d = entries_.rows();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double scale = std::max(1.0, std::abs(entries_(i, j)));
      if (!(std::abs(entries_(i, j) - entries_(j, i)) <= 1e-14 * scale)) {
        throw ContractError("matrix is not symmetric");
      }
    }
  }
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    m(i, i) = diag[i];
  }
  return SymmetricMatrix(std::move(m));
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) {
        sum += a(i, j) * a(i, j);
      }
    }
  }
  return std::sqrt(sum);
}

void sort_eigenpairs(EigenDecomposition& eig) {
  const std::size_t d = eig.values.size();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return eig.values[l] < eig.values[r];
  });
  EigenDecomposition sorted{std::vector<double>(d), Matrix(d, d)};
  for (std::size_t k = 0; k < d; ++k) {
    sorted.values[k] = eig.values[order[k]];
    for (std::size_t r = 0; r < d; ++r) {
      sorted.vectors(r, k) = eig.vectors(r, order[k]);
    }
  }
  eig = std::move(sorted);
}

}  // namespace

EigenDecomposition symmetric_eigen(const SymmetricMatrix& sym, double tol) {
  if (!(tol > 0.0)) {
    throw ContractError("eigen tolerance must be positive");
  }
  constexpr int kMaxSweeps = 100;
  const std::size_t d = sym.order();
  Matrix a = sym.matrix();
  Matrix v = Matrix::identity(d);
  const double norm = a.frobenius_norm();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= tol * norm) {
      break;
    }
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        // Entries negligible against both diagonal elements are dropped.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) {
          t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          if (k == p || k == q) {
            continue;
          }
          const double akp = a(k, p);
          const double akq = a(k, q);
          const double new_kp = c * akp - s * akq;
          const double new_kq = s * akp + c * akq;
          a(k, p) = new_kp;
          a(p, k) = new_kp;
          a(k, q) = new_kq;
          a(q, k) = new_kq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    if (!rotated) {
      break;
    }
  }

  EigenDecomposition eig{std::vector<double>(d), std::move(v)};
  for (std::size_t i = 0; i < d; ++i) {
    eig.values[i] = a(i, i);
  }
  sort_eigenpairs(eig);
  return eig;
}

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& sym) {
  const int n = static_cast<int>(sym.order());
  Matrix z = sym.matrix();
  std::vector<double> d(static_cast<std::size_t>(n));
  std::vector<double> e(static_cast<std::size_t>(n));
  auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i)]; };
  auto E = [&](int i) -> double& { return e[static_cast<std::size_t>(i)]; };
  auto Z = [&](int i, int j) -> double& {
    return z(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };

  // Householder reduction of the lower triangle to tridiagonal form.
  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k < i; ++k) {
        scale += std::abs(Z(i, k));
      }
      if (scale == 0.0) {
        E(i) = Z(i, l);
      } else {
        for (int k = 0; k < i; ++k) {
          Z(i, k) /= scale;
          h += Z(i, k) * Z(i, k);
        }
        double f = Z(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        E(i) = scale * g;
        h -= f * g;
        Z(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j < i; ++j) {
          g = 0.0;
          for (int k = 0; k <= j; ++k) {
            g += Z(j, k) * Z(i, k);
          }
          for (int k = j + 1; k < i; ++k) {
            g += Z(k, j) * Z(i, k);
          }
          E(j) = g / h;
          f += E(j) * Z(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j < i; ++j) {
          f = Z(i, j);
          g = E(j) - hh * f;
          E(j) = g;
          for (int k = 0; k <= j; ++k) {
            Z(j, k) -= f * E(k) + g * Z(i, k);
          }
        }
      }
    } else {
      E(i) = Z(i, l);
    }
  }
  for (int i = 0; i < n; ++i) {
    D(i) = Z(i, i);
  }

  // Implicit QL on the tridiagonal (d, e).
  for (int i = 1; i < n; ++i) {
    E(i - 1) = E(i);
  }
  E(n - 1) = 0.0;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(D(m)) + std::abs(D(m + 1));
        if (std::abs(E(m)) <= kEps * dd) {
          break;
        }
      }
      if (m != l) {
        if (++iter > 60) {
          throw Error("numerics", "tridiagonal QL failed to converge");
        }
        double g = (D(l + 1) - D(l)) / (2.0 * E(l));
        double r = std::hypot(g, 1.0);
        g = D(m) - D(l) + E(l) / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          const double f = s * E(i);
          const double b = c * E(i);
          r = std::hypot(f, g);
          E(i + 1) = r;
          if (r == 0.0) {
            D(i + 1) -= p;
            E(m) = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = D(i + 1) - p;
          r = (D(i) - g) * s + 2.0 * c * b;
          p = s * r;
          D(i + 1) = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) {
          continue;
        }
        D(l) -= p;
        E(l) = g;
        E(m) = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

double smallest_singular_value(Matrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  if (cols == 0) {
    throw ContractError("matrix has no columns");
  }
  if (rows < cols) {
    return 0.0;
  }

  std::vector<double> v(rows);
  for (std::size_t k = 0; k < cols; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k; i < rows; ++i) {
      norm2 += a(i, k) * a(i, k);
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) {
      continue;
    }
    const double alpha = a(k, k) > 0.0 ? -norm : norm;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < rows; ++i) {
      v[i] = a(i, k) - (i == k ? alpha : 0.0);
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0) {
      continue;
    }
    for (std::size_t j = k; j < cols; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) {
        dot += v[i] * a(i, j);
      }
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < rows; ++i) {
        a(i, j) -= f * v[i];
      }
    }
  }

  // sigma_min(R) = 1 / sqrt(lambda_max(R^-1 R^-T)); the largest eigenvalue is
  // computed to relative accuracy near eps, so no squaring of cond(a) occurs.
  Matrix inv(cols, cols);
  for (std::size_t j = cols; j-- > 0;) {
    if (a(j, j) == 0.0) {
      return 0.0;
    }
    inv(j, j) = 1.0 / a(j, j);
    for (std::size_t i = j; i-- > 0;) {
      double sum = 0.0;
      for (std::size_t k = i + 1; k <= j; ++k) {
        sum += a(i, k) * inv(k, j);
      }
      inv(i, j) = -sum / a(i, i);
    }
  }
  Matrix m(cols, cols);
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t k = i; k < cols; ++k) {
      double sum = 0.0;
      for (std::size_t j = k; j < cols; ++j) {
        sum += inv(i, j) * inv(k, j);
      }
      m(i, k) = sum;
      m(k, i) = sum;
    }
  }
  if (!std::isfinite(m.frobenius_norm())) {
    return 0.0;
  }
  const double top = symmetric_eigenvalues(SymmetricMatrix(std::move(m))).back();
  return top > 0.0 ? 1.0 / std::sqrt(top) : 0.0;
}

Quadrature gauss_jacobi_nodes(const JacobiParams& params, int k) {
  if (k < 1) {
    throw DomainError("quadrature order must be at least 1");
  }
  const double a = params.alpha;
  const double b = params.beta;
  const auto order = static_cast<std::size_t>(k);

  // Monic recurrence x p_j = p_{j+1} + diag_j p_j + off_j p_{j-1}.
  Matrix jac(order, order);
  for (std::size_t j = 0; j < order; ++j) {
    const double n = static_cast<double>(j);
    const double s = 2.0 * n + a + b;
    jac(j, j) = j == 0 ? (b - a) / (a + b + 2.0)
                       : (b * b - a * a) / (s * (s + 2.0));
    if (j == 0) {
      continue;
    }
    double off = 0.0;
    if (j == 1) {
      // (j + a + b) and (s - 1) cancel; both vanish when a + b = -1.
      off = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      off = 4.0 * n * (n + a) * (n + b) * (n + a + b) /
            (s * s * (s + 1.0) * (s - 1.0));
    }
    jac(j, j - 1) = std::sqrt(off);
    jac(j - 1, j) = jac(j, j - 1);
  }

  const EigenDecomposition eig = symmetric_eigen(SymmetricMatrix(std::move(jac)), 1e-15);
  Quadrature rule{eig.values, std::vector<double>(order)};
  double total = 0.0;
  for (std::size_t i = 0; i < order; ++i) {
    const double v0 = eig.vectors(0, i);
    rule.weights[i] = v0 * v0;
    total += rule.weights[i];
  }
  for (double& w : rule.weights) {
    w /= total;
  }
  return rule;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kPivotTol = 1e-11;
constexpr std::size_t kMaxPivots = 200000;

/// Dense tableau: `rows` constraint rows followed by the objective row, whose
/// entries are reduced costs z_j - c_j and whose last entry is the value.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows),
        cols_(cols),
        t_(rows + 1, cols + 1),
        basis_(rows),
        twin_(cols, kNoTwin),
        basic_(cols, false) {}

  static constexpr std::size_t kNoTwin = static_cast<std::size_t>(-1);

  /// Columns c and d are the positive and negative parts of one free
  /// variable. While one is basic the other is its exact negative, so its
  /// reduced cost is zero up to roundoff and it must not enter.
  void set_twins(std::size_t c, std::size_t d) {
    twin_[c] = d;
    twin_[d] = c;
  }

  void set_basic(std::size_t r, std::size_t c) {
    basis_[r] = c;
    basic_[c] = true;
  }

  double& at(std::size_t r, std::size_t c) { return t_(r, c); }
  double at(std::size_t r, std::size_t c) const { return t_(r, c); }
  double& rhs(std::size_t r) { return t_(r, cols_); }
  double& objective(std::size_t c) { return t_(rows_, c); }
  double value() const { return t_(rows_, cols_); }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / t_(pr, pc);
    auto prow = t_.row(pr);
    for (double& v : prow) {
      v *= inv;
    }
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) {
        continue;
      }
      const double factor = t_(r, pc);
      if (factor == 0.0) {
        continue;
      }
      auto row = t_.row(r);
      for (std::size_t c = 0; c <= cols_; ++c) {
        row[c] -= factor * prow[c];
      }
      row[pc] = 0.0;
    }
    basic_[basis_[pr]] = false;
    set_basic(pr, pc);
  }

  /// Runs Bland's-rule iterations over columns [0, allowed). Returns false
  /// when an improving column has no bounding row.
  bool optimize(std::size_t allowed) {
    for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
      std::size_t enter = allowed;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (twin_[c] != kNoTwin && basic_[twin_[c]]) {
          continue;
        }
        if (t_(rows_, c) < -kPivotTol) {
          enter = c;
          break;
        }
      }
      if (enter == allowed) {
        return true;
      }
      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double coef = t_(r, enter);
        if (coef <= kPivotTol) {
          continue;
        }
        const double ratio = t_(r, cols_) / coef;
        if (leave == rows_ || ratio < best - 1e-12) {
          best = ratio;
          leave = r;
        } else if (ratio <= best + 1e-12 && basis_[r] < basis_[leave]) {
          // Bland tie-break: smallest basic variable index leaves.
          best = std::min(best, ratio);
          leave = r;
        }
      }
      if (leave == rows_) {
        return false;
      }
      pivot(leave, enter);
    }
    throw Error("numerics", "simplex iteration limit reached");
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  Matrix t_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> twin_;
  std::vector<bool> basic_;
};

}  // namespace

LPResult lp_maximize(const LPProblem& problem) {
  const std::size_t d = problem.variables();
  const std::size_t r = problem.constraints.size();
  if (d == 0) {
    throw ContractError("LP needs at least one variable");
  }
  if (r == 0) {
    throw ContractError("LP needs at least one constraint");
  }
  for (const auto& row : problem.constraints) {
    if (row.a.size() != d) {
      throw ContractError("LP constraint length differs from variable count");
    }
  }

  // Columns: z+ (d), z- (d), slacks (r), artificials (one per negative b).
  std::vector<double> sign(r, 1.0);
  std::size_t artificial_count = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (problem.constraints[i].b < 0.0) {
      sign[i] = -1.0;
      ++artificial_count;
    }
  }
  const std::size_t slack0 = 2 * d;
  const std::size_t art0 = slack0 + r;
  const std::size_t cols = art0 + artificial_count;

  Tableau tab(r, cols);
  for (std::size_t j = 0; j < d; ++j) {
    tab.set_twins(j, d + j);
  }
  std::size_t next_art = art0;
  for (std::size_t i = 0; i < r; ++i) {
    const auto& row = problem.constraints[i];
    for (std::size_t j = 0; j < d; ++j) {
      tab.at(i, j) = sign[i] * row.a[j];
      tab.at(i, d + j) = -sign[i] * row.a[j];
    }
    tab.at(i, slack0 + i) = sign[i];
    tab.rhs(i) = sign[i] * row.b;
    if (sign[i] < 0.0) {
      tab.at(i, next_art) = 1.0;
      tab.set_basic(i, next_art++);
    } else {
      tab.set_basic(i, slack0 + i);
    }
  }

  LPResult result;
  if (artificial_count > 0) {
    // Phase 1: maximize -sum(artificials).
    for (std::size_t c = art0; c < cols; ++c) {
      tab.objective(c) = 1.0;
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (tab.basis()[i] >= art0) {
        for (std::size_t c = 0; c <= cols; ++c) {
          tab.objective(c) -= tab.at(i, c);
        }
      }
    }
    tab.optimize(cols);
    double scale = 1.0;
    for (const auto& row : problem.constraints) {
      scale = std::max(scale, std::abs(row.b));
    }
    if (tab.value() < -1e-9 * scale) {
      result.status = LPStatus::infeasible;
      return result;
    }
    // Pivot remaining zero-level artificials out where possible; rows that
    // cannot pivot are redundant and stay inert.
    for (std::size_t i = 0; i < r; ++i) {
      if (tab.basis()[i] < art0) {
        continue;
      }
      for (std::size_t c = 0; c < art0; ++c) {
        if (std::abs(tab.at(i, c)) > kPivotTol) {
          tab.pivot(i, c);
          break;
        }
      }
    }
  }

  // Phase 2 objective row.
  std::vector<double> cost(cols + 1, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    cost[j] = problem.objective[j];
    cost[d + j] = -problem.objective[j];
  }
  for (std::size_t c = 0; c <= cols; ++c) {
    double z = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      z += cost[tab.basis()[i]] * tab.at(i, c);
    }
    tab.objective(c) = z - (c < cols ? cost[c] : 0.0);
  }

  if (!tab.optimize(art0)) {
    result.status = LPStatus::unbounded;
    return result;
  }

  result.status = LPStatus::optimal;
  std::vector<double> split(2 * d, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    if (tab.basis()[i] < 2 * d) {
      split[tab.basis()[i]] = tab.rhs(i);
    }
  }
  result.argmax.resize(d);
  result.value = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    result.argmax[j] = split[j] - split[d + j];
    result.value += problem.objective[j] * result.argmax[j];
  }
  result.dual.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    result.dual[i] = tab.objective(slack0 + i);
  }
  return result;
}

}  // namespace lsqstab
