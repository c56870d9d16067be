#include "lsqstab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "lsqstab/conditioning.hpp"
#include "lsqstab/csv.hpp"
#include "lsqstab/errors.hpp"
#include "lsqstab/oracle.hpp"
#include "lsqstab/parallel.hpp"
#include "lsqstab/random.hpp"
#include "lsqstab/sampler.hpp"

namespace lsqstab {

void validate(const ExperimentConfig& config, bool needs_n_values) {
  if (config.m_values.empty()) {
    throw DomainError("degree range is empty");
  }
  if (needs_n_values && config.n_values.empty()) {
    throw DomainError("sample-size range is empty");
  }
  if (config.trials == 0) {
    throw DomainError("trials must be at least 1");
  }
  for (int m : config.m_values) {
    if (m < 0) {
      throw DomainError("degrees must be non-negative");
    }
  }
}

double median(std::vector<double> values) {
  if (values.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) {
    return values[mid];
  }
  return 0.5 * (values[mid - 1] + values[mid]);
}

// ---------------------------------------------------------------------------

StabilityRecord stability_cell(const OrthonormalBasis& basis, std::size_t n,
                               std::size_t trials, std::uint64_t master_seed) {
  const JacobiParams& p = basis.params();
  const auto m = static_cast<std::uint64_t>(basis.degree());
  StabilityRecord rec;
  rec.alpha = p.alpha;
  rec.beta = p.beta;
  rec.m = basis.degree();
  rec.n = n;
  rec.trials = trials;

  double sum_kappa = 0.0;
  double sum_log = 0.0;
  std::size_t clamped = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampleSet s = sample_iid(p, n, derive_seed(master_seed, m, n, t));
    const Conditioning c = condition_number(basis, s);
    sum_kappa += c.kappa;
    sum_log += std::log10(c.kappa);
    clamped += c.clamped ? 1 : 0;
  }
  const double td = static_cast<double>(trials);
  rec.mean_kappa = sum_kappa / td;
  rec.mean_log10_kappa = sum_log / td;
  rec.clamped_fraction = static_cast<double>(clamped) / td;
  return rec;
}

std::vector<StabilityRecord> stability_map(const ExperimentConfig& config) {
  validate(config);
  std::vector<int> ms = config.m_values;
  std::vector<std::size_t> ns = config.n_values;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  std::vector<OrthonormalBasis> bases;
  bases.reserve(ms.size());
  for (int m : ms) {
    bases.emplace_back(config.params, m);
  }

  struct Cell {
    std::size_t basis_index;
    std::size_t n;
  };
  std::vector<Cell> cells;
  for (std::size_t bi = 0; bi < ms.size(); ++bi) {
    for (std::size_t n : ns) {
      if (static_cast<std::size_t>(ms[bi]) < n) {
        cells.push_back({bi, n});
      }
    }
  }

  std::vector<StabilityRecord> rows(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    rows[i] = stability_cell(bases[cells[i].basis_index], cells[i].n, config.trials,
                             config.seed);
  });
  return rows;
}

void write_stability_csv(std::ostream& out, const std::vector<StabilityRecord>& rows) {
  out << "alpha,beta,m,n,trials,mean_kappa,mean_log10_kappa,clamped_fraction\n";
  for (const auto& r : rows) {
    out << CsvRow()
               .add(r.alpha)
               .add(r.beta)
               .add(r.m)
               .add(r.n)
               .add(r.trials)
               .add(r.mean_kappa)
               .add(r.mean_log10_kappa)
               .add(r.clamped_fraction)
               .str()
        << '\n';
  }
}

// ---------------------------------------------------------------------------

OrderStatProbability orderstat_probability(const JacobiParams& params, std::size_t n,
                                           double big_c, std::size_t trials,
                                           std::uint64_t seed) {
  OrderStatProbability res;
  res.bound = orderstat_probability_bound(params, big_c);
  res.trials = trials;
  if (trials == 0) {
    throw DomainError("trials must be at least 1");
  }
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampleSet s = sort_samples(sample_iid(params, n, derive_seed(seed, 0, n, t)));
    hits += orderstat_event(s, params, big_c).holds ? 1 : 0;
  }
  res.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  return res;
}

// ---------------------------------------------------------------------------

TargetFunction target_function(const std::string& name) {
  if (name == "runge") {
    return [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
  }
  if (name == "abs") {
    return [](double x) { return std::abs(x); };
  }
  if (name == "cheb3") {
    return [](double x) { return 4.0 * x * x * x - 3.0 * x; };
  }
  if (name == "exp") {
    return [](double x) { return std::exp(x); };
  }
  throw DomainError("unknown target function '" + name + "'");
}

std::size_t rate_rule_n(int m, double tau, double theta) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw DomainError("tau must lie in (0, 1]");
  }
  if (!(theta > 0.0)) {
    throw DomainError("theta must be positive");
  }
  const double n = std::round(theta * std::pow(static_cast<double>(m), 1.0 / tau));
  return std::max(static_cast<std::size_t>(n), static_cast<std::size_t>(m) + 1);
}

std::vector<ConvergenceRow> convergence_experiment(const ExperimentConfig& config,
                                                   const TargetFunction& f, double tau,
                                                   double theta) {
  validate(config, false);
  constexpr std::size_t kEvalPoints = 2001;
  std::vector<double> eval_x(kEvalPoints);
  std::vector<double> eval_f(kEvalPoints);
  for (std::size_t i = 0; i < kEvalPoints; ++i) {
    eval_x[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(kEvalPoints - 1);
    eval_f[i] = f(eval_x[i]);
  }

  std::vector<ConvergenceRow> rows(config.m_values.size());
  parallel_for(rows.size(), [&](std::size_t idx) {
    const int m = config.m_values[idx];
    const std::size_t n = rate_rule_n(m, tau, theta);
    const OrthonormalBasis basis(config.params, m);
    std::vector<double> errors;
    errors.reserve(config.trials);
    std::vector<double> l(static_cast<std::size_t>(basis.size()));
    for (std::size_t t = 0; t < config.trials; ++t) {
      const SampleSet s = sample_iid(config.params, n,
                                     derive_seed(config.seed, static_cast<std::uint64_t>(m), n, t));
      std::vector<double> values(n);
      for (std::size_t i = 0; i < n; ++i) {
        values[i] = f(s.points[i]);
      }
      const std::vector<double> u = least_squares_fit(basis, s, values);
      double err = 0.0;
      for (std::size_t i = 0; i < kEvalPoints; ++i) {
        basis.eval_into(eval_x[i], l);
        double fit = 0.0;
        for (std::size_t j = 0; j < l.size(); ++j) {
          fit += u[j] * l[j];
        }
        err = std::max(err, std::abs(fit - eval_f[i]));
      }
      errors.push_back(err);
    }
    rows[idx] = {config.params.alpha, config.params.beta, tau, theta, m, n,
                 median(std::move(errors))};
  });
  return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "alpha,beta,tau,theta,m,n,median_sup_error\n";
  for (const auto& r : rows) {
    out << CsvRow()
               .add(r.alpha)
               .add(r.beta)
               .add(r.tau)
               .add(r.theta)
               .add(r.m)
               .add(r.n)
               .add(r.median_sup_error)
               .str()
        << '\n';
  }
}

// ---------------------------------------------------------------------------

double identity_proximity_frequency(const JacobiParams& params, int m, std::size_t n,
                                    std::size_t trials, std::uint64_t seed) {
  if (trials == 0) {
    throw DomainError("trials must be at least 1");
  }
  const OrthonormalBasis basis(params, m);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampleSet s =
        sample_iid(params, n, derive_seed(seed, static_cast<std::uint64_t>(m), n, t));
    hits += spectral_distance_to_identity(gram(basis, s)) <= 0.5 ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

CohenResult cohen_sufficiency_experiment(const JacobiParams& params, int m, double r,
                                         std::size_t trials, std::uint64_t seed) {
  const OrthonormalBasis basis(params, m);
  CohenResult res;
  res.iota = iota(r);
  res.christoffel = christoffel_K(basis);
  res.n_star = cohen_threshold(basis, r);
  res.trials = trials;
  res.empirical_prob = identity_proximity_frequency(params, m, res.n_star, trials, seed);
  res.target_prob = cohen_target_probability(res.n_star, r);
  return res;
}

// ---------------------------------------------------------------------------

std::vector<WitnessRow> witness_vs_oracle(const WitnessSweepConfig& config) {
  validate(config.base);
  const JacobiParams& params = config.base.params;
  const double big_c = config.big_c > 0.0 ? config.big_c : default_big_c(params);

  std::vector<WitnessRow> rows;
  for (int m : config.base.m_values) {
    for (std::size_t n : config.base.n_values) {
      if (m < 1 || static_cast<std::size_t>(m) >= n) {
        continue;
      }
      for (std::size_t t = 0; t < config.base.trials; ++t) {
        WitnessRow row;
        row.m = m;
        row.n = n;
        row.seed = derive_seed(config.base.seed, static_cast<std::uint64_t>(m), n, t);
        rows.push_back(row);
      }
    }
  }

  parallel_for(rows.size(), [&](std::size_t i) {
    WitnessRow& row = rows[i];
    const SampleSet s = sort_samples(sample_iid(params, row.n, row.seed));
    row.witness = witness_lower_bound(s, row.m, params, big_c);
    if (row.m > kOracleMaxDegree) {
      row.oracle_skipped = true;
      return;
    }
    const std::size_t grid =
        std::max(config.grid_size, 8 * static_cast<std::size_t>(row.m));
    row.b_exact = b_exact(s, row.m, grid);
  });
  return rows;
}

void write_witness_csv(std::ostream& out, const std::vector<WitnessRow>& rows) {
  out << "m,n,seed,case,lambda,witness_bound,b_exact,event_holds\n";
  for (const auto& r : rows) {
    CsvRow row;
    row.add(r.m)
        .add(r.n)
        .add(r.seed)
        .add(r.witness.witness_case == WitnessCase::I ? "I" : "II")
        .add(r.witness.lambda)
        .add(r.witness.bound);
    if (r.b_exact) {
      row.add(*r.b_exact);
    } else {
      row.add_empty();
    }
    row.add(r.witness.event_holds);
    out << row.str() << '\n';
  }
}

}  // namespace lsqstab
