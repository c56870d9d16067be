#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lsqstab/bounds.hpp"
#include "lsqstab/jacobi_basis.hpp"

namespace lsqstab {

/// Trial count of the published stability maps.
inline constexpr std::size_t kDefaultTrials = 100;

struct ExperimentConfig {
  JacobiParams params;
  std::vector<int> m_values;
  /// Sample sizes; ignored by experiments that derive n from a rate rule.
  std::vector<std::size_t> n_values;
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = 1;
  std::string out_path;  ///< empty: stdout
};

/// Throws DomainError for empty ranges, negative degrees or zero trials.
void validate(const ExperimentConfig& config, bool needs_n_values = true);

// ---------------------------------------------------------------------------
// Stability map

struct StabilityRecord {
  double alpha = 0.0;
  double beta = 0.0;
  int m = 0;
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_kappa = 1.0;        ///< mean of clamped kappa over trials
  double mean_log10_kappa = 0.0;  ///< mean of log10 kappa over trials
  double clamped_fraction = 0.0;
};

/// One (m, n) cell: `trials` i.i.d. samplings with seeds
/// derive_seed(master_seed, m, n, trial).
StabilityRecord stability_cell(const OrthonormalBasis& basis, std::size_t n,
                               std::size_t trials, std::uint64_t master_seed);

/// Every cell with m < n, in (m, n) ascending order. Cells run in parallel.
std::vector<StabilityRecord> stability_map(const ExperimentConfig& config);

void write_stability_csv(std::ostream& out, const std::vector<StabilityRecord>& rows);

// ---------------------------------------------------------------------------
// Order statistics

struct OrderStatProbability {
  double estimate = 0.0;  ///< Monte Carlo frequency of the event
  double bound = 0.0;     ///< 1 - 2 e^2 cbar1 / C
  std::size_t trials = 0;
};

/// Throws DomainError unless C > 2 e^2 cbar1.
OrderStatProbability orderstat_probability(const JacobiParams& params, std::size_t n,
                                           double big_c, std::size_t trials,
                                           std::uint64_t seed);

// ---------------------------------------------------------------------------
// Convergence

using TargetFunction = std::function<double(double)>;

/// Named targets: runge = 1/(1+25x^2), abs = |x|, cheb3 = 4x^3 - 3x, exp = e^x.
/// Throws DomainError for unknown names.
TargetFunction target_function(const std::string& name);

/// n = round(theta m^{1/tau}), raised to m+1 when smaller so the fit is
/// determined.
std::size_t rate_rule_n(int m, double tau, double theta);

struct ConvergenceRow {
  double alpha = 0.0;
  double beta = 0.0;
  double tau = 0.0;
  double theta = 0.0;
  int m = 0;
  std::size_t n = 0;
  double median_sup_error = 0.0;
};

/// For each m: least-squares fits on `trials` i.i.d. samplings of size
/// rate_rule_n(m, tau, theta); sup error on a 2001-point equispaced grid;
/// median over trials.
std::vector<ConvergenceRow> convergence_experiment(const ExperimentConfig& config,
                                                   const TargetFunction& f, double tau,
                                                   double theta);

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

// ---------------------------------------------------------------------------
// Sufficient sampling condition

struct CohenResult {
  std::size_t n_star = 0;
  double iota = 0.0;
  double christoffel = 0.0;  ///< K(m+1)
  double empirical_prob = 0.0;
  double target_prob = 0.0;
  std::size_t trials = 0;
};

/// Frequency of |||G - I||| <= 1/2 at n = cohen_threshold(m, r).
CohenResult cohen_sufficiency_experiment(const JacobiParams& params, int m, double r,
                                         std::size_t trials, std::uint64_t seed);

/// Same frequency at an explicit n.
double identity_proximity_frequency(const JacobiParams& params, int m, std::size_t n,
                                    std::size_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Witness against oracle

struct WitnessSweepConfig {
  ExperimentConfig base;        ///< trials = samplings per (m, n)
  double big_c = 0.0;           ///< <= 0: default_big_c(params)
  std::size_t grid_size = 128;  ///< oracle grid, raised to 8m when smaller
};

struct WitnessRow {
  int m = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;  ///< seed passed to sample_iid
  WitnessResult witness;
  std::optional<double> b_exact;  ///< empty when m exceeds the oracle cap
  bool oracle_skipped = false;
};

std::vector<WitnessRow> witness_vs_oracle(const WitnessSweepConfig& config);

void write_witness_csv(std::ostream& out, const std::vector<WitnessRow>& rows);

// ---------------------------------------------------------------------------

/// Median (mean of the middle pair for even sizes). Empty input gives NaN.
double median(std::vector<double> values);

}  // namespace lsqstab
