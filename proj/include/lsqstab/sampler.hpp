#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lsqstab/jacobi_basis.hpp"

namespace lsqstab {

enum class Provenance { iid, equidistributed, equispaced, explicit_points };

std::string to_string(Provenance p);

/// Points in [-1, 1]. `seed` is meaningful only for Provenance::iid.
struct SampleSet {
  std::vector<double> points;
  Provenance provenance = Provenance::explicit_points;
  std::uint64_t seed = 0;
  bool sorted = false;

  std::size_t n() const noexcept { return points.size(); }
};

/// Wraps caller-supplied points. Throws DomainError for points outside
/// [-1, 1] or non-finite values.
SampleSet from_points(std::vector<double> points);

/// F(x) = I_{(1+x)/2}(beta+1, alpha+1).
double cdf(const JacobiParams& params, double x);

/// n i.i.d. draws x = 2t - 1, t ~ Beta(beta+1, alpha+1), using Rng(seed).
/// With X ~ gamma(beta+1) and Y ~ gamma(alpha+1) drawn in that order,
/// x = (X - Y) / (X + Y).
SampleSet sample_iid(const JacobiParams& params, std::size_t n, std::uint64_t seed);

/// Solutions of F(x_i) = (i-1)/(n-1), by bisection to full double resolution;
/// x_1 = -1 and x_n = 1 exactly. Returned sorted.
SampleSet equidistributed(const JacobiParams& params, std::size_t n);

/// x_i = -1 + 2(i-1)/(n-1). Returned sorted.
SampleSet equispaced(std::size_t n);

/// Stable nondecreasing copy.
SampleSet sort_samples(SampleSet s);

/// Number of distinct values among the points.
std::size_t distinct_count(const SampleSet& s);

struct OrderStatEvent {
  bool holds = true;
  /// Smallest 1-based k with x_(k) < (k/(Cn))^{1/(1+beta)} - 1.
  std::optional<std::size_t> first_violation;
};

/// Checks x_(k) >= (k/(Cn))^{1/(1+beta)} - 1 for k = 1..n.
/// Throws ContractError for unsorted input, DomainError for C <= 0.
OrderStatEvent orderstat_event(const SampleSet& sorted, const JacobiParams& params,
                               double big_c);

/// One point per line, 17 significant digits.
void write_samples(std::ostream& out, const SampleSet& s);

/// Inverse of write_samples; blank lines are skipped. The result carries
/// Provenance::explicit_points and is marked sorted if the points are.
SampleSet read_samples(std::istream& in);

}  // namespace lsqstab
