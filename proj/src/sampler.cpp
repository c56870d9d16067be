#include "lsqstab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "lsqstab/csv.hpp"
#include "lsqstab/errors.hpp"
#include "lsqstab/random.hpp"

namespace lsqstab {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::iid:
      return "iid";
    case Provenance::equidistributed:
      return "equidistributed";
    case Provenance::equispaced:
      return "equispaced";
    case Provenance::explicit_points:
      return "explicit";
  }
  return "unknown";
}

SampleSet from_points(std::vector<double> points) {
  for (double x : points) {
    if (!(std::abs(x) <= 1.0)) {
      throw DomainError("sample point outside [-1, 1]");
    }
  }
  SampleSet s;
  s.sorted = std::is_sorted(points.begin(), points.end());
  s.points = std::move(points);
  return s;
}

double cdf(const JacobiParams& params, double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("x outside [-1, 1]");
  }
  if (x == -1.0) {
    return 0.0;
  }
  if (x == 1.0) {
    return 1.0;
  }
  // Each half uses the argument that is exact in floating point.
  if (x <= 0.0) {
    return boost::math::ibeta(params.beta + 1.0, params.alpha + 1.0, 0.5 * (1.0 + x));
  }
  return boost::math::ibetac(params.alpha + 1.0, params.beta + 1.0, 0.5 * (1.0 - x));
}

SampleSet sample_iid(const JacobiParams& params, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  SampleSet s;
  s.provenance = Provenance::iid;
  s.seed = seed;
  s.points.resize(n);
  const double a = params.beta + 1.0;
  const double b = params.alpha + 1.0;
  // 2 X/(X+Y) - 1 written as (X-Y)/(X+Y), which keeps resolution near x = 1.
  for (double& x : s.points) {
    double g1 = 0.0;
    double g2 = 0.0;
    do {
      g1 = rng.gamma(a);
      g2 = rng.gamma(b);
    } while (!(g1 + g2 > 0.0));
    x = std::clamp((g1 - g2) / (g1 + g2), -1.0, 1.0);
  }
  s.sorted = n <= 1;
  return s;
}

SampleSet equidistributed(const JacobiParams& params, std::size_t n) {
  if (n < 2) {
    throw DomainError("equidistributed grid needs n >= 2");
  }
  SampleSet s;
  s.provenance = Provenance::equidistributed;
  s.sorted = true;
  s.points.resize(n);
  s.points.front() = -1.0;
  s.points.back() = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double target = static_cast<double>(i) / static_cast<double>(n - 1);
    double lo = -1.0;
    double hi = 1.0;
    double f_lo = 0.0;
    double f_hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) {
        break;
      }
      const double f = cdf(params, mid);
      if (f < target) {
        lo = mid;
        f_lo = f;
      } else {
        hi = mid;
        f_hi = f;
      }
    }
    s.points[i] = (target - f_lo) < (f_hi - target) ? lo : hi;
  }
  return s;
}

SampleSet equispaced(std::size_t n) {
  if (n < 2) {
    throw DomainError("equispaced grid needs n >= 2");
  }
  SampleSet s;
  s.provenance = Provenance::equispaced;
  s.sorted = true;
  s.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.points[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  s.points.back() = 1.0;
  return s;
}

SampleSet sort_samples(SampleSet s) {
  std::stable_sort(s.points.begin(), s.points.end());
  s.sorted = true;
  return s;
}

std::size_t distinct_count(const SampleSet& s) {
  std::vector<double> pts = s.points;
  std::sort(pts.begin(), pts.end());
  return static_cast<std::size_t>(std::unique(pts.begin(), pts.end()) - pts.begin());
}

OrderStatEvent orderstat_event(const SampleSet& sorted, const JacobiParams& params,
                               double big_c) {
  if (!sorted.sorted) {
    throw ContractError("order statistics require a sorted sample set");
  }
  if (!(big_c > 0.0)) {
    throw DomainError("C must be positive");
  }
  const double n = static_cast<double>(sorted.n());
  const double exponent = 1.0 / (1.0 + params.beta);
  OrderStatEvent ev;
  for (std::size_t k = 1; k <= sorted.n(); ++k) {
    const double threshold = std::pow(static_cast<double>(k) / (big_c * n), exponent) - 1.0;
    if (sorted.points[k - 1] < threshold) {
      ev.holds = false;
      ev.first_violation = k;
      break;
    }
  }
  return ev;
}

void write_samples(std::ostream& out, const SampleSet& s) {
  for (double x : s.points) {
    out << format_real(x) << '\n';
  }
}

SampleSet read_samples(std::istream& in) {
  std::vector<double> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(line, &used);
    } catch (const std::exception&) {
      throw IoError("line " + std::to_string(line_no) + ": not a number");
    }
    if (line.find_first_not_of(" \t\r", used) != std::string::npos) {
      throw IoError("line " + std::to_string(line_no) + ": trailing characters");
    }
    points.push_back(x);
  }
  return from_points(std::move(points));
}

}  // namespace lsqstab
