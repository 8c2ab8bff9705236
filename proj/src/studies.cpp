#include "capdisc/studies.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>

#include "capdisc/errors.hpp"

namespace capdisc {

RateStudyResult rate_study(const Space& space, GeneratorKind generator, const RadiusPQ& radius,
                           std::span<const int> n_list, std::uint64_t seed) {
  if (n_list.size() < 4) throw domain_error("rate_study: need at least 4 sizes");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw domain_error("rate_study: sizes must be strictly increasing");
  if (!space_radius_admissible(space, radius))
    std::cerr << "warning: radius " << radius.str() << " pi is not admissible on " << space.id()
              << "; the lower-bound guarantee does not apply\n";

  RateStudyResult result;
  result.space = space.id();
  result.generator = generator_name(generator);
  result.radius = radius;
  result.seed = seed;

  std::vector<double> log_n, log_value;
  for (const int n : n_list) {
    const PointSet set = generate(space, generator, n, seed);
    const DiscrepancyReport report =
        discrepancy_l2(space, set.points, set.weights, RadiusSpec::from_pq(radius));
    result.rows.push_back(RateStudyRow{n, report.value, report.truncation, report.tail_estimate});
    log_n.push_back(std::log(static_cast<double>(n)));
    log_value.push_back(std::log(report.value));
  }
  const auto [slope, intercept] = slope_fit(log_n, log_value);
  result.fitted_exponent = slope;
  result.fitted_intercept = intercept;
  return result;
}

ScanResult prime_scan(const Space& space, const PointSet& set, double ratio_margin, double c_h) {
  const int n = set.size();
  if (n < 3) throw domain_error("prime_scan: need at least 3 points");
  if (!(c_h > 0.0)) throw domain_error("prime_scan: scan constant must be positive");
  const SpaceParams sp = space.params();
  if (sp.d % 4 != 1)
    std::cerr << "warning: " << space.id() << " has d = " << sp.d
              << " != 1 (mod 4); the prime scan bound targets d = 1 (mod 4) spaces\n";

  const double log_n = std::log(static_cast<double>(n));
  const double log_log_n = std::log(log_n);
  const int h = static_cast<int>(std::ceil(c_h * log_n / log_log_n));

  ScanResult result;
  result.space = space.id();
  result.n_points = n;
  result.h = h;
  result.radii = prime_radius_sequence(ratio_margin, h);

  const int truncation = auto_truncation(space, n, result.radii.front().value());
  const PairGram gram = build_gram(space, set.points, set.weights);
  const std::vector<double> energies = harmonic_energy(space, gram, truncation);

  result.values.reserve(result.radii.size());
  for (std::size_t i = 0; i < result.radii.size(); ++i) {
    const DiscrepancyReport report = discrepancy_from_energies(
        space, energies, RadiusSpec::from_pq(result.radii[i]), n);
    result.values.push_back(report.value);
    if (result.values[i] > result.max_value || i == 0) {
      result.max_value = result.values[i];
      result.argmax = static_cast<int>(i) + 1;
    }
  }
  result.normalized_score = result.max_value *
                            std::pow(static_cast<double>(n), 1.0 + 1.0 / sp.d) *
                            std::pow(log_n, 4.0) / log_log_n;
  return result;
}

JacobiScanResult jacobadly_scan(double alpha, double beta, const RadiusPQ& radius, int m_min,
                                int m_max) {
  if (!(m_max > m_min && m_min >= 1))
    throw domain_error("jacobadly_scan: require 1 <= m_min < m_max");
  const std::vector<double> values =
      specfun::jacobi_eval(specfun::JacobiParams(alpha, beta), m_max, std::cos(radius.value()));
  JacobiScanResult result;
  result.min_scaled = std::numeric_limits<double>::infinity();
  for (int m = m_min; m <= m_max; ++m) {
    const double scaled = std::sqrt(static_cast<double>(m)) *
                          std::abs(values[static_cast<std::size_t>(m)]);
    if (scaled < result.min_scaled) {
      result.min_scaled = scaled;
      result.argmin = m;
    }
  }
  return result;
}

ScaleScanResult coefficient_scale_scan(const Space& space, const RadiusPQ& radius, int m_min,
                                       int m_max) {
  if (!(m_max > m_min && m_min >= 1))
    throw domain_error("coefficient_scale_scan: require 1 <= m_min < m_max");
  const SpaceParams sp = space.params();
  const std::vector<double> phi = ball_coefficients(space, m_max, radius.value());
  ScaleScanResult result;
  result.min_scaled = std::numeric_limits<double>::infinity();
  result.max_scaled = 0.0;
  for (int m = m_min; m <= m_max; ++m) {
    const double scaled = std::pow(static_cast<double>(m), sp.a + 1.5) *
                          std::abs(phi[static_cast<std::size_t>(m - 1)]);
    if (scaled < result.min_scaled) {
      result.min_scaled = scaled;
      result.argmin = m;
    }
    result.max_scaled = std::max(result.max_scaled, scaled);
  }
  return result;
}

std::pair<double, double> slope_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw domain_error("slope_fit: need matching xs/ys with at least 2 points");
  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  if (sxx == 0.0) throw domain_error("slope_fit: degenerate abscissae");
  const double slope = sxy / sxx;
  return {slope, mean_y - slope * mean_x};
}

std::string rate_study_csv(const RateStudyResult& result) {
  std::string csv = "N,value,L,tail,seed\n";
  char line[160];
  for (const RateStudyRow& row : result.rows) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%d,%.17g,%llu\n", row.n, row.value,
                  row.truncation, row.tail, static_cast<unsigned long long>(result.seed));
    csv += line;
  }
  return csv;
}

}  // namespace capdisc
