#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "capdisc/admissibility.hpp"
#include "capdisc/pointsets.hpp"
#include "capdisc/spaces.hpp"
#include "capdisc/spectral.hpp"

namespace capdisc {

struct RateStudyRow {
  int n;
  double value;
  int truncation;
  double tail;
};

struct RateStudyResult {
  std::vector<RateStudyRow> rows;
  double fitted_exponent = 0.0;
  double fitted_intercept = 0.0;
  std::string space;
  std::string generator;
  RadiusPQ radius{1, 2};
  std::uint64_t seed = 0;
};

/// Spectral discrepancy of generated sets across the sizes in n_list
/// (strictly increasing, at least 4 entries), and the least-squares slope of
/// log value against log N. Warns on an inadmissible radius but still runs;
/// the values are well-defined either way.
RateStudyResult rate_study(const Space& space, GeneratorKind generator, const RadiusPQ& radius,
                           std::span<const int> n_list, std::uint64_t seed);

struct ScanResult {
  std::vector<RadiusPQ> radii;
  std::vector<double> values;
  int argmax = 0;         // 1-based index n* into radii
  double max_value = 0.0;
  double normalized_score = 0.0;  // max * N^{1+1/d} * log^4 N / log log N
  int h = 0;
  std::string space;
  int n_points = 0;
};

/// Scans the H = ceil(c_h log N / log log N) prime radii p_n pi / q_n and
/// reports the largest discrepancy with its normalized score. The harmonic
/// energies are computed once and shared across radii. Intended for
/// d = 1 (mod 4) spaces; warns but still runs elsewhere.
ScanResult prime_scan(const Space& space, const PointSet& set, double ratio_margin = 1.0 / 3.0,
                      double c_h = 3.0);

struct JacobiScanResult {
  double min_scaled = 0.0;  // min over m of sqrt(m) |P_m^{alpha,beta}(cos p pi / q)|
  int argmin = 0;
};

JacobiScanResult jacobadly_scan(double alpha, double beta, const RadiusPQ& radius, int m_min,
                                int m_max);

struct ScaleScanResult {
  double min_scaled = 0.0;  // extremes of m^{a+3/2} |phi_m(r)|
  double max_scaled = 0.0;
  int argmin = 0;
};

ScaleScanResult coefficient_scale_scan(const Space& space, const RadiusPQ& radius, int m_min,
                                       int m_max);

/// Ordinary least squares fit: returns (slope, intercept).
std::pair<double, double> slope_fit(std::span<const double> xs, std::span<const double> ys);

/// CSV body with header "N,value,L,tail,seed".
std::string rate_study_csv(const RateStudyResult& result);

}  // namespace capdisc
