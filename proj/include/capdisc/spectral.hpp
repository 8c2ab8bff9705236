#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capdisc/admissibility.hpp"
#include "capdisc/spaces.hpp"

namespace capdisc {

/// Pairwise cosine-distance matrix of a weighted point set, stored as tiles
/// of the upper triangle. Each tile keeps two flat arrays: the entries
/// t_{jk} = cos rho(x_j, x_k) and the summation weights a_j a_k (doubled
/// strictly off the diagonal), which is everything the energy kernel needs.
struct PairGram {
  struct Tile {
    int row0, col0;   // block origin (point indices)
    int rows, cols;
    bool diagonal;    // row block == col block; only j <= k entries stored
    Eigen::ArrayXd t;
    Eigen::ArrayXd w;
  };

  int n = 0;
  int tile_size = 0;
  Eigen::ArrayXd weights;  // a_j, positive, sum 1
  std::vector<Tile> tiles;

  /// Cosine distance entry (symmetric); for tests and diagnostics.
  double entry(int j, int k) const;
};

/// Builds the tiled gram matrix. Empty weights mean equal weights.
PairGram build_gram(const Space& space, std::span<const Point> points,
                    std::span<const double> weights = {}, int tile_size = 1024);

struct SeriesTerm {
  int m;
  double q_m;    // harmonic energy, >= 0
  double phi_m;  // normalized ball coefficient
  double term;   // q_m * phi_m^2
};

struct RadiusSpec {
  std::optional<RadiusPQ> exact;
  double value = 0.0;
  static RadiusSpec from_pq(const RadiusPQ& pq) { return RadiusSpec{pq, pq.value()}; }
  static RadiusSpec from_real(double r) { return RadiusSpec{std::nullopt, r}; }
};

struct DiscrepancyReport {
  std::string space;
  RadiusSpec radius;
  int truncation = 0;
  double value = 0.0;
  double tail_estimate = 0.0;
  int n_points = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<SeriesTerm>> terms;
  double elapsed_seconds = 0.0;  // run metadata; never serialized into the report body
};

/// phi_m(r) = d_m^{-1} int_{B_r} Z_o^m dmu, by the closed form
///   c(a,b) / (m P_m^{a,b}(1)) * P_{m-1}^{a+1,b+1}(cos r)
///     * (sin r/2)^{2a+2} (cos r/2)^{2b+2},   m >= 1.
double ball_coefficient(const Space& space, int m, double r);
/// Batch variant for m = 1..m_max off a single Jacobi prefix at cos r;
/// result[m-1] = phi_m(r).
std::vector<double> ball_coefficients(const Space& space, int m_max, double r);

/// Harmonic energies q_m = sum_l |sum_j a_j Y_m^l(x_j)|^2 for m = 1..m_max
/// (result[m-1] = q_m), computed by the addition theorem as
///   q_m = (d_m / P_m^{a,b}(1)) sum_{j,k} a_j a_k P_m^{a,b}(t_{jk}).
/// One recurrence pass per tile covers all degrees; the reduction tree is
/// fixed by tile indices, so results do not depend on the thread count.
std::vector<double> harmonic_energy(const Space& space, const PairGram& gram, int m_max);

/// sum_{m=M}^{L} q_m, with q_0 = 1 included when M = 0.
double cm_sum(const Space& space, const PairGram& gram, int big_m, int big_l);

/// Truncation heuristic max(512, ceil(kappa * n^{1/d} * 32)), capped at
/// 50000. The radius does not enter; it is accepted so call sites can
/// record the full request.
int auto_truncation(const Space& space, int n_points, double radius, double kappa = 1.0);

/// Truncated spectral series sum_{m=1}^{L} q_m phi_m(r)^2 of the exact
/// L2 ball discrepancy, with a kappa/L tail estimate (reported, never added
/// to the value).
DiscrepancyReport discrepancy_l2(const Space& space, std::span<const Point> points,
                                 std::span<const double> weights, const RadiusSpec& radius,
                                 std::optional<int> truncation = std::nullopt,
                                 bool with_terms = false);

/// Same series evaluated from precomputed energies; lets radius scans reuse
/// one gram pass.
DiscrepancyReport discrepancy_from_energies(const Space& space, std::span<const double> energies,
                                            const RadiusSpec& radius, int n_points,
                                            bool with_terms = false);

/// Deterministic pairwise (binary-tree) sum in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace capdisc
