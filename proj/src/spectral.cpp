#include "capdisc/spectral.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "capdisc/errors.hpp"
#include "capdisc/threads.hpp"

namespace capdisc {

namespace {

constexpr double kPi = std::numbers::pi;

// Entries per recurrence chunk. Four live arrays per chunk stay inside L2,
// so every degree pass after the first runs out of cache.
constexpr int kChunk = 8192;

int upper_tri_count(int k) { return k * (k + 1) / 2; }

}  // namespace

double PairGram::entry(int j, int k) const {
  if (j < 0 || k < 0 || j >= n || k >= n) throw domain_error("PairGram::entry: index out of range");
  if (j > k) std::swap(j, k);
  const int bi = j / tile_size;
  const int bj = k / tile_size;
  for (const Tile& tile : tiles) {
    if (tile.row0 != bi * tile_size || tile.col0 != bj * tile_size) continue;
    const int i = j - tile.row0;
    const int c = k - tile.col0;
    if (tile.diagonal) {
      const int start = i * tile.rows - i * (i - 1) / 2;
      return tile.t[start + (c - i)];
    }
    return tile.t[i * tile.cols + c];
  }
  throw domain_error("PairGram::entry: tile not found");
}

PairGram build_gram(const Space& space, std::span<const Point> points,
                    std::span<const double> weights, int tile_size) {
  if (points.empty()) throw domain_error("build_gram: need at least one point");
  if (tile_size < 1) throw domain_error("build_gram: tile_size must be >= 1");
  if (!space.supports_points())
    throw domain_error("build_gram: point operations are unsupported on " + space.id());
  const int n = static_cast<int>(points.size());

  Eigen::ArrayXd a(n);
  if (weights.empty()) {
    a.setConstant(1.0 / n);
  } else {
    if (static_cast<int>(weights.size()) != n)
      throw domain_error("build_gram: weights length does not match point count");
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!(weights[j] > 0.0)) throw domain_error("build_gram: weights must be positive");
      a[j] = weights[j];
      sum += weights[j];
    }
    if (std::abs(sum - 1.0) > 1e-6)
      throw domain_error("build_gram: weights sum deviates from 1 beyond 1e-6");
    a /= sum;
  }

  PairGram gram;
  gram.n = n;
  gram.tile_size = tile_size;
  gram.weights = a;

  const int blocks = (n + tile_size - 1) / tile_size;
  for (int bi = 0; bi < blocks; ++bi)
    for (int bj = bi; bj < blocks; ++bj) {
      PairGram::Tile tile;
      tile.row0 = bi * tile_size;
      tile.col0 = bj * tile_size;
      tile.rows = std::min(tile_size, n - tile.row0);
      tile.cols = std::min(tile_size, n - tile.col0);
      tile.diagonal = bi == bj;
      const int count = tile.diagonal ? upper_tri_count(tile.rows) : tile.rows * tile.cols;
      tile.t.resize(count);
      tile.w.resize(count);
      gram.tiles.push_back(std::move(tile));
    }

  parallel_for(static_cast<int>(gram.tiles.size()), [&](int idx) {
    PairGram::Tile& tile = gram.tiles[static_cast<std::size_t>(idx)];
    int pos = 0;
    for (int i = 0; i < tile.rows; ++i) {
      const int j = tile.row0 + i;
      const int c0 = tile.diagonal ? i : 0;
      for (int c = c0; c < tile.cols; ++c) {
        const int k = tile.col0 + c;
        tile.t[pos] = j == k ? 1.0 : cos_distance(space, points[j], points[k]);
        tile.w[pos] = a[j] * a[k] * (j == k ? 1.0 : 2.0);
        ++pos;
      }
    }
  });
  return gram;
}

double ball_coefficient(const Space& space, int m, double r) {
  if (m < 1) throw domain_error("ball_coefficient: the series starts at m = 1");
  return ball_coefficients(space, m, r)[static_cast<std::size_t>(m - 1)];
}

std::vector<double> ball_coefficients(const Space& space, int m_max, double r) {
  if (m_max < 1) throw domain_error("ball_coefficients: the series starts at m = 1");
  if (!(r >= 0.0 && r <= kPi))
    throw domain_error("ball_coefficients: r must lie in [0, pi], got " + std::to_string(r));
  const SpaceParams sp = space.params();
  const double sin_half = std::sin(0.5 * r);
  const double cos_half = std::cos(0.5 * r);
  const double geometry = specfun::c_ab(sp.a, sp.b) *
                          std::pow(sin_half, 2.0 * sp.a + 2.0) *
                          std::pow(cos_half, 2.0 * sp.b + 2.0);
  const std::vector<double> shifted =
      specfun::jacobi_eval(specfun::JacobiParams(sp.a + 1.0, sp.b + 1.0), m_max - 1, std::cos(r));
  const std::vector<double> at_one =
      specfun::jacobi_at_one_prefix(specfun::JacobiParams(sp.a, sp.b), m_max);

  std::vector<double> phi(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m)
    phi[static_cast<std::size_t>(m - 1)] =
        geometry / (m * at_one[static_cast<std::size_t>(m)]) *
        shifted[static_cast<std::size_t>(m - 1)];
  return phi;
}

namespace {

// Per-tile accumulation of s_m = sum_entries w * P_m(t) for m = 1..m_max.
void accumulate_tile(const PairGram::Tile& tile, const specfun::JacobiRecurrence& rec,
                     std::vector<double>& acc) {
  const int m_max = rec.m_max();
  const Eigen::Index total = tile.t.size();
  Eigen::ArrayXd buf_a(std::min<Eigen::Index>(total, kChunk));
  Eigen::ArrayXd buf_b(buf_a.size());
  for (Eigen::Index start = 0; start < total; start += kChunk) {
    const Eigen::Index len = std::min<Eigen::Index>(kChunk, total - start);
    const auto x = tile.t.segment(start, len);
    const auto w = tile.w.segment(start, len);
    double* prev_ptr = buf_a.data();  // P_{m-2}
    double* curr_ptr = buf_b.data();  // P_{m-1}
    {
      Eigen::Map<Eigen::ArrayXd> p0(prev_ptr, len);
      Eigen::Map<Eigen::ArrayXd> p1(curr_ptr, len);
      p0.setOnes();
      p1 = (rec.params().alpha + 1.0) +
           (rec.params().alpha + rec.params().beta + 2.0) * 0.5 * (x - 1.0);
      acc[0] += (w * p1).sum();
    }
    for (int m = 2; m <= m_max; ++m) {
      Eigen::Map<Eigen::ArrayXd> p0(prev_ptr, len);
      Eigen::Map<const Eigen::ArrayXd> p1(curr_ptr, len);
      // Coefficientwise, so writing P_m over P_{m-2} is alias-safe.
      p0 = (rec.cx(m) * x + rec.c0(m)) * p1 + rec.cp(m) * p0;
      std::swap(prev_ptr, curr_ptr);
      acc[static_cast<std::size_t>(m - 1)] +=
          (w * Eigen::Map<const Eigen::ArrayXd>(curr_ptr, len)).sum();
    }
  }
}

}  // namespace

std::vector<double> harmonic_energy(const Space& space, const PairGram& gram, int m_max) {
  if (m_max < 1) throw domain_error("harmonic_energy: m_max must be >= 1");
  const SpaceParams sp = space.params();
  const specfun::JacobiRecurrence rec(specfun::JacobiParams(sp.a, sp.b), m_max);
  const std::vector<double> dims = specfun::eigenspace_dim_prefix(sp.a, sp.b, m_max);
  const std::vector<double> at_one =
      specfun::jacobi_at_one_prefix(specfun::JacobiParams(sp.a, sp.b), m_max);

  std::vector<double> ratio(static_cast<std::size_t>(m_max) + 1, 0.0);
  for (int m = 1; m <= m_max; ++m) {
    const double value = dims[static_cast<std::size_t>(m)] / at_one[static_cast<std::size_t>(m)];
    if (!std::isfinite(value))
      throw numeric_error("harmonic_energy: d_m / P_m(1) overflows binary64 at m = " +
                          std::to_string(m));
    ratio[static_cast<std::size_t>(m)] = value;
  }

  const int n_tiles = static_cast<int>(gram.tiles.size());
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(n_tiles));
  parallel_for(n_tiles, [&](int idx) {
    std::vector<double> acc(static_cast<std::size_t>(m_max), 0.0);
    accumulate_tile(gram.tiles[static_cast<std::size_t>(idx)], rec, acc);
    partial[static_cast<std::size_t>(idx)] = std::move(acc);
  });

  // Pairwise combine in tile-index order; the tree shape depends only on the
  // tile count, never on the thread count.
  for (int width = 1; width < n_tiles; width *= 2)
    for (int i = 0; i + width < n_tiles; i += 2 * width) {
      auto& dst = partial[static_cast<std::size_t>(i)];
      const auto& src = partial[static_cast<std::size_t>(i + width)];
      for (std::size_t m = 0; m < dst.size(); ++m) dst[m] += src[m];
    }

  std::vector<double> energies = std::move(partial[0]);
  for (int m = 1; m <= m_max; ++m) {
    double& q = energies[static_cast<std::size_t>(m - 1)];
    q *= ratio[static_cast<std::size_t>(m)];
    if (q < 0.0) q = 0.0;  // roundoff allowance, recorded as exact zero
  }
  return energies;
}

double cm_sum(const Space& space, const PairGram& gram, int big_m, int big_l) {
  if (big_m < 0 || big_l < big_m) throw domain_error("cm_sum: require 0 <= M <= L");
  double total = big_m == 0 ? 1.0 : 0.0;  // q_0 = (sum_j a_j)^2 = 1
  if (big_l >= 1) {
    const std::vector<double> energies = harmonic_energy(space, gram, big_l);
    for (int m = std::max(1, big_m); m <= big_l; ++m)
      total += energies[static_cast<std::size_t>(m - 1)];
  }
  return total;
}

int auto_truncation(const Space& space, int n_points, double /*radius*/, double kappa) {
  if (n_points < 1) throw domain_error("auto_truncation: n_points must be >= 1");
  const int d = space.params().d;
  const double scaled = kappa * std::pow(static_cast<double>(n_points), 1.0 / d) * 32.0;
  const int level = std::max(512, static_cast<int>(std::ceil(scaled)));
  return std::min(level, 50000);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double total = 0.0;
    for (const double v : values) total += v;
    return total;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

DiscrepancyReport assemble_report(const Space& space, std::span<const double> energies,
                                  const RadiusSpec& radius, int n_points, bool with_terms) {
  const int m_max = static_cast<int>(energies.size());
  const std::vector<double> phi = ball_coefficients(space, m_max, radius.value);

  std::vector<double> terms(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m) {
    const std::size_t i = static_cast<std::size_t>(m - 1);
    terms[i] = energies[i] * phi[i] * phi[i];
  }

  DiscrepancyReport report;
  report.space = space.id();
  report.radius = radius;
  report.truncation = m_max;
  report.n_points = n_points;
  report.value = pairwise_sum(terms);

  // Tail model: |phi_m| = O(m^{-(d+1)/2}) and d_m ~ m^{d-1} make the terms
  // O(m^{-2}); fit kappa on the last quarter of computed terms.
  double kappa = 0.0;
  const int window = std::max(1, m_max / 4);
  for (int m = m_max - window + 1; m <= m_max; ++m)
    kappa = std::max(kappa, static_cast<double>(m) * m *
                                terms[static_cast<std::size_t>(m - 1)]);
  report.tail_estimate = kappa / m_max;

  if (with_terms) {
    std::vector<SeriesTerm> detail;
    detail.reserve(static_cast<std::size_t>(m_max));
    for (int m = 1; m <= m_max; ++m) {
      const std::size_t i = static_cast<std::size_t>(m - 1);
      detail.push_back(SeriesTerm{m, energies[i], phi[i], terms[i]});
    }
    report.terms = std::move(detail);
  }
  return report;
}

}  // namespace

DiscrepancyReport discrepancy_from_energies(const Space& space, std::span<const double> energies,
                                            const RadiusSpec& radius, int n_points,
                                            bool with_terms) {
  if (energies.empty()) throw domain_error("discrepancy_from_energies: empty energies");
  if (!(radius.value > 0.0 && radius.value < kPi))
    throw domain_error("discrepancy: radius must lie in (0, pi)");
  return assemble_report(space, energies, radius, n_points, with_terms);
}

DiscrepancyReport discrepancy_l2(const Space& space, std::span<const Point> points,
                                 std::span<const double> weights, const RadiusSpec& radius,
                                 std::optional<int> truncation, bool with_terms) {
  if (!(radius.value > 0.0 && radius.value < kPi))
    throw domain_error("discrepancy: radius must lie in (0, pi)");
  const auto start = std::chrono::steady_clock::now();
  const int m_max = truncation.value_or(
      auto_truncation(space, static_cast<int>(points.size()), radius.value));
  if (m_max < 1) throw domain_error("discrepancy: truncation must be >= 1");
  const PairGram gram = build_gram(space, points, weights);
  const std::vector<double> energies = harmonic_energy(space, gram, m_max);
  DiscrepancyReport report =
      assemble_report(space, energies, radius, gram.n, with_terms);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace capdisc
