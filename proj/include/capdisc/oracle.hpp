#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "capdisc/spaces.hpp"

namespace capdisc {

struct McEstimate {
  double estimate = 0.0;
  double stderr_est = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

/// Direct geometric Monte Carlo of the L2 ball discrepancy: samples uniform
/// centers x and averages D_r(x)^2 with
///   D_r(x) = sum_j a_j [rho(x, x_j) < r] - mu(B_r).
/// Deterministic per (seed, samples): center i always comes from substream
/// (seed, i) and batches reduce in index order.
McEstimate mc_discrepancy(const Space& space, std::span<const Point> points,
                          std::span<const double> weights, double radius, long long samples,
                          std::uint64_t seed);

/// Monte Carlo ball volume: fraction of uniform samples within distance r of
/// a fixed pole. Cross-validates the distance convention against the
/// analytic I_s(a+1, b+1) volume.
McEstimate mc_ball_volume(const Space& space, double radius, long long samples,
                          std::uint64_t seed);

/// phi_m(r) by adaptive Simpson quadrature of P_m^{a,b}(cos t) A(t) over
/// [0, r], divided by P_m^{a,b}(1). Absolute tolerance 1e-11, maximum
/// depth 40; failing to reach tolerance is an error. Independent of the
/// Rodrigues closed form in ball_coefficient.
double quad_ball_coefficient(const Space& space, int m, double r);

/// Adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 40);

}  // namespace capdisc
