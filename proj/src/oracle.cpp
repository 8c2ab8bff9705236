#include "capdisc/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "capdisc/errors.hpp"
#include "capdisc/rng.hpp"
#include "capdisc/threads.hpp"

namespace capdisc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long long kBatch = 8192;

// Center streams carry a role tag so reusing a point-set seed for the oracle
// cannot make the centers coincide with the points.
constexpr std::uint64_t kCenterStream = 0x6f7261636c65ULL;

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Shared batching skeleton: value_of(center_index) -> one sample of the
// estimated quantity; batches are reduced pairwise in index order.
McEstimate batched_mc(long long samples, std::uint64_t seed,
                      const std::function<double(std::uint64_t)>& value_of) {
  const long long n_batches = (samples + kBatch - 1) / kBatch;
  std::vector<Moments> partial(static_cast<std::size_t>(n_batches));
  parallel_for(static_cast<int>(n_batches), [&](int b) {
    const long long begin = static_cast<long long>(b) * kBatch;
    const long long end = std::min(samples, begin + kBatch);
    Moments m;
    for (long long i = begin; i < end; ++i) {
      const double v = value_of(static_cast<std::uint64_t>(i));
      m.sum += v;
      m.sum_sq += v * v;
    }
    partial[static_cast<std::size_t>(b)] = m;
  });
  for (long long width = 1; width < n_batches; width *= 2)
    for (long long i = 0; i + width < n_batches; i += 2 * width) {
      partial[static_cast<std::size_t>(i)].sum += partial[static_cast<std::size_t>(i + width)].sum;
      partial[static_cast<std::size_t>(i)].sum_sq +=
          partial[static_cast<std::size_t>(i + width)].sum_sq;
    }

  const double n = static_cast<double>(samples);
  const double mean = partial[0].sum / n;
  const double variance =
      samples > 1 ? std::max(0.0, (partial[0].sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  McEstimate out;
  out.estimate = mean;
  out.stderr_est = std::sqrt(variance / n);
  out.samples = samples;
  out.seed = seed;
  return out;
}

}  // namespace

McEstimate mc_discrepancy(const Space& space, std::span<const Point> points,
                          std::span<const double> weights, double radius, long long samples,
                          std::uint64_t seed) {
  if (!space.supports_points())
    throw domain_error("mc_discrepancy: point operations are unsupported on " + space.id());
  if (samples < 100) throw domain_error("mc_discrepancy: need at least 100 samples");
  if (!(radius > 0.0 && radius < kPi))
    throw domain_error("mc_discrepancy: radius must lie in (0, pi)");
  if (points.empty()) throw domain_error("mc_discrepancy: empty point set");
  const int n = static_cast<int>(points.size());
  std::vector<double> a;
  if (weights.empty())
    a.assign(static_cast<std::size_t>(n), 1.0 / n);
  else {
    if (static_cast<int>(weights.size()) != n)
      throw domain_error("mc_discrepancy: weights length does not match point count");
    a.assign(weights.begin(), weights.end());
  }

  const double volume = ball_volume(space, radius);
  const double cos_radius = std::cos(radius);
  return batched_mc(samples, seed, [&](std::uint64_t i) {
    const Point center = sample_uniform_at(space, seed ^ kCenterStream, i);
    double inside = 0.0;
    for (int j = 0; j < n; ++j) {
      // Strict inequality rho < r, i.e. cos rho > cos r; ties are a null set
      // and the fixed convention keeps reruns identical.
      if (cos_distance(space, center, points[static_cast<std::size_t>(j)]) > cos_radius)
        inside += a[static_cast<std::size_t>(j)];
    }
    const double d = inside - volume;
    return d * d;
  });
}

McEstimate mc_ball_volume(const Space& space, double radius, long long samples,
                          std::uint64_t seed) {
  if (!space.supports_points())
    throw domain_error("mc_ball_volume: point operations are unsupported on " + space.id());
  if (samples < 100) throw domain_error("mc_ball_volume: need at least 100 samples");
  if (!(radius >= 0.0 && radius <= kPi))
    throw domain_error("mc_ball_volume: radius must lie in [0, pi]");

  Point pole = Point::Zero(space.coord_size());
  pole[0] = 1.0;
  const double cos_radius = std::cos(radius);
  return batched_mc(samples, seed, [&](std::uint64_t i) {
    const Point sample = sample_uniform_at(space, seed ^ kCenterStream, i);
    if (radius == kPi) return 1.0;  // whole space, boundary convention aside
    return cos_distance(space, sample, pole) > cos_radius ? 1.0 : 0.0;
  });
}

namespace {

double simpson_rule(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth, bool& converged) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(fa, flm, fm, m - a);
  const double right = simpson_rule(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) {
    converged = false;
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, converged) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, converged);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (!(b >= a)) throw domain_error("adaptive_simpson: require b >= a");
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson_rule(fa, fm, fb, b - a);
  bool converged = true;
  const double value = adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth, converged);
  if (!converged)
    throw numeric_error("adaptive_simpson: tolerance not reached (estimate " +
                        std::to_string(value) + ")");
  return value;
}

double quad_ball_coefficient(const Space& space, int m, double r) {
  if (m < 1) throw domain_error("quad_ball_coefficient: m must be >= 1");
  if (!(r >= 0.0 && r <= kPi))
    throw domain_error("quad_ball_coefficient: r must lie in [0, pi]");
  const SpaceParams sp = space.params();
  const specfun::JacobiParams params(sp.a, sp.b);
  const auto integrand = [&](double t) {
    const std::vector<double> values = specfun::jacobi_eval(params, m, std::cos(t));
    return values[static_cast<std::size_t>(m)] * density(space, t);
  };
  // P_m(cos t) oscillates m times on (0, pi). Dyadic sampling of a single
  // panel can alias those oscillations (e.g. cos(40 t) on [0, pi/5] looks
  // constant at every bisection point), so integrate over sub-period panels
  // before letting the adaptive rule refine.
  const int panels = 2 * (m + 1);
  const double tol = 1e-11 / panels;
  double integral = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = r * k / panels;
    const double hi = r * (k + 1) / panels;
    integral += adaptive_simpson(integrand, lo, hi, tol, 40);
  }
  return integral / specfun::jacobi_at_one(params, m);
}

}  // namespace capdisc
