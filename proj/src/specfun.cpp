#include "capdisc/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "capdisc/errors.hpp"

namespace capdisc::specfun {

namespace {
constexpr double kPi = std::numbers::pi;
}

JacobiParams::JacobiParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw domain_error("JacobiParams: require alpha > -1 and beta > -1, got alpha=" +
                       std::to_string(alpha_) + " beta=" + std::to_string(beta_));
}

bool is_half_integer(double x) {
  const double twice = 2.0 * x;
  return std::isfinite(twice) && twice == std::nearbyint(twice);
}

double half_integer_lgamma(double x) {
  if (!(x > 0.0) || !is_half_integer(x))
    throw domain_error("half_integer_gamma: argument must be a positive half-integer, got " +
                       std::to_string(x));
  // Walk down to Gamma(1) = 1 or Gamma(1/2) = sqrt(pi).
  double log_acc = 0.0;
  double t = x;
  while (t > 1.0) {
    t -= 1.0;
    log_acc += std::log(t);
  }
  if (t == 0.5) log_acc += 0.5 * std::log(kPi);
  return log_acc;
}

double half_integer_gamma(double x) {
  if (!(x > 0.0) || !is_half_integer(x))
    throw domain_error("half_integer_gamma: argument must be a positive half-integer, got " +
                       std::to_string(x));
  double acc = 1.0;
  double t = x;
  while (t > 1.0) {
    t -= 1.0;
    acc *= t;
  }
  if (t == 0.5) acc *= std::sqrt(kPi);
  return acc;
}

JacobiRecurrence::JacobiRecurrence(JacobiParams params, int m_max)
    : params_(params), m_max_(m_max) {
  if (m_max < 0) throw domain_error("JacobiRecurrence: m_max must be >= 0");
  const std::size_t size = static_cast<std::size_t>(m_max) + 1;
  cx_.assign(size, 0.0);
  c0_.assign(size, 0.0);
  cp_.assign(size, 0.0);
  const double al = params.alpha, be = params.beta;
  for (int m = 2; m <= m_max; ++m) {
    const double s = 2.0 * m + al + be;
    const double denom = 2.0 * m * (m + al + be) * (s - 2.0);
    cx_[static_cast<std::size_t>(m)] = (s - 1.0) * s * (s - 2.0) / denom;
    c0_[static_cast<std::size_t>(m)] = (s - 1.0) * (al * al - be * be) / denom;
    cp_[static_cast<std::size_t>(m)] = -2.0 * (m + al - 1.0) * (m + be - 1.0) * s / denom;
  }
}

std::vector<double> jacobi_eval(JacobiParams params, int m_max, double x) {
  if (m_max < 0) throw domain_error("jacobi_eval: m_max must be >= 0");
  if (std::abs(x) > 1.0 + 1e-12)
    throw domain_error("jacobi_eval: |x| must be <= 1, got " + std::to_string(x));
  x = std::clamp(x, -1.0, 1.0);

  std::vector<double> values(static_cast<std::size_t>(m_max) + 1);
  values[0] = 1.0;
  if (m_max == 0) return values;
  const JacobiRecurrence rec(params, m_max);
  values[1] = rec.degree_one(x);
  for (int m = 2; m <= m_max; ++m)
    values[static_cast<std::size_t>(m)] =
        (rec.cx(m) * x + rec.c0(m)) * values[static_cast<std::size_t>(m - 1)] +
        rec.cp(m) * values[static_cast<std::size_t>(m - 2)];
  return values;
}

double jacobi_at_one_log(JacobiParams params, int m) {
  if (m < 0) throw domain_error("jacobi_at_one: m must be >= 0");
  // binom(m+alpha, m) = prod_{k=1..m} (alpha+k)/k; every factor is positive
  // since alpha > -1.
  double log_acc = 0.0;
  for (int k = 1; k <= m; ++k) log_acc += std::log((params.alpha + k) / k);
  return log_acc;
}

double jacobi_at_one(JacobiParams params, int m) {
  return std::exp(jacobi_at_one_log(params, m));
}

std::vector<double> jacobi_at_one_prefix(JacobiParams params, int m_max) {
  if (m_max < 0) throw domain_error("jacobi_at_one_prefix: m_max must be >= 0");
  std::vector<double> values(static_cast<std::size_t>(m_max) + 1);
  values[0] = 1.0;
  for (int m = 1; m <= m_max; ++m)
    values[static_cast<std::size_t>(m)] =
        values[static_cast<std::size_t>(m - 1)] * (params.alpha + m) / m;
  return values;
}

double jacobi_asymptotic(JacobiParams params, int m, double r) {
  if (m < 1) throw domain_error("jacobi_asymptotic: m must be >= 1");
  if (!(r >= 1e-3 && r <= kPi - 1e-3))
    throw domain_error("jacobi_asymptotic: r must lie in [1e-3, pi - 1e-3]");
  const double al = params.alpha, be = params.beta;
  const double amplitude = std::pow(static_cast<double>(m), -0.5) / std::sqrt(kPi) *
                           std::pow(std::sin(0.5 * r), -al - 0.5) *
                           std::pow(std::cos(0.5 * r), -be - 0.5);
  const double phase = (m + 0.5 * (al + be + 1.0)) * r - 0.25 * (2.0 * al + 1.0) * kPi;
  return amplitude * std::cos(phase);
}

double gegenbauer_eval(double lambda, int m, double x) {
  if (!(lambda > -0.5) || lambda == 0.0)
    throw domain_error("gegenbauer_eval: require lambda > -1/2 and lambda != 0");
  // Connection factor prod_{k=0..m-1} (2 lambda + k)/(lambda + 1/2 + k) in
  // log magnitude + sign; the k = 0 factor is negative for lambda < 0.
  double log_mag = 0.0;
  double sign = 1.0;
  for (int k = 0; k < m; ++k) {
    const double factor = (2.0 * lambda + k) / (lambda + 0.5 + k);
    if (factor < 0.0) sign = -sign;
    log_mag += std::log(std::abs(factor));
  }
  const std::vector<double> jac = jacobi_eval(JacobiParams(lambda - 0.5, lambda - 0.5), m, x);
  return sign * std::exp(log_mag) * jac[static_cast<std::size_t>(m)];
}

double eigenspace_dim(double a, double b, int m) {
  if (m < 0) throw domain_error("eigenspace_dim: m must be >= 0");
  if (m == 0) return 1.0;
  double d = (a + b + 3.0) * (a + 1.0) / (b + 1.0);
  for (int k = 2; k <= m; ++k) {
    const double s = 2.0 * k + a + b;
    d *= (s + 1.0) * (k + a + b) * (k + a) / ((s - 1.0) * (k + b) * k);
  }
  return d;
}

std::vector<double> eigenspace_dim_prefix(double a, double b, int m_max) {
  if (m_max < 0) throw domain_error("eigenspace_dim_prefix: m_max must be >= 0");
  std::vector<double> dims(static_cast<std::size_t>(m_max) + 1);
  dims[0] = 1.0;
  if (m_max == 0) return dims;
  dims[1] = (a + b + 3.0) * (a + 1.0) / (b + 1.0);
  for (int k = 2; k <= m_max; ++k) {
    const double s = 2.0 * k + a + b;
    dims[static_cast<std::size_t>(k)] = dims[static_cast<std::size_t>(k - 1)] * (s + 1.0) *
                                        (k + a + b) * (k + a) / ((s - 1.0) * (k + b) * k);
  }
  return dims;
}

double eigenvalue(double a, double b, int m) {
  if (m < 0) throw domain_error("eigenvalue: m must be >= 0");
  return static_cast<double>(m) * (m + a + b + 1.0);
}

namespace {

double general_lgamma(double x) {
  return is_half_integer(x) ? half_integer_lgamma(x) : std::lgamma(x);
}

}  // namespace

double c_ab(double a, double b) {
  if (!(a > -1.0) || !(b > -1.0)) throw domain_error("c_ab: require a > -1 and b > -1");
  return std::exp(general_lgamma(a + b + 2.0) - general_lgamma(a + 1.0) -
                  general_lgamma(b + 1.0));
}

double jacobi_l2_norm_sq(JacobiParams params, int m) {
  if (m < 0) throw domain_error("jacobi_l2_norm_sq: m must be >= 0");
  const double al = params.alpha, be = params.beta;
  // Gamma(m+al+1) Gamma(m+be+1) / (Gamma(m+1) Gamma(m+al+be+1)) as a product
  // over k = 1..m; only the m-independent constant needs Gamma itself.
  double log_acc = general_lgamma(al + 1.0) + general_lgamma(be + 1.0) -
                   general_lgamma(al + be + 1.0);
  for (int k = 1; k <= m; ++k)
    log_acc += std::log((k + al) * (k + be) / (k * (k + al + be)));
  return std::exp(log_acc) / (2.0 * m + al + be + 1.0);
}

namespace {

// Continued fraction of the incomplete beta (modified Lentz).
double beta_cf(double p, double q, double x) {
  constexpr int kMaxIter = 200;
  constexpr double kTol = 1e-14;
  constexpr double kTiny = 1e-300;

  const double qab = p + q;
  const double qap = p + 1.0;
  const double qam = p - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int iter = 1; iter <= kMaxIter; ++iter) {
    const int m2 = 2 * iter;
    double coeff = iter * (q - iter) * x / ((qam + m2) * (p + m2));
    d = 1.0 + coeff * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + coeff / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    coeff = -(p + iter) * (qab + iter) * x / ((p + m2) * (qap + m2));
    d = 1.0 + coeff * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + coeff / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kTol) return h;
  }
  throw numeric_error("reg_inc_beta: continued fraction did not converge within 200 iterations");
}

}  // namespace

double reg_inc_beta(double s, double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw domain_error("reg_inc_beta: require p > 0 and q > 0");
  if (!(s >= 0.0 && s <= 1.0))
    throw domain_error("reg_inc_beta: s must lie in [0, 1], got " + std::to_string(s));
  if (s == 0.0) return 0.0;
  if (s == 1.0) return 1.0;
  const double log_front = p * std::log(s) + q * std::log1p(-s) -
                           (general_lgamma(p) + general_lgamma(q) - general_lgamma(p + q));
  const double front = std::exp(log_front);
  if (s < (p + 1.0) / (p + q + 2.0)) return front * beta_cf(p, q, s) / p;
  return 1.0 - front * beta_cf(q, p, 1.0 - s) / q;
}

}  // namespace capdisc::specfun
