#pragma once

#include <vector>

namespace capdisc::specfun {

/// Jacobi parameter pair, validated to alpha > -1 and beta > -1.
struct JacobiParams {
  double alpha;
  double beta;
  JacobiParams(double alpha_, double beta_);
};

/// Gamma(x) for half-integer x > 0, by exact recursion from Gamma(1) = 1
/// and Gamma(1/2) = sqrt(pi). No lgamma rounding profile on this path.
double half_integer_gamma(double x);
/// log Gamma(x) for half-integer x > 0 (usable where the value overflows).
double half_integer_lgamma(double x);
bool is_half_integer(double x);

/// Per-degree coefficients of the three-term recurrence
///   P_m = (cx[m]*x + c0[m]) * P_{m-1} + cp[m] * P_{m-2},  m >= 2,
/// with P_0 = 1 and P_1 given by degree_one(). The table is shared by the
/// scalar evaluator and the tiled spectral kernel, which applies the same
/// step to whole Eigen arrays of abscissae.
class JacobiRecurrence {
 public:
  JacobiRecurrence(JacobiParams params, int m_max);

  int m_max() const { return m_max_; }
  const JacobiParams& params() const { return params_; }
  double degree_one(double x) const {
    return (params_.alpha + 1.0) + (params_.alpha + params_.beta + 2.0) * 0.5 * (x - 1.0);
  }
  // Valid for 2 <= m <= m_max.
  double cx(int m) const { return cx_[static_cast<std::size_t>(m)]; }
  double c0(int m) const { return c0_[static_cast<std::size_t>(m)]; }
  double cp(int m) const { return cp_[static_cast<std::size_t>(m)]; }

 private:
  JacobiParams params_;
  int m_max_;
  std::vector<double> cx_, c0_, cp_;
};

/// Values [P_0(x), ..., P_{m_max}(x)] of the Jacobi polynomials.
/// The full prefix is returned because the spectral engine always consumes
/// whole prefixes. Requires |x| <= 1 + 1e-12.
std::vector<double> jacobi_eval(JacobiParams params, int m_max, double x);

/// P_m^{alpha,beta}(1) = binom(m+alpha, m), and its log. Product form, so
/// any real alpha > -1 is fine.
double jacobi_at_one(JacobiParams params, int m);
double jacobi_at_one_log(JacobiParams params, int m);
/// Prefix [P_0(1), ..., P_{m_max}(1)] by the ratio recurrence (m+alpha)/m.
std::vector<double> jacobi_at_one_prefix(JacobiParams params, int m_max);

/// Main term of the large-degree asymptotics of P_m^{alpha,beta}(cos r):
///   m^{-1/2} pi^{-1/2} (sin r/2)^{-alpha-1/2} (cos r/2)^{-beta-1/2}
///     * cos((m + (alpha+beta+1)/2) r - (2 alpha + 1) pi/4).
/// Requires m >= 1 and r in [1e-3, pi - 1e-3]; the remainder is O(m^{-3/2})
/// and is not included.
double jacobi_asymptotic(JacobiParams params, int m, double r);

/// Gegenbauer polynomial P_m^lambda(x) via the Jacobi connection
///   P_m^lambda = Gamma(lambda+1/2) Gamma(m+2 lambda)
///                / (Gamma(2 lambda) Gamma(m+lambda+1/2)) * P_m^{l-1/2,l-1/2}.
/// Requires lambda > -1/2 and lambda != 0 (normalization degenerates at 0).
double gegenbauer_eval(double lambda, int m, double x);

/// Eigenspace dimension d_m and Laplace-Beltrami eigenvalue lambda_m of the
/// space with spectral parameters (a, b):
///   d_m = (2m+a+b+1) G(b+1)/(G(a+1) G(a+b+2)) * G(m+a+b+1)/G(m+b+1)
///         * G(m+a+1)/G(m+1),        lambda_m = m (m+a+b+1).
/// d_m uses a multiplicative recurrence in m, never large Gamma values.
double eigenspace_dim(double a, double b, int m);
std::vector<double> eigenspace_dim_prefix(double a, double b, int m_max);
double eigenvalue(double a, double b, int m);

/// c(a,b) = Gamma(a+b+2) / (Gamma(a+1) Gamma(b+1)), the normalizing constant
/// of the zonal density. Exact half-integer recursion when both arguments
/// are half-integers (every catalog space), lgamma otherwise.
double c_ab(double a, double b);

/// Squared L2 norm of P_m^{alpha,beta}(cos r) against the normalized zonal
/// weight (sin r/2)^{2 alpha+1} (cos r/2)^{2 beta+1} on (0, pi):
///   Gamma(m+ alpha+1) Gamma(m+beta+1)
///     / ((2m+alpha+beta+1) Gamma(m+1) Gamma(m+alpha+beta+1)).
double jacobi_l2_norm_sq(JacobiParams params, int m);

/// Regularized incomplete beta I_s(p, q), by the symmetric continued
/// fraction (modified Lentz), tolerance 1e-14, at most 200 iterations.
double reg_inc_beta(double s, double p, double q);

}  // namespace capdisc::specfun
