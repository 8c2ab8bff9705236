#pragma once

#include <cmath>
#include <vector>

#include "capdisc/rng.hpp"
#include "capdisc/spaces.hpp"

namespace capdisc::testing {

/// Representative spaces exercised throughout the suite. op2 is last and
/// parameter-only.
inline std::vector<Space> catalog() {
  return {Space::sphere(1),      Space::sphere(2),       Space::sphere(3),
          Space::sphere(4),      Space::sphere(5),       Space::sphere(9),
          Space::proj_real(2),   Space::proj_real(3),    Space::proj_real(5),
          Space::proj_complex(2), Space::proj_complex(3), Space::proj_quat(2),
          Space::proj_oct()};
}

inline std::vector<Space> point_catalog() {
  std::vector<Space> spaces = catalog();
  spaces.pop_back();  // drop op2
  return spaces;
}

/// Independent low-degree oracle: the explicit binomial sum
///   P_m^{alpha,beta}(x) = sum_s binom(m+alpha, m-s) binom(m+beta, s)
///                           ((x-1)/2)^s ((x+1)/2)^{m-s},
/// a different route from the three-term recurrence.
inline double jacobi_binomial_sum(double alpha, double beta, int m, double x) {
  auto real_binom = [](double top, int k) {
    double value = 1.0;
    for (int i = 1; i <= k; ++i) value *= (top - (k - i)) / i;
    return value;
  };
  double total = 0.0;
  for (int s = 0; s <= m; ++s)
    total += real_binom(m + alpha, m - s) * real_binom(m + beta, s) *
             std::pow(0.5 * (x - 1.0), s) * std::pow(0.5 * (x + 1.0), m - s);
  return total;
}

/// Independent Gegenbauer oracle via the native recurrence
///   m C_m = 2 (m + lambda - 1) x C_{m-1} - (m + 2 lambda - 2) C_{m-2}.
inline double gegenbauer_recurrence(double lambda, int m, double x) {
  double prev = 1.0;
  if (m == 0) return prev;
  double curr = 2.0 * lambda * x;
  for (int k = 2; k <= m; ++k) {
    const double next =
        (2.0 * (k + lambda - 1.0) * x * curr - (k + 2.0 * lambda - 2.0) * prev) / k;
    prev = curr;
    curr = next;
  }
  return curr;
}

}  // namespace capdisc::testing
