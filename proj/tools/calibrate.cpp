// Prints the observed values behind tests/frozen_constants.hpp. Run after
// any numeric change; update the header deliberately if a shift is intended.
//
//   capdisc_calibrate [--fast]   (--fast skips the rate study and prime scan)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <vector>

#include "capdisc/admissibility.hpp"
#include "capdisc/oracle.hpp"
#include "capdisc/pointsets.hpp"
#include "capdisc/spaces.hpp"
#include "capdisc/specfun.hpp"
#include "capdisc/spectral.hpp"
#include "capdisc/studies.hpp"

using namespace capdisc;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Space> catalog() {
  return {Space::sphere(1),      Space::sphere(2),       Space::sphere(3),
          Space::sphere(4),      Space::sphere(5),       Space::sphere(9),
          Space::proj_real(2),   Space::proj_real(3),    Space::proj_real(5),
          Space::proj_complex(2), Space::proj_complex(3), Space::proj_quat(2),
          Space::proj_oct()};
}

double szego_error_bound() {
  double worst = 0.0;
  for (const Space& space : catalog()) {
    const SpaceParams sp = space.params();
    const specfun::JacobiParams params(sp.a + 1.0, sp.b + 1.0);
    for (const double r : {kPi / 5.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0}) {
      const std::vector<double> exact = specfun::jacobi_eval(params, 2000, std::cos(r));
      for (int m = 100; m <= 2000; ++m) {
        const double err = std::abs(exact[static_cast<std::size_t>(m)] -
                                    specfun::jacobi_asymptotic(params, m, r));
        worst = std::max(worst, std::pow(m, 1.5) * err);
      }
    }
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  const bool fast = argc > 1 && std::strcmp(argv[1], "--fast") == 0;

  std::printf("szego_error_bound          = %.6g\n", szego_error_bound());

  for (const auto& radius : {RadiusPQ(1, 3), RadiusPQ(1, 4), RadiusPQ(2, 5)}) {
    const JacobiScanResult scan = jacobadly_scan(1.0, 1.0, radius, 2, 5000);
    std::printf("jacobadly_min (1,1) %s      = %.6g (argmin %d)\n", radius.str().c_str(),
                scan.min_scaled, scan.argmin);
  }

  const Space s2 = Space::sphere(2);
  const ScaleScanResult good = coefficient_scale_scan(s2, RadiusPQ(1, 3), 10, 5000);
  const ScaleScanResult bad = coefficient_scale_scan(s2, RadiusPQ(1, 2), 10, 5000);
  const ScaleScanResult s5scan = coefficient_scale_scan(Space::sphere(5), RadiusPQ(1, 3), 10, 5000);
  std::printf("coeff_scale s2 1/3         = [%.6g, %.6g]\n", good.min_scaled, good.max_scaled);
  std::printf("coeff_scale s2 1/2 min     = %.6g\n", bad.min_scaled);
  std::printf("coeff_scale s5 1/3 min     = %.6g\n", s5scan.min_scaled);

  double min_norm = 1e300;
  for (int m = 10; m <= 1000; ++m)
    min_norm = std::min(min_norm, m * specfun::jacobi_l2_norm_sq(specfun::JacobiParams(1, 1), m));
  std::printf("min m*l2_norm_sq (1,1)     = %.6g\n", min_norm);

  {
    const PointSet fib = generate(s2, GeneratorKind::Fibonacci, 1000, 0);
    double min_dist = kPi;
    for (int i = 0; i < fib.size(); ++i)
      for (int j = i + 1; j < fib.size(); ++j)
        min_dist = std::min(min_dist, distance(s2, fib.points[i], fib.points[j]));
    std::printf("fibonacci_min_dist_coeff   = %.6g (n=1000)\n", min_dist * std::sqrt(1000.0));
  }

  {
    const PointSet uniform = generate(s2, GeneratorKind::Uniform, 256, 7);
    const DiscrepancyReport report = discrepancy_l2(
        s2, uniform.points, uniform.weights, RadiusSpec::from_pq(RadiusPQ(1, 3)));
    std::printf("uniform256_value           = %.6g\n", report.value);
  }

  if (fast) return 0;

  const std::vector<int> sizes{128, 256, 512, 1024, 2048, 4096};
  for (const GeneratorKind kind :
       {GeneratorKind::Fibonacci, GeneratorKind::Uniform, GeneratorKind::CapCluster}) {
    const RateStudyResult result = rate_study(s2, kind, RadiusPQ(1, 3), sizes, 7);
    double min_scaled = 1e300;
    for (const RateStudyRow& row : result.rows)
      min_scaled = std::min(min_scaled, row.value * std::pow(row.n, 1.5));
    std::printf("rate %-11s exponent = %.4f   min value*N^1.5 = %.6g\n",
                generator_name(kind).c_str(), result.fitted_exponent, min_scaled);
  }

  {
    const Space s5 = Space::sphere(5);
    double min_score = 1e300;
    for (const int n : {128, 512})
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const PointSet set = generate(s5, GeneratorKind::Uniform, n, seed);
        const ScanResult scan = prime_scan(s5, set);
        min_score = std::min(min_score, scan.normalized_score);
        std::printf("prime_scan s5 n=%-4d seed=%llu  score = %.6g (H=%d, n*=%d)\n", n,
                    static_cast<unsigned long long>(seed), scan.normalized_score, scan.h,
                    scan.argmax);
      }
    std::printf("prime_scan_min_score       = %.6g\n", min_score);
  }
  return 0;
}
