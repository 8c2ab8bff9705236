#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "capdisc/errors.hpp"
#include "capdisc/oracle.hpp"
#include "capdisc/spaces.hpp"
#include "capdisc/spectral.hpp"
#include "capdisc/threads.hpp"
#include "test_util.hpp"

using namespace capdisc;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("adaptive_simpson basics") {
  CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
        Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12) ==
        Approx(2.0).epsilon(1e-11));
  CHECK(adaptive_simpson([](double) { return 1.0; }, 2.0, 2.0, 1e-12) == 0.0);
  // A tolerance the depth cap cannot reach raises, with the estimate attached.
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return std::sqrt(std::abs(x)); }, -1.0, 1.0,
                                   1e-15, 4),
                  numeric_error);
}

TEST_CASE("quad_ball_coefficient: elementary integral and orthogonality") {
  const Space s2 = Space::sphere(2);
  for (const double r : {0.4, kPi / 3, 2.2})
    CHECK(quad_ball_coefficient(s2, 1, r) ==
          Approx(std::pow(std::sin(r), 2) / 4.0).epsilon(1e-10));
  // m >= 1 integrates to zero over the whole space.
  for (const int m : {1, 3})
    CHECK(std::abs(quad_ball_coefficient(s2, m, kPi)) < 1e-11);
  CHECK_THROWS_AS(quad_ball_coefficient(s2, 0, 1.0), domain_error);
}

TEST_CASE("Rodrigues route equals quadrature route (sampled spaces)") {
  for (const Space& space : {Space::sphere(3), Space::proj_quat(2)}) {
    for (const int m : {1, 2, 7, 25}) {
      const double closed = ball_coefficient(space, m, kPi / 3);
      CHECK(quad_ball_coefficient(space, m, kPi / 3) ==
            Approx(closed).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("mc_ball_volume: anchors within 3 sigma") {
  const Space s2 = Space::sphere(2);
  const McEstimate half = mc_ball_volume(s2, kPi / 2, 200'000, 5);
  CHECK(std::abs(half.estimate - 0.5) < 3.0 * half.stderr_est);

  const Space cp2 = Space::proj_complex(2);
  const McEstimate quarter = mc_ball_volume(cp2, kPi / 2, 200'000, 6);
  CHECK(std::abs(quarter.estimate - 0.25) < 3.0 * quarter.stderr_est);
  CHECK(ball_volume(cp2, kPi / 2) == Approx(0.25).epsilon(1e-12));

  const McEstimate full = mc_ball_volume(s2, kPi, 1000, 7);
  CHECK(full.estimate == 1.0);

  CHECK_THROWS_AS(mc_ball_volume(Space::proj_oct(), 1.0, 1000, 1), domain_error);
  CHECK_THROWS_AS(mc_ball_volume(s2, 1.0, 50, 1), domain_error);
}

TEST_CASE("mc_discrepancy: closed-form anchors") {
  const Space s2 = Space::sphere(2);
  Point pole(3);
  pole << 0, 0, 1;
  const std::vector<Point> single{pole};
  const McEstimate one = mc_discrepancy(s2, single, {}, kPi / 3, 200'000, 11);
  CHECK(std::abs(one.estimate - 3.0 / 16.0) < 3.0 * one.stderr_est);

  Point south(3);
  south << 0, 0, -1;
  const std::vector<Point> pair{pole, south};
  const McEstimate zero = mc_discrepancy(s2, pair, {}, kPi / 2, 50'000, 12);
  // Each hemisphere contains exactly one of the two points.
  CHECK(zero.estimate == Approx(0.0).scale(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(mc_discrepancy(s2, single, {}, 0.0, 1000, 1), domain_error);
  CHECK_THROWS_AS(mc_discrepancy(s2, single, {}, 1.0, 10, 1), domain_error);
}

TEST_CASE("mc_discrepancy matches the spectral value on a random set") {
  const Space s3 = Space::sphere(3);
  const auto points = sample_uniform(s3, 31, 100);
  const DiscrepancyReport spectral =
      discrepancy_l2(s3, points, {}, RadiusSpec::from_real(kPi / 3), 1500);
  const McEstimate mc = mc_discrepancy(s3, points, {}, kPi / 3, 400'000, 32);
  CHECK(std::abs(spectral.value - mc.estimate) <
        3.0 * mc.stderr_est + spectral.tail_estimate);
}

TEST_CASE("stderr halves when samples quadruple") {
  const Space s2 = Space::sphere(2);
  const auto points = sample_uniform(s2, 77, 16);
  const McEstimate small = mc_discrepancy(s2, points, {}, kPi / 3, 50'000, 13);
  const McEstimate large = mc_discrepancy(s2, points, {}, kPi / 3, 200'000, 13);
  const double ratio = small.stderr_est / large.stderr_est;
  CHECK(ratio > 2.0 * 0.8);
  CHECK(ratio < 2.0 * 1.2);
}

TEST_CASE("Monte Carlo results are thread-count independent") {
  const Space cp2 = Space::proj_complex(2);
  const auto points = sample_uniform(cp2, 41, 24);
  set_max_threads(1);
  const McEstimate serial = mc_discrepancy(cp2, points, {}, 1.1, 60'000, 14);
  const McEstimate volume_serial = mc_ball_volume(cp2, 1.3, 60'000, 15);
  set_max_threads(8);
  const McEstimate parallel = mc_discrepancy(cp2, points, {}, 1.1, 60'000, 14);
  const McEstimate volume_parallel = mc_ball_volume(cp2, 1.3, 60'000, 15);
  set_max_threads(0);
  CHECK(serial.estimate == parallel.estimate);
  CHECK(serial.stderr_est == parallel.stderr_est);
  CHECK(volume_serial.estimate == volume_parallel.estimate);
}
