// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Optional argv[1] is the capdisc binary,
// needed by the determinism criterion.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "capdisc/admissibility.hpp"
#include "capdisc/oracle.hpp"
#include "capdisc/pointsets.hpp"
#include "capdisc/spaces.hpp"
#include "capdisc/specfun.hpp"
#include "capdisc/spectral.hpp"
#include "capdisc/studies.hpp"
#include "frozen_constants.hpp"

using namespace capdisc;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", id, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

std::vector<Space> catalog() {
  return {Space::sphere(1),      Space::sphere(2),       Space::sphere(3),
          Space::sphere(4),      Space::sphere(5),       Space::sphere(9),
          Space::proj_real(2),   Space::proj_real(3),    Space::proj_real(5),
          Space::proj_complex(2), Space::proj_complex(3), Space::proj_quat(2),
          Space::proj_oct()};
}

// ---- 1: exact anchors --------------------------------------------------
void criterion_exact_anchors() {
  const Space s2 = Space::sphere(2);
  Point pole(3), south(3);
  pole << 0, 0, 1;
  south << 0, 0, -1;
  const std::vector<Point> single{pole};
  const std::vector<Point> antipodal{pole, south};
  std::ostringstream detail;
  bool pass = true;

  auto t0 = std::chrono::steady_clock::now();
  const double coarse =
      discrepancy_l2(s2, single, {}, RadiusSpec::from_pq(RadiusPQ(1, 3)), 2000).value;
  const double coarse_time = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const double fine =
      discrepancy_l2(s2, single, {}, RadiusSpec::from_pq(RadiusPQ(1, 3)), 20000).value;
  const double fine_time = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const double zero =
      discrepancy_l2(s2, antipodal, {}, RadiusSpec::from_pq(RadiusPQ(1, 2)), 2000).value;
  const double zero_time = seconds_since(t0);

  pass &= std::abs(coarse - 3.0 / 16.0) < 1e-3;
  pass &= std::abs(fine - 3.0 / 16.0) < 1e-5;
  pass &= zero <= 1e-12;
  pass &= coarse_time < 5.0 && fine_time < 5.0 && zero_time < 5.0;
  detail << "|v2000-3/16|=" << std::abs(coarse - 3.0 / 16.0)
         << " |v20000-3/16|=" << std::abs(fine - 3.0 / 16.0) << " antipodal=" << zero
         << " times=" << coarse_time << "/" << fine_time << "/" << zero_time << "s";
  report(1, "exact anchors (one point 3/16; antipodal zero)", pass, detail.str());
}

// ---- 2: spectral vs Monte Carlo ----------------------------------------
void criterion_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Space> spaces{Space::sphere(2), Space::sphere(3), Space::proj_real(2),
                                  Space::proj_complex(2), Space::proj_quat(2)};
  const std::vector<int> sizes{1, 2, 16, 128};
  int passed = 0, total = 0;
  double worst_z = 0.0;
  for (std::size_t si = 0; si < spaces.size(); ++si)
    for (std::size_t ni = 0; ni < sizes.size(); ++ni) {
      const std::uint64_t tag = 100 + 10 * si + ni;
      const auto points = sample_uniform(spaces[si], tag, sizes[ni]);
      const DiscrepancyReport spectral =
          discrepancy_l2(spaces[si], points, {}, RadiusSpec::from_real(kPi / 3), 2000);
      const McEstimate mc =
          mc_discrepancy(spaces[si], points, {}, kPi / 3, 1'000'000, 9000 + tag);
      const double tolerance = 3.0 * mc.stderr_est + spectral.tail_estimate;
      const double gap = std::abs(spectral.value - mc.estimate);
      worst_z = std::max(worst_z, gap / (mc.stderr_est + 1e-300));
      ++total;
      if (gap < tolerance) ++passed;
    }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << passed << "/" << total << " configs within 3 sigma, worst z=" << worst_z
         << ", " << elapsed << "s";
  report(2, "oracle equivalence (spectral vs 1e6-center Monte Carlo)",
         passed == total && elapsed < 300.0, detail.str());
}

// ---- 3: Monte Carlo ball volume vs incomplete beta ----------------------
void criterion_geometry() {
  int passed = 0, total = 0;
  double worst_z = 0.0;
  std::uint64_t seed = 500;
  for (const Space& space : catalog()) {
    if (!space.supports_points()) continue;
    for (const double r : {kPi / 5, kPi / 3, kPi / 2, 2 * kPi / 3}) {
      const McEstimate mc = mc_ball_volume(space, r, 200'000, seed++);
      const double analytic = ball_volume(space, r);
      const double z = std::abs(mc.estimate - analytic) / (mc.stderr_est + 1e-300);
      worst_z = std::max(worst_z, z);
      ++total;
      if (z < 3.0) ++passed;
    }
  }
  std::ostringstream detail;
  detail << passed << "/" << total << " (space, radius) pairs, worst z=" << worst_z;
  report(3, "geometry validation (MC volume vs I_s(a+1,b+1))", passed == total, detail.str());
}

// ---- 4: Rodrigues closed form vs quadrature ------------------------------
void criterion_rodrigues() {
  double worst = 0.0;
  for (const Space& space : catalog()) {
    for (const double r : {kPi / 5, kPi / 3, kPi / 2}) {
      const auto closed = ball_coefficients(space, 50, r);
      for (int m = 1; m <= 50; ++m)
        worst = std::max(worst,
                         std::abs(closed[m - 1] - quad_ball_coefficient(space, m, r)));
    }
  }
  std::ostringstream detail;
  detail << "max |closed - quadrature| = " << worst;
  report(4, "Rodrigues check (ball coefficient vs adaptive Simpson)", worst <= 1e-9,
         detail.str());
}

// ---- 5: admissibility truth tables ---------------------------------------
void criterion_truth_tables() {
  bool pass = true;
  std::ostringstream detail;

  const Space s2 = Space::sphere(2);
  pass &= !space_radius_admissible(s2, RadiusPQ(1, 2));
  pass &= space_radius_admissible(s2, RadiusPQ(1, 3));
  pass &= space_radius_admissible(s2, RadiusPQ(1, 4));
  pass &= space_radius_admissible(s2, RadiusPQ(2, 3));

  const Space s3 = Space::sphere(3);
  for (std::int64_t q = 2; q <= 40 && pass; ++q)
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      if (space_radius_admissible(s3, RadiusPQ(p, q)) != (q % 2 == 1)) {
        pass = false;
        detail << "s3 mismatch at " << p << "/" << q << "; ";
        break;
      }
    }

  for (const Space& space : {Space::sphere(5), Space::sphere(9), Space::proj_real(5)})
    for (std::int64_t q = 2; q <= 50 && pass; ++q)
      for (std::int64_t p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        if (space_radius_admissible(space, RadiusPQ(p, q))) {
          pass = false;
          detail << space.id() << " admitted " << p << "/" << q << "; ";
          break;
        }
      }

  // Cross-path consistency on the full catalog.
  for (const Space& space : catalog()) {
    const SpaceParams sp = space.params();
    const Frac alpha(sp.d, 2), beta(sp.d0, 2);
    for (std::int64_t q = 2; q <= 40 && pass; ++q)
      for (std::int64_t p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        const RadiusPQ radius(p, q);
        if (space_radius_admissible(space, radius) !=
            jacobadly_from_alpha_beta(alpha, beta, radius)) {
          pass = false;
          detail << space.id() << " path split at " << p << "/" << q << "; ";
          break;
        }
      }
  }
  if (pass) detail << "s2/s3 tables, d=1(4) exclusions, and both paths agree";
  report(5, "admissibility truth tables", pass, detail.str());
}

// ---- 6: Theorem-level Jacobi empirics ------------------------------------
void criterion_jacobi_empirics() {
  bool pass = true;
  std::ostringstream detail;

  const JacobiScanResult parity = jacobadly_scan(1, 1, RadiusPQ(1, 2), 2, 5000);
  pass &= parity.min_scaled < 1e-12 && parity.argmin % 2 == 1;
  detail << "min(1/2)=" << parity.min_scaled;

  for (const auto& radius : {RadiusPQ(1, 3), RadiusPQ(1, 4), RadiusPQ(2, 5)}) {
    const JacobiScanResult scan = jacobadly_scan(1, 1, radius, 2, 5000);
    pass &= scan.min_scaled > frozen::kJacobadlyMinScaled;
    detail << " min(" << radius.str() << ")=" << scan.min_scaled;
  }

  double worst = 0.0;
  for (const Space& space : catalog()) {
    const SpaceParams sp = space.params();
    const specfun::JacobiParams params(sp.a + 1.0, sp.b + 1.0);
    for (const double r : {kPi / 5, kPi / 3, kPi / 2, 2 * kPi / 3}) {
      const auto exact = specfun::jacobi_eval(params, 2000, std::cos(r));
      for (int m = 100; m <= 2000; ++m)
        worst = std::max(worst, std::pow(m, 1.5) *
                                    std::abs(exact[m] - specfun::jacobi_asymptotic(params, m, r)));
    }
  }
  pass &= worst < frozen::kSzegoErrorBound;
  detail << " szego_worst=" << worst;
  report(6, "Jacobi lower-bound scans and Szego error", pass, detail.str());
}

// ---- 7: rate reproduction -------------------------------------------------
void criterion_rates() {
  const auto start = std::chrono::steady_clock::now();
  const Space s2 = Space::sphere(2);
  const std::vector<int> sizes{128, 256, 512, 1024, 2048, 4096};
  std::ostringstream detail;
  bool pass = true;

  double min_scaled = 1e300;
  for (const GeneratorKind kind :
       {GeneratorKind::Fibonacci, GeneratorKind::Uniform, GeneratorKind::CapCluster}) {
    const RateStudyResult result = rate_study(s2, kind, RadiusPQ(1, 3), sizes, 7);
    for (const RateStudyRow& row : result.rows)
      min_scaled = std::min(min_scaled, row.value * std::pow(row.n, 1.5));
    if (kind == GeneratorKind::Fibonacci) {
      pass &= result.fitted_exponent > frozen::kRateFibonacciLo &&
              result.fitted_exponent < frozen::kRateFibonacciHi;
      detail << "fibonacci_exp=" << result.fitted_exponent;
    } else if (kind == GeneratorKind::Uniform) {
      pass &= result.fitted_exponent > frozen::kRateUniformLo &&
              result.fitted_exponent < frozen::kRateUniformHi;
      detail << " uniform_exp=" << result.fitted_exponent;
    }
  }
  pass &= min_scaled >= frozen::kRateLowerC;
  const double elapsed = seconds_since(start);
  pass &= elapsed < 600.0;
  detail << " min value*N^1.5=" << min_scaled << " time=" << elapsed << "s";
  report(7, "rate reproduction (N^{-1-1/d} sharpness on s2)", pass, detail.str());
}

// ---- 8: prime-radius scan ---------------------------------------------------
void criterion_prime_scan() {
  const auto start = std::chrono::steady_clock::now();
  const Space s5 = Space::sphere(5);
  bool pass = true;
  double min_score = 1e300;
  for (const int n : {128, 512})
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const PointSet set = generate(s5, GeneratorKind::Uniform, n, seed);
      const ScanResult scan = prime_scan(s5, set);
      const int h_bound =
          static_cast<int>(std::ceil(3.0 * std::log(n) / std::log(std::log(n))));
      pass &= scan.argmax <= h_bound;
      pass &= scan.normalized_score >= frozen::kPrimeScanScore;
      min_score = std::min(min_score, scan.normalized_score);
    }
  const double elapsed = seconds_since(start);
  pass &= elapsed < 600.0;
  std::ostringstream detail;
  detail << "min normalized score=" << min_score << " time=" << elapsed << "s";
  report(8, "prime-radius scan on s5 (d = 1 mod 4)", pass, detail.str());
}

// ---- 9: determinism across reruns and thread counts -------------------------
struct CliRun {
  int exit_code;
  std::string output;
};

CliRun run_cli(const std::string& cli, const std::filesystem::path& dir,
               const std::string& args) {
  const std::filesystem::path out_file = dir / "out.txt";
  const std::string command = cli + " " + args + " > " + out_file.string() + " 2>/dev/null";
  const int raw = std::system(command.c_str());
  std::ifstream in(out_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return CliRun{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, buffer.str()};
}

std::string report_bytes(const std::string& text) {
  return nlohmann::json::parse(text).at("report").dump();
}

std::string csv_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line, rows;
  while (std::getline(in, line))
    if (line.rfind("#", 0) != 0) rows += line + "\n";  // manifest comments differ by timestamp
  return rows;
}

void criterion_determinism(const char* cli_path) {
  if (cli_path == nullptr) {
    report(9, "determinism across reruns and --threads {1,4,8}", false,
           "capdisc binary path not supplied");
    return;
  }
  const std::string cli = cli_path;
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("capdisc_acceptance_" + std::to_string(getpid()));
  std::filesystem::create_directories(dir);
  bool pass = true;
  std::ostringstream detail;

  const std::string points = (dir / "pts.json").string();
  pass &= run_cli(cli, dir, "points generate --space s3 --kind uniform --n 96 --seed 13 --out " +
                                points)
              .exit_code == 0;

  const std::string compute =
      "disc compute --space s3 --points " + points + " --radius 2/5 --terms --threads ";
  const std::string reference = report_bytes(run_cli(cli, dir, compute + "1").output);
  for (const char* threads : {"1", "4", "8"}) {
    const std::string body = report_bytes(run_cli(cli, dir, compute + threads).output);
    if (body != reference) {
      pass = false;
      detail << "disc compute differs at --threads " << threads << "; ";
    }
  }

  const std::string oracle_cmd = "disc oracle --space s3 --points " + points +
                                 " --radius-real 1.2 --samples 200000 --seed 3 --threads ";
  const std::string oracle_ref = report_bytes(run_cli(cli, dir, oracle_cmd + "1").output);
  for (const char* threads : {"4", "8"}) {
    if (report_bytes(run_cli(cli, dir, oracle_cmd + threads).output) != oracle_ref) {
      pass = false;
      detail << "oracle differs at --threads " << threads << "; ";
    }
  }

  const std::string csv1 = (dir / "rate1.csv").string();
  const std::string csv2 = (dir / "rate2.csv").string();
  const std::string rate_cmd = "study rate --space s2 --generator fibonacci --radius 1/3 "
                               "--Ns 32:256:x2 --seed 7 --out " +
                               (dir / "rate.json").string();
  pass &= run_cli(cli, dir, rate_cmd + " --csv " + csv1 + " --threads 1").exit_code == 0;
  pass &= run_cli(cli, dir, rate_cmd + " --csv " + csv2 + " --threads 8").exit_code == 0;
  if (csv_rows(csv1) != csv_rows(csv2)) {
    pass = false;
    detail << "rate CSV differs across thread counts; ";
  }

  std::filesystem::remove_all(dir);
  if (pass) detail << "disc compute, oracle, and rate CSV byte-identical";
  report(9, "determinism across reruns and --threads {1,4,8}", pass, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  criterion_exact_anchors();
  criterion_oracle_equivalence();
  criterion_geometry();
  criterion_rodrigues();
  criterion_truth_tables();
  criterion_jacobi_empirics();
  criterion_rates();
  criterion_prime_scan();
  criterion_determinism(argc > 1 ? argv[1] : nullptr);
  std::printf("%s: %d criterion(s) failed, total %.1fs\n", g_failures == 0 ? "OK" : "FAILED",
              g_failures, seconds_since(start));
  return g_failures == 0 ? 0 : 1;
}
