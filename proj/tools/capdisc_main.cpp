// capdisc: exact L2 single-radius ball discrepancy on compact two-point
// homogeneous spaces, with exact-arithmetic radius admissibility and
// Monte Carlo / quadrature cross-checks.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "capdisc/errors.hpp"
#include "capdisc/oracle.hpp"
#include "capdisc/pointsets.hpp"
#include "capdisc/report_json.hpp"
#include "capdisc/spaces.hpp"
#include "capdisc/spectral.hpp"
#include "capdisc/studies.hpp"
#include "capdisc/threads.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 2 usage, 3 numeric failure, 4 I/O failure.
enum ExitCode { kOk = 0, kUsage = 2, kNumeric = 3, kIo = 4 };

// Bad flag values (unknown space id, malformed fraction) are usage errors,
// distinct from domain errors raised by the computation itself.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
auto parse_arg(F&& f) {
  try {
    return f();
  } catch (const capdisc::domain_error& e) {
    throw usage_error(e.what());
  }
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::string g_command_line;

nlohmann::json make_manifest(const std::optional<std::string>& space,
                             const std::optional<std::uint64_t>& seed) {
  nlohmann::json manifest{{"version", kVersion},
                          {"command", g_command_line},
                          {"timestamp", iso_timestamp()}};
  if (space) manifest["space"] = *space;
  if (seed) manifest["seed"] = *seed;
  return manifest;
}

void emit_json(const std::optional<std::string>& out_path, nlohmann::json document) {
  const std::string text = document.dump(2) + "\n";
  if (!out_path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*out_path);
  if (!out) throw capdisc::io_error("cannot open output file " + *out_path);
  out << text;
  if (!out) throw capdisc::io_error("failed writing " + *out_path);
}

void emit_csv(const std::string& path, const std::string& body, const nlohmann::json& manifest) {
  std::ofstream out(path);
  if (!out) throw capdisc::io_error("cannot open output file " + path);
  out << "# version=" << manifest.at("version").get<std::string>() << "\n";
  out << "# command=" << manifest.at("command").get<std::string>() << "\n";
  out << "# timestamp=" << manifest.at("timestamp").get<std::string>() << "\n";
  out << body;
  if (!out) throw capdisc::io_error("failed writing " + path);
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  const auto fail = [&] {
    throw capdisc::domain_error("cannot parse sizes '" + text +
                                "' (use a:b:xK, a:b:+K, or a comma list)");
  };
  if (text.find(':') != std::string::npos) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos) fail();
    const int start = std::stoi(text.substr(0, first));
    const int stop = std::stoi(text.substr(first + 1, second - first - 1));
    const std::string step = text.substr(second + 1);
    if (step.size() < 2 || start < 1 || stop < start) fail();
    if (step[0] == 'x') {
      const int factor = std::stoi(step.substr(1));
      if (factor < 2) fail();
      for (long long n = start; n <= stop; n *= factor) sizes.push_back(static_cast<int>(n));
    } else if (step[0] == '+') {
      const int delta = std::stoi(step.substr(1));
      if (delta < 1) fail();
      for (long long n = start; n <= stop; n += delta) sizes.push_back(static_cast<int>(n));
    } else {
      fail();
    }
  } else {
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto comma = text.find(',', pos);
      const std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
      sizes.push_back(std::stoi(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (sizes.empty()) fail();
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) {
    if (i) g_command_line += ' ';
    g_command_line += argv[i];
  }

  CLI::App app{"Exact L2 single-radius ball (spherical-cap) discrepancy on compact "
               "two-point homogeneous spaces"};
  app.require_subcommand(1);
  int threads = 0;
  auto* threads_opt =
      app.add_option("--threads", threads, "cap worker threads (0 = hardware; "
                                           "CAPDISC_THREADS sets the default)");

  // Deferred command body; CLI11 parse errors exit with code 2 before it runs.
  std::function<void()> run;

  // ---- space info ----------------------------------------------------
  auto* space_cmd = app.add_subcommand("space", "space catalog");
  space_cmd->fallthrough();
  auto* info = space_cmd->add_subcommand("info", "spectral parameters and d_m, lambda_m table");
  info->fallthrough();
  auto info_space = std::make_shared<std::string>();
  auto info_out = std::make_shared<std::optional<std::string>>();
  info->add_option("space", *info_space, "space id (s<d>, rp<n>, cp<n>, hp<n>, op2)")->required();
  info->add_option("--out", *info_out, "write JSON here instead of stdout");
  info->callback([=, &run] {
    run = [=] {
      const auto space = parse_arg([&] { return capdisc::Space::parse(*info_space); });
      const capdisc::SpaceParams sp = space.params();
      nlohmann::json spectrum = nlohmann::json::array();
      for (int m = 0; m <= 20; ++m)
        spectrum.push_back({{"m", m},
                            {"lambda_m", capdisc::eigenvalue(space, m)},
                            {"d_m", capdisc::eigenspace_dim(space, m)}});
      nlohmann::json body{{"id", space.id()},
                          {"params",
                           {{"d", sp.d}, {"d0", sp.d0}, {"n", sp.n}, {"a", sp.a}, {"b", sp.b}}},
                          {"spectrum", std::move(spectrum)}};
      if (!space.supports_points()) body["note"] = "point operations unsupported on this space";
      emit_json(*info_out, {{"manifest", make_manifest(space.id(), std::nullopt)},
                            {"report", std::move(body)}});
    };
  });

  // ---- radius check ---------------------------------------------------
  auto* radius_cmd = app.add_subcommand("radius", "radius admissibility");
  radius_cmd->fallthrough();
  auto* check = radius_cmd->add_subcommand("check", "exact admissibility of r = p*pi/q");
  check->fallthrough();
  auto check_space = std::make_shared<std::string>();
  auto check_radius = std::make_shared<std::string>();
  auto check_alpha = std::make_shared<std::string>();
  auto check_beta = std::make_shared<std::string>();
  auto check_gegen = std::make_shared<std::string>();
  auto check_out = std::make_shared<std::optional<std::string>>();
  check->add_option("space", *check_space, "space id")->required();
  check->add_option("radius", *check_radius, "radius as p/q")->required();
  auto* alpha_opt = check->add_option("--alpha", *check_alpha, "rational Jacobi alpha (with --beta)");
  auto* beta_opt = check->add_option("--beta", *check_beta, "rational Jacobi beta");
  auto* gegen_opt =
      check->add_option("--gegenbauer", *check_gegen, "Gegenbauer lambda (fraction or 'irrational')");
  alpha_opt->needs(beta_opt);
  beta_opt->needs(alpha_opt);
  gegen_opt->excludes(alpha_opt);
  check->add_option("--out", *check_out, "write JSON here instead of stdout");
  check->callback([=, &run] {
    run = [=] {
      const auto space = parse_arg([&] { return capdisc::Space::parse(*check_space); });
      const auto radius = parse_arg([&] { return capdisc::RadiusPQ::parse(*check_radius); });
      nlohmann::json body{{"space", space.id()},
                          {"radius", {{"p", radius.p}, {"q", radius.q}}}};
      if (!check_gegen->empty()) {
        const auto lambda = parse_arg([&] {
          return *check_gegen == "irrational"
                     ? capdisc::GegenbauerLambda::irrational()
                     : capdisc::GegenbauerLambda{capdisc::Frac::parse(*check_gegen)};
        });
        body["lambda"] = *check_gegen;
        body["admissible"] = capdisc::gegenbadly(lambda, radius);
      } else if (!check_alpha->empty()) {
        const auto alpha = parse_arg([&] { return capdisc::Frac::parse(*check_alpha); });
        const auto beta = parse_arg([&] { return capdisc::Frac::parse(*check_beta); });
        const capdisc::Frac gamma = capdisc::gamma_of(alpha, beta);
        const capdisc::Frac delta = capdisc::delta_of(alpha);
        body["alpha"] = alpha.str();
        body["beta"] = beta.str();
        body["gamma"] = gamma.str();
        body["delta"] = delta.str();
        body["admissible"] = capdisc::jacobadly_from_alpha_beta(alpha, beta, radius);
      } else {
        body["residue_mod4"] = capdisc::space_radius_residue_mod4(space, radius);
        body["admissible"] = capdisc::space_radius_admissible(space, radius);
      }
      emit_json(*check_out, {{"manifest", make_manifest(space.id(), std::nullopt)},
                             {"report", std::move(body)}});
    };
  });

  // ---- disc compute / disc oracle --------------------------------------
  auto* disc_cmd = app.add_subcommand("disc", "L2 ball discrepancy");
  disc_cmd->fallthrough();
  auto* compute = disc_cmd->add_subcommand("compute", "exact spectral series");
  compute->fallthrough();
  auto comp_space = std::make_shared<std::string>();
  auto comp_points = std::make_shared<std::string>();
  auto comp_radius = std::make_shared<std::string>();
  auto comp_trunc = std::make_shared<int>(0);
  auto comp_terms = std::make_shared<bool>(false);
  auto comp_out = std::make_shared<std::optional<std::string>>();
  compute->add_option("--space", *comp_space, "space id")->required();
  compute->add_option("--points", *comp_points, "points file (JSON)")->required();
  compute->add_option("--radius", *comp_radius, "radius as p/q (exact path)")->required();
  compute->add_option("--L", *comp_trunc, "series truncation (default: auto)");
  compute->add_flag("--terms", *comp_terms, "include per-degree diagnostics");
  compute->add_option("--out", *comp_out, "write JSON here instead of stdout");
  compute->callback([=, &run] {
    run = [=] {
      const auto space = parse_arg([&] { return capdisc::Space::parse(*comp_space); });
      const auto radius = parse_arg([&] { return capdisc::RadiusPQ::parse(*comp_radius); });
      const capdisc::PointSet set = capdisc::read_points(*comp_points);
      if (set.space.id() != space.id())
        throw capdisc::domain_error("points file is for " + set.space.id() + ", not " +
                                    space.id());
      std::optional<int> truncation;
      if (*comp_trunc > 0) truncation = *comp_trunc;
      capdisc::DiscrepancyReport report =
          capdisc::discrepancy_l2(space, set.points, set.weights,
                                  capdisc::RadiusSpec::from_pq(radius), truncation, *comp_terms);
      if (set.provenance) report.seed = set.provenance->seed;
      emit_json(*comp_out, {{"manifest", make_manifest(space.id(), report.seed)},
                            {"report", capdisc::to_json(report)}});
    };
  });

  auto* oracle = disc_cmd->add_subcommand("oracle", "Monte Carlo geometric estimate");
  oracle->fallthrough();
  auto or_space = std::make_shared<std::string>();
  auto or_points = std::make_shared<std::string>();
  auto or_radius = std::make_shared<double>(0.0);
  auto or_samples = std::make_shared<long long>(100000);
  auto or_seed = std::make_shared<std::uint64_t>(0);
  auto or_out = std::make_shared<std::optional<std::string>>();
  oracle->add_option("--space", *or_space, "space id")->required();
  oracle->add_option("--points", *or_points, "points file (JSON)")->required();
  oracle->add_option("--radius-real", *or_radius, "radius in (0, pi); no admissibility semantics")
      ->required();
  oracle->add_option("--samples", *or_samples, "Monte Carlo centers");
  oracle->add_option("--seed", *or_seed, "RNG seed")->required();
  oracle->add_option("--out", *or_out, "write JSON here instead of stdout");
  oracle->callback([=, &run] {
    run = [=] {
      const auto space = parse_arg([&] { return capdisc::Space::parse(*or_space); });
      const capdisc::PointSet set = capdisc::read_points(*or_points);
      if (set.space.id() != space.id())
        throw capdisc::domain_error("points file is for " + set.space.id() + ", not " +
                                    space.id());
      const capdisc::McEstimate estimate = capdisc::mc_discrepancy(
          space, set.points, set.weights, *or_radius, *or_samples, *or_seed);
      emit_json(*or_out, {{"manifest", make_manifest(space.id(), *or_seed)},
                          {"report", capdisc::to_json(estimate)}});
    };
  });

  // ---- study rate / study prime-scan -----------------------------------
  auto* study_cmd = app.add_subcommand("study", "rate and scan experiments");
  study_cmd->fallthrough();
  auto* rate = study_cmd->add_subcommand("rate", "discrepancy rate across set sizes");
  rate->fallthrough();
  auto rate_space = std::make_shared<std::string>();
  auto rate_gen = std::make_shared<std::string>("uniform");
  auto rate_radius = std::make_shared<std::string>();
  auto rate_sizes = std::make_shared<std::string>();
  auto rate_seed = std::make_shared<std::uint64_t>(0);
  auto rate_out = std::make_shared<std::optional<std::string>>();
  auto rate_csv = std::make_shared<std::optional<std::string>>();
  rate->add_option("--space", *rate_space, "space id")->required();
  rate->add_option("--generator", *rate_gen, "uniform | fibonacci | spiral | cap_cluster");
  rate->add_option("--radius", *rate_radius, "radius as p/q")->required();
  rate->add_option("--Ns", *rate_sizes, "sizes, e.g. 128:4096:x2 or 128,256,512")->required();
  rate->add_option("--seed", *rate_seed, "RNG seed")->required();
  rate->add_option("--out", *rate_out, "write JSON here instead of stdout");
  rate->add_option("--csv", *rate_csv, "also write rows as CSV here");
  rate->callback([=, &run] {
    run = [=] {
      const auto space = parse_arg([&] { return capdisc::Space::parse(*rate_space); });
      const auto kind = parse_arg([&] { return capdisc::parse_generator(*rate_gen); });
      const auto radius = parse_arg([&] { return capdisc::RadiusPQ::parse(*rate_radius); });
      const auto sizes = parse_arg([&] { return parse_sizes(*rate_sizes); });
      const capdisc::RateStudyResult result =
          capdisc::rate_study(space, kind, radius, sizes, *rate_seed);
      const nlohmann::json manifest = make_manifest(space.id(), *rate_seed);
      if (*rate_csv) emit_csv(**rate_csv, capdisc::rate_study_csv(result), manifest);
      emit_json(*rate_out, {{"manifest", manifest}, {"report", capdisc::to_json(result)}});
    };
  });

  auto* prime = study_cmd->add_subcommand("prime-scan", "prime-radius discrepancy scan");
  prime->fallthrough();
  auto prime_space = std::make_shared<std::string>();
  auto prime_points = std::make_shared<std::string>();
  auto prime_margin = std::make_shared<double>(1.0 / 3.0);
  auto prime_ch = std::make_shared<double>(3.0);
  auto prime_out = std::make_shared<std::optional<std::string>>();
  prime->add_option("--space", *prime_space, "space id")->required();
  prime->add_option("--points", *prime_points, "points file (JSON)")->required();
  prime->add_option("--margin", *prime_margin, "ratio margin delta in (0, 1/2]");
  prime->add_option("--cH", *prime_ch, "scan constant c_H in H = ceil(c_H log N / log log N)");
  prime->add_option("--out", *prime_out, "write JSON here instead of stdout");
  prime->callback([=, &run] {
    run = [=] {
      const auto space = parse_arg([&] { return capdisc::Space::parse(*prime_space); });
      const capdisc::PointSet set = capdisc::read_points(*prime_points);
      if (set.space.id() != space.id())
        throw capdisc::domain_error("points file is for " + set.space.id() + ", not " +
                                    space.id());
      const capdisc::ScanResult result =
          capdisc::prime_scan(space, set, *prime_margin, *prime_ch);
      std::optional<std::uint64_t> seed;
      if (set.provenance) seed = set.provenance->seed;
      emit_json(*prime_out,
                {{"manifest", make_manifest(space.id(), seed)},
                 {"report", capdisc::to_json(result)}});
    };
  });

  // ---- jacobi scan -----------------------------------------------------
  auto* jacobi_cmd = app.add_subcommand("jacobi", "Jacobi polynomial scans");
  jacobi_cmd->fallthrough();
  auto* scan = jacobi_cmd->add_subcommand("scan", "min of sqrt(m) |P_m(cos p pi/q)|");
  scan->fallthrough();
  auto scan_alpha = std::make_shared<double>(0.0);
  auto scan_beta = std::make_shared<double>(0.0);
  auto scan_radius = std::make_shared<std::string>();
  auto scan_mmin = std::make_shared<int>(2);
  auto scan_mmax = std::make_shared<int>(5000);
  auto scan_out = std::make_shared<std::optional<std::string>>();
  scan->add_option("--alpha", *scan_alpha, "Jacobi alpha > -1")->required();
  scan->add_option("--beta", *scan_beta, "Jacobi beta > -1")->required();
  scan->add_option("--radius", *scan_radius, "radius as p/q")->required();
  scan->add_option("--mmin", *scan_mmin, "lowest degree (default 2)");
  scan->add_option("--mmax", *scan_mmax, "highest degree")->required();
  scan->add_option("--out", *scan_out, "write JSON here instead of stdout");
  scan->callback([=, &run] {
    run = [=] {
      const auto radius = parse_arg([&] { return capdisc::RadiusPQ::parse(*scan_radius); });
      const capdisc::JacobiScanResult result =
          capdisc::jacobadly_scan(*scan_alpha, *scan_beta, radius, *scan_mmin, *scan_mmax);
      const nlohmann::json body{{"alpha", *scan_alpha},
                                {"beta", *scan_beta},
                                {"radius", {{"p", radius.p}, {"q", radius.q}}},
                                {"m_min", *scan_mmin},
                                {"m_max", *scan_mmax},
                                {"min_scaled", result.min_scaled},
                                {"argmin", result.argmin}};
      emit_json(*scan_out,
                {{"manifest", make_manifest(std::nullopt, std::nullopt)}, {"report", body}});
    };
  });

  // ---- points generate ---------------------------------------------------
  auto* points_cmd = app.add_subcommand("points", "point-set generation");
  points_cmd->fallthrough();
  auto* gen = points_cmd->add_subcommand("generate", "deterministic point sets");
  gen->fallthrough();
  auto gen_space = std::make_shared<std::string>();
  auto gen_kind = std::make_shared<std::string>("uniform");
  auto gen_n = std::make_shared<int>(0);
  auto gen_seed = std::make_shared<std::uint64_t>(0);
  auto gen_cap = std::make_shared<double>(0.0);
  auto gen_out = std::make_shared<std::string>();
  gen->add_option("--space", *gen_space, "space id")->required();
  gen->add_option("--kind", *gen_kind, "uniform | fibonacci | spiral | cap_cluster");
  gen->add_option("--n", *gen_n, "number of points")->required();
  gen->add_option("--seed", *gen_seed, "RNG seed")->required();
  gen->add_option("--cap-radius", *gen_cap, "cap radius for cap_cluster (default pi/10)");
  gen->add_option("--out", *gen_out, "points file to write")->required();
  gen->callback([=, &run] {
    run = [=] {
      const auto space = parse_arg([&] { return capdisc::Space::parse(*gen_space); });
      const auto kind = parse_arg([&] { return capdisc::parse_generator(*gen_kind); });
      const capdisc::PointSet set = capdisc::generate(space, kind, *gen_n, *gen_seed, *gen_cap);
      nlohmann::json doc = capdisc::points_to_json(set);
      doc["manifest"] = make_manifest(space.id(), *gen_seed);
      std::ofstream out(*gen_out);
      if (!out) throw capdisc::io_error("cannot write points file " + *gen_out);
      out << doc.dump(2) << "\n";
      if (!out) throw capdisc::io_error("failed writing points file " + *gen_out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message / help
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  if (threads_opt->count() > 0) capdisc::set_max_threads(threads);
  try {
    run();
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const capdisc::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const capdisc::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const capdisc::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}
