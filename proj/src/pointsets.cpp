#include "capdisc/pointsets.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "capdisc/errors.hpp"
#include "capdisc/rng.hpp"

namespace capdisc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDefaultCapRadius = kPi / 10.0;

std::vector<double> validated_weights(std::span<const double> weights, int n) {
  if (weights.empty()) return std::vector<double>(static_cast<std::size_t>(n), 1.0 / n);
  if (static_cast<int>(weights.size()) != n)
    throw domain_error("weights length " + std::to_string(weights.size()) +
                       " does not match point count " + std::to_string(n));
  double sum = 0.0;
  for (const double w : weights) {
    if (!(w > 0.0)) throw domain_error("weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw domain_error("weights sum to " + std::to_string(sum) + ", beyond the 1e-6 tolerance");
  std::vector<double> out(weights.begin(), weights.end());
  for (double& w : out) w /= sum;
  return out;
}

}  // namespace

GeneratorKind parse_generator(std::string_view name) {
  if (name == "uniform") return GeneratorKind::Uniform;
  if (name == "fibonacci") return GeneratorKind::Fibonacci;
  if (name == "spiral") return GeneratorKind::Spiral;
  if (name == "cap_cluster") return GeneratorKind::CapCluster;
  throw domain_error("unknown generator '" + std::string(name) + "'");
}

std::string generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Uniform: return "uniform";
    case GeneratorKind::Fibonacci: return "fibonacci";
    case GeneratorKind::Spiral: return "spiral";
    case GeneratorKind::CapCluster: return "cap_cluster";
  }
  return {};
}

PointSet make_point_set(const Space& space, std::vector<Point> points,
                        std::span<const double> weights, std::optional<Provenance> provenance) {
  if (points.empty()) throw domain_error("point set must contain at least one point");
  for (Point& pt : points) pt = normalize_point(space, std::move(pt));
  std::vector<double> w = validated_weights(weights, static_cast<int>(points.size()));
  return PointSet{space, std::move(points), std::move(w), std::move(provenance)};
}

namespace {

std::vector<Point> fibonacci_sphere(int n) {
  // Golden-angle lattice: equal-area midpoint steps in z, golden rotation in
  // the azimuth.
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double theta = golden_angle * i;
    Point pt(3);
    pt << radius * std::cos(theta), radius * std::sin(theta), z;
    points.push_back(std::move(pt));
  }
  return points;
}

std::vector<Point> spiral_sphere(int n) {
  // Generalized spiral of Rakhmanov-Saff-Zhou.
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    Point pt(3);
    pt << 0.0, 0.0, 1.0;
    points.push_back(std::move(pt));
    return points;
  }
  double phi = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double h = -1.0 + 2.0 * (k - 1.0) / (n - 1.0);
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - h * h));
    if (k == 1 || k == n)
      phi = 0.0;
    else
      phi += 3.6 / std::sqrt(static_cast<double>(n)) / sin_theta;
    Point pt(3);
    pt << sin_theta * std::cos(phi), sin_theta * std::sin(phi), h;
    points.push_back(std::move(pt));
  }
  return points;
}

Point pole_of(const Space& space) {
  Point pole = Point::Zero(space.coord_size());
  pole[0] = 1.0;
  return pole;
}

std::vector<Point> cap_cluster(const Space& space, int n, std::uint64_t seed, double cap_radius) {
  const Point pole = pole_of(space);
  const double cos_cap = std::cos(cap_radius);
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(n));
  // Rejection per point inside its own substream keeps the output
  // independent of thread count and of the other points.
  constexpr int kMaxRejections = 2'000'000;
  for (int i = 0; i < n; ++i) {
    GaussianStream gauss(substream(seed, static_cast<std::uint64_t>(i)));
    const int size = space.coord_size();
    Point candidate(size);
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
      for (int c = 0; c < size; ++c) candidate[c] = gauss.next();
      const double norm = candidate.norm();
      if (norm <= 1e-12) continue;
      candidate /= norm;
      if (cos_distance(space, candidate, pole) > cos_cap) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw numeric_error("cap_cluster: cap of radius " + std::to_string(cap_radius) +
                          " is too small to sample by rejection on " + space.id());
    points.push_back(candidate);
  }
  return points;
}

}  // namespace

PointSet generate(const Space& space, GeneratorKind kind, int n, std::uint64_t seed,
                  double cap_radius) {
  if (n < 1) throw domain_error("generate: n must be >= 1");
  if (!space.supports_points())
    throw domain_error("generate: point operations are unsupported on " + space.id());
  const bool sphere2 = space.kind() == SpaceKind::Sphere && space.params().d == 2;
  if ((kind == GeneratorKind::Fibonacci || kind == GeneratorKind::Spiral) && !sphere2)
    throw domain_error("generate: " + generator_name(kind) + " points exist only on s2");
  if (cap_radius == 0.0) cap_radius = kDefaultCapRadius;
  if (kind == GeneratorKind::CapCluster && !(cap_radius > 0.0 && cap_radius <= kPi))
    throw domain_error("generate: cap radius must lie in (0, pi]");

  std::vector<Point> points;
  switch (kind) {
    case GeneratorKind::Uniform: points = sample_uniform(space, seed, n); break;
    case GeneratorKind::Fibonacci: points = fibonacci_sphere(n); break;
    case GeneratorKind::Spiral: points = spiral_sphere(n); break;
    case GeneratorKind::CapCluster: points = cap_cluster(space, n, seed, cap_radius); break;
  }
  return make_point_set(space, std::move(points), {},
                        Provenance{generator_name(kind), seed, n});
}

PointSet read_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open points file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw io_error("malformed points file " + path.string() + ": " + e.what());
  }
  try {
    if (!doc.contains("space") || !doc.contains("points"))
      throw domain_error("points file must contain 'space' and 'points'");
    const Space space = Space::parse(doc.at("space").get<std::string>());
    std::vector<Point> points;
    for (const auto& row : doc.at("points")) {
      Point pt(static_cast<Eigen::Index>(row.size()));
      Eigen::Index i = 0;
      for (const auto& value : row) pt[i++] = value.get<double>();
      points.push_back(std::move(pt));
    }
    std::vector<double> weights;
    if (doc.contains("weights")) weights = doc.at("weights").get<std::vector<double>>();
    std::optional<Provenance> provenance;
    if (doc.contains("provenance")) {
      const auto& p = doc.at("provenance");
      provenance = Provenance{p.value("generator", std::string("unknown")),
                              p.value("seed", std::uint64_t{0}), p.value("n", 0)};
    }
    return make_point_set(space, std::move(points), weights, std::move(provenance));
  } catch (const nlohmann::json::exception& e) {
    throw io_error("malformed points file " + path.string() + ": " + e.what());
  }
}

nlohmann::json points_to_json(const PointSet& set) {
  nlohmann::json doc;
  doc["space"] = set.space.id();
  auto rows = nlohmann::json::array();
  for (const Point& pt : set.points) {
    auto row = nlohmann::json::array();
    for (Eigen::Index i = 0; i < pt.size(); ++i) row.push_back(pt[i]);
    rows.push_back(std::move(row));
  }
  doc["points"] = std::move(rows);
  doc["weights"] = set.weights;
  if (set.provenance) {
    doc["provenance"] = {{"generator", set.provenance->generator},
                         {"seed", set.provenance->seed},
                         {"n", set.provenance->n}};
  }
  return doc;
}

void write_points(const std::filesystem::path& path, const PointSet& set) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write points file " + path.string());
  out << points_to_json(set).dump(2) << "\n";
  if (!out) throw io_error("failed writing points file " + path.string());
}

}  // namespace capdisc
