#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "capdisc/spaces.hpp"

namespace capdisc {

enum class GeneratorKind { Uniform, Fibonacci, Spiral, CapCluster };

GeneratorKind parse_generator(std::string_view name);
std::string generator_name(GeneratorKind kind);

struct Provenance {
  std::string generator;
  std::uint64_t seed = 0;
  int n = 0;
};

/// Weighted configuration on a space. Weights are positive and sum to 1;
/// construction renormalizes when the deviation is at most 1e-6 and rejects
/// beyond that.
struct PointSet {
  Space space;
  std::vector<Point> points;
  std::vector<double> weights;
  std::optional<Provenance> provenance;

  int size() const { return static_cast<int>(points.size()); }
};

/// Builds a PointSet after validating coordinates and weights. An empty
/// weight span means equal weights 1/n.
PointSet make_point_set(const Space& space, std::vector<Point> points,
                        std::span<const double> weights = {},
                        std::optional<Provenance> provenance = std::nullopt);

/// Deterministic generators, equal weights 1/n:
///   uniform      any supported space, per-point counter substreams
///   fibonacci    S^2 only, golden-angle lattice with equal-area z steps
///   spiral       S^2 only, generalized spiral
///   cap_cluster  uniform law conditioned to the cap of radius cap_radius
///                around a fixed pole (an adversarial cluster)
PointSet generate(const Space& space, GeneratorKind kind, int n, std::uint64_t seed,
                  double cap_radius = 0.0);  // 0 -> default pi/10

/// Points-file JSON: {"space": "s2", "points": [[...], ...], "weights": [...]}
/// with complex coordinates flattened to [re, im] pairs and quaternions to
/// 4-real groups. A missing "weights" means equal weights; unknown keys are
/// ignored on read. Round-trips coordinates exactly.
PointSet read_points(const std::filesystem::path& path);
void write_points(const std::filesystem::path& path, const PointSet& set);

/// The file body above as a JSON value, for callers that add their own
/// run metadata before writing.
nlohmann::json points_to_json(const PointSet& set);

}  // namespace capdisc
