#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "capdisc/specfun.hpp"

namespace capdisc {

/// A point, as a flat real coordinate vector over the base field:
///   sphere S^d        d+1 reals
///   P^n(R)            n+1 reals (one antipodal representative)
///   P^n(C)            n+1 complex entries, stored [re0, im0, re1, im1, ...]
///   P^n(H)            n+1 quaternions, stored in 4-real groups [w,x,y,z]
/// Always unit Euclidean norm.
using Point = Eigen::VectorXd;

enum class SpaceKind { Sphere, ProjReal, ProjComplex, ProjQuat, ProjOct };

/// Spectral parameters (d, d0, n, a, b) of a compact two-point homogeneous
/// space: real dimension d = n*d0 (d0 = d for the sphere), a = (d-2)/2,
/// b = (d0-2)/2.
struct SpaceParams {
  int d;
  int d0;
  int n;
  double a;
  double b;
};

/// One of the compact two-point homogeneous spaces: the sphere S^d (d >= 1)
/// or a projective space P^n(F) (n >= 2) over R, C, H, or the octonionic
/// plane P^2(O). The octonionic plane carries spectral parameters only; it
/// has no coordinate model here, so point operations reject it.
class Space {
 public:
  static Space sphere(int d);
  static Space proj_real(int n);
  static Space proj_complex(int n);
  static Space proj_quat(int n);
  static Space proj_oct();

  /// Parses "s<d>", "rp<n>", "cp<n>", "hp<n>", "op2".
  static Space parse(std::string_view id);

  SpaceKind kind() const { return kind_; }
  std::string id() const;
  SpaceParams params() const;

  bool supports_points() const { return kind_ != SpaceKind::ProjOct; }
  /// Number of reals in a coordinate vector.
  int coord_size() const;

 private:
  Space(SpaceKind kind, int rank) : kind_(kind), rank_(rank) {}
  SpaceKind kind_;
  int rank_;  // d for the sphere, n for projective spaces
};

/// cos of the geodesic distance, with diam(M) = pi normalization:
/// <x,y> on the sphere, 2 |<x,y>|^2 - 1 on projective spaces (inner product
/// over the base field). Always clamped to [-1, 1].
double cos_distance(const Space& space, const Point& x, const Point& y);

/// Geodesic distance rho = arccos(cos_distance) in [0, pi].
double distance(const Space& space, const Point& x, const Point& y);

/// `count` points distributed by the normalized Riemannian measure:
/// standard Gaussian coordinate vectors over the base field, normalized.
/// Deterministic per (seed, count) and independent of thread count (each
/// point draws from its own counter-based substream).
std::vector<Point> sample_uniform(const Space& space, std::uint64_t seed, int count);
/// Point `index` of the stream above; sample_uniform(seed, n)[i] == this.
Point sample_uniform_at(const Space& space, std::uint64_t seed, std::uint64_t index);

/// Normalized ball volume mu(B_r) = I_s(a+1, b+1) at s = sin^2(r/2).
double ball_volume(const Space& space, double r);

/// Radial density A(r) = c(a,b) (sin r/2)^{2a+1} (cos r/2)^{2b+1};
/// integrates to 1 over [0, pi].
double density(const Space& space, double r);

/// Validates norm within 1e-9 of 1, then renormalizes exactly.
Point normalize_point(const Space& space, Point coords);

// Space-level views of the spectral data.
inline double eigenspace_dim(const Space& space, int m) {
  const SpaceParams sp = space.params();
  return specfun::eigenspace_dim(sp.a, sp.b, m);
}
inline double eigenvalue(const Space& space, int m) {
  const SpaceParams sp = space.params();
  return specfun::eigenvalue(sp.a, sp.b, m);
}

}  // namespace capdisc
