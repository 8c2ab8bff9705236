#include "capdisc/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "capdisc/errors.hpp"
#include "capdisc/rng.hpp"

namespace capdisc {

namespace {
constexpr double kPi = std::numbers::pi;
}

Space Space::sphere(int d) {
  if (d < 1) throw domain_error("Space: sphere requires d >= 1");
  return Space(SpaceKind::Sphere, d);
}

Space Space::proj_real(int n) {
  if (n < 2) throw domain_error("Space: P^n(R) requires n >= 2");
  return Space(SpaceKind::ProjReal, n);
}

Space Space::proj_complex(int n) {
  if (n < 2) throw domain_error("Space: P^n(C) requires n >= 2");
  return Space(SpaceKind::ProjComplex, n);
}

Space Space::proj_quat(int n) {
  if (n < 2) throw domain_error("Space: P^n(H) requires n >= 2");
  return Space(SpaceKind::ProjQuat, n);
}

Space Space::proj_oct() { return Space(SpaceKind::ProjOct, 2); }

Space Space::parse(std::string_view id) {
  auto rank_of = [&](std::size_t prefix_len) {
    int value = 0;
    if (prefix_len >= id.size()) throw domain_error("unknown space id: " + std::string(id));
    for (std::size_t i = prefix_len; i < id.size(); ++i) {
      const char c = id[i];
      if (c < '0' || c > '9') throw domain_error("unknown space id: " + std::string(id));
      value = value * 10 + (c - '0');
      if (value > 1000) throw domain_error("space rank out of range: " + std::string(id));
    }
    return value;
  };
  if (id == "op2") return proj_oct();
  if (id.size() >= 2 && id[0] == 's') return sphere(rank_of(1));
  if (id.size() >= 3 && id.substr(0, 2) == "rp") return proj_real(rank_of(2));
  if (id.size() >= 3 && id.substr(0, 2) == "cp") return proj_complex(rank_of(2));
  if (id.size() >= 3 && id.substr(0, 2) == "hp") return proj_quat(rank_of(2));
  throw domain_error("unknown space id: " + std::string(id));
}

std::string Space::id() const {
  switch (kind_) {
    case SpaceKind::Sphere: return "s" + std::to_string(rank_);
    case SpaceKind::ProjReal: return "rp" + std::to_string(rank_);
    case SpaceKind::ProjComplex: return "cp" + std::to_string(rank_);
    case SpaceKind::ProjQuat: return "hp" + std::to_string(rank_);
    case SpaceKind::ProjOct: return "op2";
  }
  return {};
}

SpaceParams Space::params() const {
  int d = 0, d0 = 0, n = 0;
  switch (kind_) {
    case SpaceKind::Sphere: d = rank_; d0 = rank_; n = 1; break;
    case SpaceKind::ProjReal: n = rank_; d0 = 1; d = n; break;
    case SpaceKind::ProjComplex: n = rank_; d0 = 2; d = 2 * n; break;
    case SpaceKind::ProjQuat: n = rank_; d0 = 4; d = 4 * n; break;
    case SpaceKind::ProjOct: n = 2; d0 = 8; d = 16; break;
  }
  return SpaceParams{d, d0, n, 0.5 * (d - 2), 0.5 * (d0 - 2)};
}

int Space::coord_size() const {
  switch (kind_) {
    case SpaceKind::Sphere: return rank_ + 1;
    case SpaceKind::ProjReal: return rank_ + 1;
    case SpaceKind::ProjComplex: return 2 * (rank_ + 1);
    case SpaceKind::ProjQuat: return 4 * (rank_ + 1);
    case SpaceKind::ProjOct: return 0;
  }
  return 0;
}

namespace {

void require_point_support(const Space& space, const char* op) {
  if (!space.supports_points())
    throw domain_error(std::string(op) + ": point operations are unsupported on " + space.id());
}

void require_coords(const Space& space, const Point& x, const char* op) {
  if (x.size() != space.coord_size())
    throw domain_error(std::string(op) + ": expected " + std::to_string(space.coord_size()) +
                       " coordinates for " + space.id() + ", got " + std::to_string(x.size()));
}

// |sum_i conj(x_i) y_i|^2 over the base field. The conjugate sits on the
// left so that right scalar gauge x -> x*s drops out for quaternions too.
double inner_modulus_sq(const Space& space, const Point& x, const Point& y) {
  switch (space.kind()) {
    case SpaceKind::ProjReal:
      return std::pow(x.dot(y), 2);
    case SpaceKind::ProjComplex: {
      double re = 0.0, im = 0.0;
      for (Eigen::Index i = 0; i < x.size(); i += 2) {
        const double xr = x[i], xi = x[i + 1], yr = y[i], yi = y[i + 1];
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
      }
      return re * re + im * im;
    }
    case SpaceKind::ProjQuat: {
      double qw = 0.0, qx = 0.0, qy = 0.0, qz = 0.0;
      for (Eigen::Index i = 0; i < x.size(); i += 4) {
        const double aw = x[i], ax = -x[i + 1], ay = -x[i + 2], az = -x[i + 3];  // conj(x_i)
        const double bw = y[i], bx = y[i + 1], by = y[i + 2], bz = y[i + 3];
        qw += aw * bw - ax * bx - ay * by - az * bz;
        qx += aw * bx + ax * bw + ay * bz - az * by;
        qy += aw * by - ax * bz + ay * bw + az * bx;
        qz += aw * bz + ax * by - ay * bx + az * bw;
      }
      return qw * qw + qx * qx + qy * qy + qz * qz;
    }
    default:
      return 0.0;
  }
}

}  // namespace

double cos_distance(const Space& space, const Point& x, const Point& y) {
  require_point_support(space, "cos_distance");
  require_coords(space, x, "cos_distance");
  require_coords(space, y, "cos_distance");
  double c;
  if (space.kind() == SpaceKind::Sphere)
    c = x.dot(y);
  else
    c = 2.0 * inner_modulus_sq(space, x, y) - 1.0;
  return std::clamp(c, -1.0, 1.0);
}

double distance(const Space& space, const Point& x, const Point& y) {
  return std::acos(cos_distance(space, x, y));
}

Point sample_uniform_at(const Space& space, std::uint64_t seed, std::uint64_t index) {
  require_point_support(space, "sample_uniform");
  const int size = space.coord_size();
  GaussianStream gauss(substream(seed, index));
  Point coords(size);
  for (;;) {
    for (int i = 0; i < size; ++i) coords[i] = gauss.next();
    const double norm = coords.norm();
    if (norm > 1e-12) return coords / norm;
  }
}

std::vector<Point> sample_uniform(const Space& space, std::uint64_t seed, int count) {
  require_point_support(space, "sample_uniform");
  if (count < 1) throw domain_error("sample_uniform: count must be >= 1");
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    points.push_back(sample_uniform_at(space, seed, static_cast<std::uint64_t>(i)));
  return points;
}

double ball_volume(const Space& space, double r) {
  if (!(r >= 0.0 && r <= kPi))
    throw domain_error("ball_volume: r must lie in [0, pi], got " + std::to_string(r));
  const SpaceParams sp = space.params();
  const double s = std::pow(std::sin(0.5 * r), 2);
  return specfun::reg_inc_beta(s, sp.a + 1.0, sp.b + 1.0);
}

double density(const Space& space, double r) {
  if (!(r >= 0.0 && r <= kPi))
    throw domain_error("density: r must lie in [0, pi], got " + std::to_string(r));
  const SpaceParams sp = space.params();
  return specfun::c_ab(sp.a, sp.b) * std::pow(std::sin(0.5 * r), 2.0 * sp.a + 1.0) *
         std::pow(std::cos(0.5 * r), 2.0 * sp.b + 1.0);
}

Point normalize_point(const Space& space, Point coords) {
  require_point_support(space, "normalize_point");
  require_coords(space, coords, "normalize_point");
  const double norm = coords.norm();
  if (std::abs(norm - 1.0) > 1e-9)
    throw domain_error("point norm " + std::to_string(norm) + " deviates from 1 beyond 1e-9");
  // Leave already-normalized coordinates untouched so file round trips are
  // exact.
  if (std::abs(norm - 1.0) <= 1e-15) return coords;
  return coords / norm;
}

}  // namespace capdisc
