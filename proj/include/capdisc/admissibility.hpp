#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "capdisc/spaces.hpp"

namespace capdisc {

/// Exact rational with 64-bit numerator/denominator. Always reduced,
/// denominator positive. Arithmetic is overflow-checked and throws
/// numeric_error instead of wrapping.
class Frac {
 public:
  Frac() : num_(0), den_(1) {}
  Frac(std::int64_t num, std::int64_t den = 1);
  /// Parses "n", "-n", "p/q".
  static Frac parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Frac operator+(const Frac& other) const;
  Frac operator-(const Frac& other) const;
  Frac operator*(const Frac& other) const;
  Frac operator-() const;
  bool operator==(const Frac& other) const = default;

  std::string str() const;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Exact radius r = p*pi/q with coprime 0 < p < q.
struct RadiusPQ {
  std::int64_t p;
  std::int64_t q;
  RadiusPQ(std::int64_t p_, std::int64_t q_);
  /// Parses "p/q".
  static RadiusPQ parse(std::string_view text);
  double value() const;  // p*pi/q
  std::string str() const;
  bool operator==(const RadiusPQ&) const = default;
};

/// Integer residue (d+d0+2) p - (d-1) q modulo 4; the radius p*pi/q is
/// admissible for the space exactly when the residue is nonzero.
int space_radius_residue_mod4(const Space& space, const RadiusPQ& radius);
bool space_radius_admissible(const Space& space, const RadiusPQ& radius);

/// gamma p + delta q not in Z, by exact fraction arithmetic.
bool jacobadly_condition(const Frac& gamma, const Frac& delta, const RadiusPQ& radius);

/// Builds gamma = (alpha+beta+1)/2 and delta = -(2 alpha - 1)/4 from
/// rational Jacobi parameters and tests the condition above. For a catalog
/// space with (alpha, beta) = (a+1, b+1) this coincides with
/// space_radius_admissible.
bool jacobadly_from_alpha_beta(const Frac& alpha, const Frac& beta, const RadiusPQ& radius);
Frac gamma_of(const Frac& alpha, const Frac& beta);
Frac delta_of(const Frac& alpha);

/// How gamma and delta relate to the rationals. Irrational values are
/// symbolic (a rational relation or full independence), never floats —
/// a float cannot be tested for rationality.
struct BothRational {
  Frac gamma;
  Frac delta;
};
struct IrrationalWithRelation {
  // j1*gamma + j2*delta + j3 = 0 with gamma, delta irrational and
  // gcd(j1, j2, j3) = 1, j1 != 0, j2 != 0.
  std::int64_t j1;
  std::int64_t j2;
  std::int64_t j3;
};
struct OneRational {
  bool gamma_is_rational;
  Frac value;
};
struct Independent {};
using GammaDeltaSpec = std::variant<BothRational, IrrationalWithRelation, OneRational, Independent>;

enum class Verdict { All, AllExcept, None, Some };

struct Classification {
  Verdict verdict;
  std::optional<RadiusPQ> witness;                              // Some
  std::optional<std::pair<std::int64_t, std::int64_t>> exceptional_ratio;  // AllExcept, reduced
};

/// Which coprime pairs (p, q) satisfy gamma p + delta q not in Z:
/// all of them, all except one ratio, none, or some (with a witness found
/// by complete search over p < q <= 4 den(gamma) den(delta)).
Classification classify(const GammaDeltaSpec& spec);

/// The same condition for a single radius.
bool condition_holds(const GammaDeltaSpec& spec, const RadiusPQ& radius);

std::string verdict_name(Verdict verdict);

/// Gegenbauer index: rational value or the symbolic irrational tag.
struct GegenbauerLambda {
  std::optional<Frac> rational;  // nullopt = irrational
  static GegenbauerLambda irrational() { return GegenbauerLambda{std::nullopt}; }
};

/// lambda p - (lambda-1)/2 q not in Z for rational lambda > -1/2;
/// for irrational lambda the condition holds except at p/q = 1/2.
bool gegenbadly(const GegenbauerLambda& lambda, const RadiusPQ& radius);

/// (p_n, q_n) with q_n the n-th prime and p_n = max(1, floor(q_n / 2)).
/// Every ratio p_n/q_n lies in [ratio_margin, 1 - ratio_margin]; violating
/// that margin is an error.
std::vector<RadiusPQ> prime_radius_sequence(double ratio_margin, int count);

/// First `count` primes, by sieve.
std::vector<std::int64_t> first_primes(int count);

}  // namespace capdisc
