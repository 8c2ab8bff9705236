#include "capdisc/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "capdisc/errors.hpp"

namespace capdisc {

namespace {

std::int64_t checked(__int128 v, const char* op) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw numeric_error(std::string("Frac: 64-bit overflow in ") + op);
  return static_cast<std::int64_t>(v);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return std::gcd(a, b);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Frac::Frac(std::int64_t num, std::int64_t den) {
  if (den == 0) throw domain_error("Frac: zero denominator");
  if (den < 0) {
    num = checked(-static_cast<__int128>(num), "negation");
    den = checked(-static_cast<__int128>(den), "negation");
  }
  const std::int64_t g = gcd64(std::abs(num), den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Frac Frac::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto to_int = [](std::string_view part) {
    if (part.empty()) throw domain_error("Frac: empty component in fraction");
    std::size_t i = 0;
    bool negative = false;
    if (part[0] == '-' || part[0] == '+') {
      negative = part[0] == '-';
      i = 1;
      if (part.size() == 1) throw domain_error("Frac: malformed fraction");
    }
    __int128 value = 0;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9')
        throw domain_error("Frac: malformed fraction component '" + std::string(part) + "'");
      value = value * 10 + (part[i] - '0');
      if (value > std::numeric_limits<std::int64_t>::max())
        throw numeric_error("Frac: fraction component overflows 64 bits");
    }
    return negative ? -static_cast<std::int64_t>(value) : static_cast<std::int64_t>(value);
  };
  if (slash == std::string_view::npos) return Frac(to_int(text));
  return Frac(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
}

Frac Frac::operator+(const Frac& other) const {
  __int128 num = static_cast<__int128>(num_) * other.den_ +
                 static_cast<__int128>(other.num_) * den_;
  __int128 den = static_cast<__int128>(den_) * other.den_;
  // Reduce in 128 bits before the 64-bit range check.
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Frac(checked(num, "+"), checked(den, "+"));
}

Frac Frac::operator-() const { return Frac(checked(-static_cast<__int128>(num_), "neg"), den_); }

Frac Frac::operator-(const Frac& other) const { return *this + (-other); }

Frac Frac::operator*(const Frac& other) const {
  // Cross-reduce before multiplying to keep intermediates small.
  const std::int64_t g1 = gcd64(std::abs(num_), other.den_);
  const std::int64_t g2 = gcd64(std::abs(other.num_), den_);
  const __int128 num = static_cast<__int128>(num_ / g1) * (other.num_ / g2);
  const __int128 den = static_cast<__int128>(den_ / g2) * (other.den_ / g1);
  return Frac(checked(num, "*"), checked(den, "*"));
}

std::string Frac::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

RadiusPQ::RadiusPQ(std::int64_t p_, std::int64_t q_) : p(p_), q(q_) {
  if (!(0 < p && p < q)) throw domain_error("RadiusPQ: require 0 < p < q");
  if (gcd64(p, q) != 1)
    throw domain_error("RadiusPQ: p and q must be coprime, got " + std::to_string(p) + "/" +
                       std::to_string(q));
}

RadiusPQ RadiusPQ::parse(std::string_view text) {
  // No Frac round trip: "2/4" must be rejected as non-coprime, not reduced.
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw domain_error("radius must be written p/q, got '" + std::string(text) + "'");
  const Frac p = Frac::parse(text.substr(0, slash));
  const Frac q = Frac::parse(text.substr(slash + 1));
  if (!p.is_integer() || !q.is_integer())
    throw domain_error("radius must be a ratio of integers, got '" + std::string(text) + "'");
  return RadiusPQ(p.num(), q.num());
}

double RadiusPQ::value() const {
  return std::numbers::pi * static_cast<double>(p) / static_cast<double>(q);
}

std::string RadiusPQ::str() const { return std::to_string(p) + "/" + std::to_string(q); }

int space_radius_residue_mod4(const Space& space, const RadiusPQ& radius) {
  const SpaceParams sp = space.params();
  const __int128 value = static_cast<__int128>(sp.d + sp.d0 + 2) * radius.p -
                         static_cast<__int128>(sp.d - 1) * radius.q;
  int residue = static_cast<int>(value % 4);
  if (residue < 0) residue += 4;
  return residue;
}

bool space_radius_admissible(const Space& space, const RadiusPQ& radius) {
  return space_radius_residue_mod4(space, radius) != 0;
}

bool jacobadly_condition(const Frac& gamma, const Frac& delta, const RadiusPQ& radius) {
  const Frac value = gamma * Frac(radius.p) + delta * Frac(radius.q);
  return !value.is_integer();
}

Frac gamma_of(const Frac& alpha, const Frac& beta) {
  return (alpha + beta + Frac(1)) * Frac(1, 2);
}

Frac delta_of(const Frac& alpha) { return -(alpha * Frac(2) - Frac(1)) * Frac(1, 4); }

bool jacobadly_from_alpha_beta(const Frac& alpha, const Frac& beta, const RadiusPQ& radius) {
  if (alpha.num() <= -alpha.den() || beta.num() <= -beta.den())
    throw domain_error("jacobadly_from_alpha_beta: require alpha > -1 and beta > -1");
  return jacobadly_condition(gamma_of(alpha, beta), delta_of(alpha), radius);
}

namespace {

Classification classify_both_rational(const BothRational& spec) {
  if (spec.gamma.is_integer() && spec.delta.is_integer())
    return Classification{Verdict::None, std::nullopt, std::nullopt};
  // The condition is periodic in p and q with period 4 den(gamma) den(delta),
  // so scanning that box is a complete search.
  const std::int64_t bound =
      checked(static_cast<__int128>(4) * spec.gamma.den() * spec.delta.den(), "witness bound");
  for (std::int64_t q = 2; q <= std::max<std::int64_t>(bound, 2); ++q)
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const RadiusPQ candidate(p, q);
      if (jacobadly_condition(spec.gamma, spec.delta, candidate))
        return Classification{Verdict::Some, candidate, std::nullopt};
    }
  // Unreachable per Proposition-level case analysis, but keep the honest answer.
  return Classification{Verdict::None, std::nullopt, std::nullopt};
}

void validate_relation(const IrrationalWithRelation& rel) {
  if (rel.j1 == 0 || rel.j2 == 0)
    throw domain_error(
        "IrrationalWithRelation: j1 and j2 must be nonzero when gamma and delta are irrational");
  const std::int64_t g = std::gcd(std::gcd(std::abs(rel.j1), std::abs(rel.j2)), std::abs(rel.j3));
  if (g != 1)
    throw domain_error("IrrationalWithRelation: j1, j2, j3 must have no common divisor");
}

}  // namespace

Classification classify(const GammaDeltaSpec& spec) {
  if (std::holds_alternative<Independent>(spec))
    return Classification{Verdict::All, std::nullopt, std::nullopt};
  if (std::holds_alternative<OneRational>(spec))
    return Classification{Verdict::All, std::nullopt, std::nullopt};
  if (const auto* rel = std::get_if<IrrationalWithRelation>(&spec)) {
    validate_relation(*rel);
    const std::int64_t h = std::gcd(std::abs(rel->j1), std::abs(rel->j2));
    if (h > 1) {
      // gcd(j1,j2,j3) = 1 forces h to not divide j3, so -j3/h is never an
      // integer and the condition survives even at p/q = j1/j2.
      return Classification{Verdict::All, std::nullopt, std::nullopt};
    }
    std::int64_t rp = rel->j1, rq = rel->j2;
    if (rq < 0) {
      rp = -rp;
      rq = -rq;
    }
    return Classification{Verdict::AllExcept, std::nullopt, std::make_pair(rp, rq)};
  }
  return classify_both_rational(std::get<BothRational>(spec));
}

bool condition_holds(const GammaDeltaSpec& spec, const RadiusPQ& radius) {
  if (std::holds_alternative<Independent>(spec)) return true;
  if (std::holds_alternative<OneRational>(spec)) return true;
  if (const auto* rel = std::get_if<IrrationalWithRelation>(&spec)) {
    validate_relation(*rel);
    const std::int64_t h = std::gcd(std::abs(rel->j1), std::abs(rel->j2));
    if (h > 1) return true;  // -j3/h is not an integer (see classify)
    // Fails exactly at p/q = j1/j2 (same sign); p, q > 0 by construction.
    const __int128 lhs = static_cast<__int128>(radius.p) * rel->j2;
    const __int128 rhs = static_cast<__int128>(radius.q) * rel->j1;
    return lhs != rhs;
  }
  const auto& both = std::get<BothRational>(spec);
  return jacobadly_condition(both.gamma, both.delta, radius);
}

std::string verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::All: return "all";
    case Verdict::AllExcept: return "all_except";
    case Verdict::None: return "none";
    case Verdict::Some: return "some";
  }
  return {};
}

bool gegenbadly(const GegenbauerLambda& lambda, const RadiusPQ& radius) {
  if (!lambda.rational.has_value()) {
    // Irrational index: the condition holds except at p/q = 1/2.
    return !(radius.p == 1 && radius.q == 2);
  }
  const Frac& lam = *lambda.rational;
  if (static_cast<__int128>(2) * lam.num() + lam.den() <= 0)
    throw domain_error("gegenbadly: require lambda > -1/2");
  const Frac value = lam * Frac(radius.p) - (lam - Frac(1)) * Frac(1, 2) * Frac(radius.q);
  return !value.is_integer();
}

std::vector<std::int64_t> first_primes(int count) {
  if (count < 1) throw domain_error("first_primes: count must be >= 1");
  // Sieve bound comfortably above the n-th prime (Rosser-style margin).
  const double n = static_cast<double>(count);
  const std::size_t limit = static_cast<std::size_t>(
      std::max(32.0, std::ceil(2.0 * n * std::log(n + 1.0)) + 16.0));
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::int64_t> primes;
  primes.reserve(static_cast<std::size_t>(count));
  for (std::size_t i = 2; i <= limit && primes.size() < static_cast<std::size_t>(count); ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::int64_t>(i));
    for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  if (primes.size() < static_cast<std::size_t>(count))
    throw numeric_error("first_primes: sieve bound too small");  // margin above makes this unreachable
  return primes;
}

std::vector<RadiusPQ> prime_radius_sequence(double ratio_margin, int count) {
  if (!(ratio_margin > 0.0 && ratio_margin <= 0.5))
    throw domain_error("prime_radius_sequence: ratio_margin must lie in (0, 1/2]");
  if (count < 1) throw domain_error("prime_radius_sequence: count must be >= 1");
  const std::vector<std::int64_t> primes = first_primes(count);
  std::vector<RadiusPQ> radii;
  radii.reserve(primes.size());
  for (const std::int64_t q : primes) {
    const std::int64_t p = std::max<std::int64_t>(1, q / 2);
    const double ratio = static_cast<double>(p) / static_cast<double>(q);
    if (ratio < ratio_margin - 1e-15 || ratio > 1.0 - ratio_margin + 1e-15)
      throw domain_error("prime_radius_sequence: ratio " + std::to_string(p) + "/" +
                         std::to_string(q) + " violates margin " + std::to_string(ratio_margin));
    radii.emplace_back(p, q);  // coprime automatically: q prime, p < q
  }
  return radii;
}

}  // namespace capdisc
