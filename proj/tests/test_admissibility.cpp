#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "capdisc/admissibility.hpp"
#include "capdisc/errors.hpp"
#include "capdisc/rng.hpp"
#include "test_util.hpp"

using namespace capdisc;

TEST_CASE("Frac: reduction, parsing, arithmetic") {
  CHECK(Frac(6, 4) == Frac(3, 2));
  CHECK(Frac(-6, -4) == Frac(3, 2));
  CHECK(Frac(6, -4) == Frac(-3, 2));
  CHECK(Frac::parse("3/2") == Frac(3, 2));
  CHECK(Frac::parse("-1/4") == Frac(-1, 4));
  CHECK(Frac::parse("5") == Frac(5));
  CHECK((Frac(1, 2) + Frac(1, 3)) == Frac(5, 6));
  CHECK((Frac(1, 2) - Frac(1, 2)) == Frac(0));
  CHECK((Frac(2, 3) * Frac(3, 4)) == Frac(1, 2));
  CHECK(Frac(7, 1).is_integer());
  CHECK(!Frac(7, 2).is_integer());
  CHECK(Frac(3, 2).str() == "3/2");
  CHECK_THROWS_AS(Frac(1, 0), domain_error);
  CHECK_THROWS_AS(Frac::parse("a/b"), domain_error);
  // Overflow must raise, never wrap.
  const Frac huge(static_cast<std::int64_t>(3037000500LL), 1);
  CHECK_THROWS_AS(huge * huge * huge, numeric_error);
}

TEST_CASE("RadiusPQ validation") {
  CHECK_NOTHROW(RadiusPQ(1, 2));
  CHECK_THROWS_AS(RadiusPQ(2, 2), domain_error);
  CHECK_THROWS_AS(RadiusPQ(0, 2), domain_error);
  CHECK_THROWS_AS(RadiusPQ(3, 2), domain_error);
  CHECK_THROWS_AS(RadiusPQ(2, 4), domain_error);
  CHECK(RadiusPQ::parse("2/5").value() == doctest::Approx(2.0 * std::numbers::pi / 5.0));
  CHECK_THROWS_AS(RadiusPQ::parse("2/4"), domain_error);  // not silently reduced
  CHECK_THROWS_AS(RadiusPQ::parse("3"), domain_error);
}

TEST_CASE("space admissibility: mod-4 anchors") {
  const Space s2 = Space::sphere(2);
  CHECK_FALSE(space_radius_admissible(s2, RadiusPQ(1, 2)));  // residue 4 - 2 = ... 0 mod 4
  CHECK(space_radius_residue_mod4(s2, RadiusPQ(1, 2)) == 0);
  CHECK(space_radius_admissible(s2, RadiusPQ(1, 3)));
  CHECK(space_radius_residue_mod4(s2, RadiusPQ(1, 3)) == 3);
  CHECK(space_radius_admissible(s2, RadiusPQ(1, 4)));
  CHECK(space_radius_admissible(s2, RadiusPQ(2, 3)));

  // S^3: admissible exactly when q is odd.
  const Space s3 = Space::sphere(3);
  for (std::int64_t q = 2; q <= 40; ++q)
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      CHECK(space_radius_admissible(s3, RadiusPQ(p, q)) == (q % 2 == 1));
    }

  // d = 1 (mod 4) spaces: never admissible.
  for (const Space& space : {Space::sphere(5), Space::sphere(9), Space::proj_real(5)})
    for (std::int64_t q = 2; q <= 50; ++q)
      for (std::int64_t p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        CHECK_FALSE(space_radius_admissible(space, RadiusPQ(p, q)));
      }
}

TEST_CASE("jacobadly condition: exact fraction arithmetic") {
  CHECK(jacobadly_condition(Frac(3, 2), Frac(-1, 4), RadiusPQ(1, 3)));   // 3/4
  CHECK_FALSE(jacobadly_condition(Frac(3, 2), Frac(-1, 4), RadiusPQ(1, 2)));  // 1
  // Integer gamma and delta never satisfy the condition.
  for (std::int64_t q = 2; q <= 20; ++q)
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      CHECK_FALSE(jacobadly_condition(Frac(2), Frac(-1), RadiusPQ(p, q)));
    }
}

TEST_CASE("jacobadly from (alpha, beta)") {
  CHECK(gamma_of(Frac(1), Frac(1)) == Frac(3, 2));
  CHECK(delta_of(Frac(1)) == Frac(-1, 4));
  CHECK_FALSE(jacobadly_from_alpha_beta(Frac(1), Frac(1), RadiusPQ(1, 2)));
  CHECK(jacobadly_from_alpha_beta(Frac(1), Frac(1), RadiusPQ(1, 4)));  // 3/2 - 1 = 1/2
  // P^2(C) ball parameters (alpha, beta) = (2, 1): both routes reject 1/4.
  CHECK_FALSE(jacobadly_from_alpha_beta(Frac(2), Frac(1), RadiusPQ(1, 4)));
  CHECK_FALSE(space_radius_admissible(Space::proj_complex(2), RadiusPQ(1, 4)));
  CHECK_THROWS_AS(jacobadly_from_alpha_beta(Frac(-1), Frac(0), RadiusPQ(1, 2)), domain_error);
}

TEST_CASE("consistency: space test equals gamma/delta test on the catalog") {
  for (const Space& space : testing::catalog()) {
    const SpaceParams sp = space.params();
    // alpha = a + 1 = d/2, beta = b + 1 = d0/2 as exact fractions.
    const Frac alpha(sp.d, 2);
    const Frac beta(sp.d0, 2);
    for (std::int64_t q = 2; q <= 40; ++q)
      for (std::int64_t p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        const RadiusPQ radius(p, q);
        CHECK(space_radius_admissible(space, radius) ==
              jacobadly_from_alpha_beta(alpha, beta, radius));
      }
  }
}

TEST_CASE("classify: the six cases") {
  // Integers: the condition never holds.
  const Classification none = classify(BothRational{Frac(2), Frac(-1)});
  CHECK(none.verdict == Verdict::None);

  // Rational non-integers: a witness exists; the search finds (1,3) first.
  const Classification some = classify(BothRational{Frac(3, 2), Frac(-1, 4)});
  CHECK(some.verdict == Verdict::Some);
  REQUIRE(some.witness.has_value());
  CHECK(*some.witness == RadiusPQ(1, 3));
  CHECK(condition_holds(GammaDeltaSpec(BothRational{Frac(3, 2), Frac(-1, 4)}), *some.witness));

  // Shared divisor in (j1, j2): condition holds everywhere.
  const Classification shared = classify(IrrationalWithRelation{2, 4, 1});
  CHECK(shared.verdict == Verdict::All);
  CHECK(condition_holds(GammaDeltaSpec(IrrationalWithRelation{2, 4, 1}), RadiusPQ(1, 2)));

  // Coprime (j1, j2): holds everywhere except p/q = j1/j2.
  const Classification except = classify(IrrationalWithRelation{1, 3, 7});
  CHECK(except.verdict == Verdict::AllExcept);
  REQUIRE(except.exceptional_ratio.has_value());
  CHECK(except.exceptional_ratio->first == 1);
  CHECK(except.exceptional_ratio->second == 3);
  CHECK_FALSE(condition_holds(GammaDeltaSpec(IrrationalWithRelation{1, 3, 7}), RadiusPQ(1, 3)));
  CHECK(condition_holds(GammaDeltaSpec(IrrationalWithRelation{1, 3, 7}), RadiusPQ(1, 2)));
  // Sign normalization: (-1, -3) names the same ratio.
  const Classification negated = classify(IrrationalWithRelation{-1, -3, 7});
  REQUIRE(negated.exceptional_ratio.has_value());
  CHECK(negated.exceptional_ratio->second == 3);
  CHECK_FALSE(condition_holds(GammaDeltaSpec(IrrationalWithRelation{-1, -3, 7}), RadiusPQ(1, 3)));

  CHECK(classify(GammaDeltaSpec(OneRational{true, Frac(1, 2)})).verdict == Verdict::All);
  CHECK(classify(GammaDeltaSpec(Independent{})).verdict == Verdict::All);
  CHECK(condition_holds(GammaDeltaSpec(Independent{}), RadiusPQ(1, 2)));

  CHECK_THROWS_AS(classify(IrrationalWithRelation{2, 4, 2}), domain_error);  // common divisor
  CHECK_THROWS_AS(classify(IrrationalWithRelation{0, 3, 1}), domain_error);  // j1 = 0
}

TEST_CASE("classify(BothRational) is None exactly when both are integers") {
  SplitMix64 gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t gn = static_cast<std::int64_t>(gen.next_u64() % 17) - 8;
    const std::int64_t gd = 1 + static_cast<std::int64_t>(gen.next_u64() % 4);
    const std::int64_t dn = static_cast<std::int64_t>(gen.next_u64() % 17) - 8;
    const std::int64_t dd = 1 + static_cast<std::int64_t>(gen.next_u64() % 4);
    const Frac gamma(gn, gd);
    const Frac delta(dn, dd);
    const Classification c = classify(BothRational{gamma, delta});
    if (gamma.is_integer() && delta.is_integer())
      CHECK(c.verdict == Verdict::None);
    else
      CHECK(c.verdict == Verdict::Some);
  }
}

TEST_CASE("gegenbadly") {
  // Odd integer lambda: never.
  for (std::int64_t q = 2; q <= 20; ++q)
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      CHECK_FALSE(gegenbadly(GegenbauerLambda{Frac(3)}, RadiusPQ(p, q)));
    }
  // lambda = 3/2 at (1,3): 3/2 - (1/4)*3 = 3/4, not an integer.
  CHECK(gegenbadly(GegenbauerLambda{Frac(3, 2)}, RadiusPQ(1, 3)));
  // Irrational lambda: everything except p/q = 1/2.
  CHECK_FALSE(gegenbadly(GegenbauerLambda::irrational(), RadiusPQ(1, 2)));
  CHECK(gegenbadly(GegenbauerLambda::irrational(), RadiusPQ(1, 3)));
  CHECK_THROWS_AS(gegenbadly(GegenbauerLambda{Frac(-1, 2)}, RadiusPQ(1, 3)), domain_error);
  CHECK_THROWS_AS(gegenbadly(GegenbauerLambda{Frac(-2)}, RadiusPQ(1, 3)), domain_error);
}

TEST_CASE("prime radius sequence") {
  const auto radii = prime_radius_sequence(1.0 / 3.0, 3);
  REQUIRE(radii.size() == 3);
  CHECK(radii[0] == RadiusPQ(1, 2));
  CHECK(radii[1] == RadiusPQ(1, 3));
  CHECK(radii[2] == RadiusPQ(2, 5));

  const auto longer = prime_radius_sequence(1.0 / 3.0, 2000);
  for (const RadiusPQ& r : longer) {
    CHECK(std::gcd(r.p, r.q) == 1);
    const double ratio = static_cast<double>(r.p) / static_cast<double>(r.q);
    CHECK(ratio >= 1.0 / 3.0 - 1e-12);
    CHECK(ratio <= 2.0 / 3.0 + 1e-12);
  }

  // A margin that q = 3 cannot meet is rejected.
  CHECK_THROWS_AS(prime_radius_sequence(0.45, 3), domain_error);
  CHECK_THROWS_AS(prime_radius_sequence(0.6, 1), domain_error);
  CHECK_NOTHROW(prime_radius_sequence(0.5, 1));  // only q = 2, ratio exactly 1/2
}

TEST_CASE("prime growth bound q_n <= 2 n log(n+1) for n >= 2") {
  // The n = 1 case (q_1 = 2 > 2 log 2) is the lone exception to the stated
  // bound, so the check starts at n = 2.
  const int count = 10'000;
  const auto primes = first_primes(count);
  REQUIRE(static_cast<int>(primes.size()) == count);
  CHECK(primes[0] == 2);
  CHECK(primes[1] == 3);
  for (int n = 2; n <= count; ++n)
    CHECK(static_cast<double>(primes[static_cast<std::size_t>(n - 1)]) <=
          2.0 * n * std::log(n + 1.0));
}
