#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "minkqm/contfrac.hpp"
#include "minkqm/errors.hpp"

using namespace minkqm;

namespace {

Fraction F(const char* s) { return Fraction::parse(s); }

std::vector<Digit> D(std::initializer_list<Digit> d) { return d; }

}  // namespace

TEST_CASE("regular expansion examples") {
  CHECK(regular_expand(F("1/2")).digits == D({2}));
  CHECK(regular_expand(F("3/7")).digits == D({2, 3}));
  CHECK(regular_expand(F("2/5")).digits == D({2, 2}));
  CHECK(eval_regular(RegularCF{{2}}) == F("1/2"));
  CHECK(eval_regular(RegularCF{{2, 3}}) == F("3/7"));
  CHECK(eval_regular(RegularCF{{1, 1, 2}}) == F("3/5"));
  CHECK_THROWS_AS(regular_expand(F("0")), DomainError);
  CHECK_THROWS_AS(regular_expand(F("1")), DomainError);
  CHECK_THROWS_AS(regular_expand(F("-1/3")), DomainError);
  CHECK_THROWS_AS(eval_regular(RegularCF{}), DomainError);
  // Non-canonical input evaluates and re-expands canonically.
  CHECK(regular_expand(eval_regular(RegularCF{{2, 2, 1}})).digits == D({2, 3}));
}

TEST_CASE("semi-regular expansion examples") {
  CHECK(semiregular_expand(F("1/2")).digits == D({2}));
  CHECK(semiregular_expand(F("3/7")).digits == D({3, 2, 2}));
  CHECK(semiregular_expand(F("2/3")).digits == D({2, 2}));
  CHECK(semiregular_expand(F("1")).unit);
  CHECK(eval_semiregular(SemiRegularCF{{2}}) == F("1/2"));
  CHECK(eval_semiregular(SemiRegularCF{{3, 2, 2}}) == F("3/7"));
  CHECK(eval_semiregular(SemiRegularCF{{2, 2, 2}}) == F("3/4"));
  CHECK(eval_semiregular(SemiRegularCF{{}, true}) == F("1"));
  CHECK(SemiRegularCF{{}, true}.prefix(3) == D({2, 2, 2}));
  // Transient trailing 1: [[b..., 2, 1]] = [[b..., 1]] collapses to [[..., b-1]].
  CHECK(eval_semiregular(D({3, 2, 1})) == eval_semiregular(D({2})));
  CHECK_THROWS_AS(eval_semiregular(D({1, 1})), MalformedExpansion);
  CHECK_THROWS_AS(eval_semiregular(SemiRegularCF{}), DomainError);
  CHECK_THROWS_AS(semiregular_expand(F("3/2")), DomainError);
  CHECK_THROWS_AS(semiregular_expand(F("0")), DomainError);
}

TEST_CASE("all-two sequences evaluate to k/(k+1)") {
  for (std::size_t k = 1; k <= 64; ++k) {
    const std::vector<Digit> twos(k, 2);
    CHECK(eval_semiregular(twos) == Fraction(mpz_class(static_cast<unsigned long>(k)),
                                             mpz_class(static_cast<unsigned long>(k + 1))));
  }
}

TEST_CASE("round trips for every rational with denominator up to 1000") {
  std::size_t count = 0;
  for (unsigned long q = 2; q <= 1000; ++q) {
    for (unsigned long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Fraction x{mpz_class(p), mpz_class(q)};
      const RegularCF r = regular_expand(x);
      REQUIRE(r.canonical());
      REQUIRE(eval_regular(r) == x);
      const SemiRegularCF s = semiregular_expand(x);
      REQUIRE(s.canonical());
      REQUIRE(eval_semiregular(s) == x);
      ++count;
    }
  }
  CHECK(count == 304191);
}

TEST_CASE("round trips on random rationals with denominator up to 10^4") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<unsigned long> den(2, 10000);
  for (int i = 0; i < 20000; ++i) {
    const unsigned long q = den(rng);
    const unsigned long p = std::uniform_int_distribution<unsigned long>(1, q - 1)(rng);
    const Fraction x{mpz_class(p), mpz_class(q)};
    REQUIRE(eval_regular(regular_expand(x)) == x);
    REQUIRE(eval_semiregular(semiregular_expand(x)) == x);
  }
}

TEST_CASE("equivalence transform matches semi-regular evaluation") {
  CHECK(eval_angle(AngleForm{{F("1/2")}}) == F("1/2"));
  CHECK(eval_angle(AngleForm{{F("1/3"), F("1/6"), F("1/4")}}) == F("3/7"));
  CHECK(AngleForm::from_semiregular(D({3, 2, 2})).entries ==
        std::vector<Fraction>{F("1/3"), F("1/6"), F("1/4")});
  for (const char* d : {"1/5", "2/7", "9/10"}) {
    CHECK(eval_angle(AngleForm{{F("1"), F(d)}}) == (Fraction(1) - F(d)).reciprocal());
  }
  CHECK_THROWS_AS(eval_angle(AngleForm{{F("1/2"), F("1")}}), MalformedExpansion);
  CHECK_THROWS_AS(eval_angle(AngleForm{}), DomainError);

  // Exhaustive: 2 <= b_i <= 6, k <= 5.
  std::size_t checked = 0;
  for (std::size_t k = 1; k <= 5; ++k) {
    std::vector<Digit> b(k, 2);
    while (true) {
      REQUIRE(eval_angle(AngleForm::from_semiregular(b)) == eval_semiregular(b));
      ++checked;
      std::size_t i = 0;
      while (i < k && b[i] == 6) b[i++] = 2;
      if (i == k) break;
      ++b[i];
    }
  }
  CHECK(checked == 5 + 25 + 125 + 625 + 3125);
}

TEST_CASE("regular to semi-regular map") {
  CHECK(regular_to_semiregular(RegularCF{{2, 3}}, 3).digits == D({3, 2, 2}));
  CHECK(regular_to_semiregular(RegularCF{{2, 3}}, 3) == semiregular_expand(F("3/7")));
  CHECK_THROWS_AS(regular_to_semiregular(RegularCF{{2, 3}}, 4), NeedsMoreDigits);

  const std::vector<Digit> ones(7, 1);
  CHECK(regular_to_semiregular_prefix(ones, 4).digits == D({2, 3, 3, 3}));
  CHECK_THROWS_AS(regular_to_semiregular_prefix(std::vector<Digit>(6, 1), 4), NeedsMoreDigits);

  // [0;2] maps to the infinite twin [[3,2,2,...]] of 1/2.
  const SemiRegularCF half3 = regular_to_semiregular(RegularCF{{2}}, 3);
  CHECK(half3.digits == D({3, 2, 2}));
  CHECK(eval_semiregular(half3) == F("3/7"));
  Fraction prev_gap(1);
  for (std::size_t K = 1; K <= 40; ++K) {
    const Fraction v = eval_semiregular(regular_to_semiregular(RegularCF{{2}}, K));
    const Fraction gap = F("1/2") - v;
    CHECK(gap > Fraction(0));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  // The gap at K is 1/(2(2K+1)): convergence of the twin is only polynomial.
  CHECK(prev_gap == F("1/162"));
}

TEST_CASE("golden ratio stream converges") {
  const std::vector<Digit> ones(200, 1);
  // (sqrt 5 - 1)/2 lies in every cylinder; check the prefix value brackets it.
  for (std::size_t K : {5u, 20u, 60u}) {
    const auto cf = regular_to_semiregular_prefix(ones, K);
    const Fraction v = eval_semiregular(cf);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    const double err = std::fabs(mpq_get_d(v.raw().get_mpq_t()) - g);
    CHECK(err <= mpq_get_d(semiregular_cylinder_width(cf.digits).raw().get_mpq_t()) + 1e-15);
  }
}

TEST_CASE("prefix convergence is bounded by the cylinder width") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<unsigned long> den(2, 100000);
  for (int i = 0; i < 200; ++i) {
    const unsigned long q = den(rng);
    const unsigned long p = std::uniform_int_distribution<unsigned long>(1, q - 1)(rng);
    const Fraction x{mpz_class(p), mpz_class(q)};
    const RegularCF r = regular_expand(x);
    for (std::size_t K = 1; K <= 30; ++K) {
      SemiRegularCF s;
      try {
        s = regular_to_semiregular(r, K);
      } catch (const NeedsMoreDigits&) {
        // Even-length expansions stop at the finite form, which must be exact.
        CHECK(r.digits.size() % 2 == 0);
        CHECK(eval_semiregular(regular_to_semiregular(r, K - 1)) == x);
        break;
      }
      const Fraction gap = x - eval_semiregular(s);
      const Fraction width = semiregular_cylinder_width(s.digits);
      CHECK((gap.sign() >= 0 ? gap : -gap) <= width);
      CHECK(width <= Fraction(mpz_class(1), mpz_class(static_cast<unsigned long>(K + 1))));
    }
  }
}

TEST_CASE("text forms") {
  CHECK(RegularCF{{2, 3}}.str() == "[0;2,3]");
  CHECK(RegularCF::parse("[0;2,3]") == RegularCF{{2, 3}});
  CHECK(SemiRegularCF{{3, 2, 2}}.str() == "[[3,2,2]]");
  CHECK(SemiRegularCF::parse("[[3,2,2]]").digits == D({3, 2, 2}));
  CHECK(SemiRegularCF::parse("[[2,2,2,...]]").unit);
  CHECK(SemiRegularCF::parse(SemiRegularCF{{}, true}.str()).unit);
  CHECK_THROWS_AS(RegularCF::parse("[1;2]"), DomainError);
  CHECK_THROWS_AS(RegularCF::parse("[0;]"), DomainError);
  CHECK_THROWS_AS(RegularCF::parse("[0;2,,3]"), DomainError);
  CHECK_THROWS_AS(SemiRegularCF::parse("[[3,a]]"), DomainError);
}
