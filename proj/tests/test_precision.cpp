#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "minkqm/errors.hpp"
#include "minkqm/prec_real.hpp"
#include "minkqm/special.hpp"

using namespace minkqm;

namespace {

// Independent oracle: plain long double summation of sum_{n>=first} 2^{-n} n^{-s}.
long double series_oracle(int s, int first) {
  long double sum = 0.0L;
  for (int n = 400; n >= first; --n) sum += std::pow(2.0L, -n) * std::pow(static_cast<long double>(n), -s);
  return sum;
}

// |mid - v| <= rad + slack, evaluated in MPFR so the midpoint is not rounded to double first.
bool encloses(const PrecReal& x, long double v, long double slack = 0.0L) {
  BigFloat d(256);
  mpfr_set_ld(d.get(), v, MPFR_RNDN);
  mpfr_sub(d.get(), x.mid().get(), d.get(), MPFR_RNDN);
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  const long double ld_ulp = std::fabs(v) * 1.1e-19L;
  return mpfr_get_ld(d.get(), MPFR_RNDD) <= static_cast<long double>(x.rad_double()) + slack + ld_ulp;
}

}  // namespace

TEST_CASE("fraction parsing and canonical form") {
  CHECK(Fraction::parse("6/8") == Fraction(3) / Fraction(4));
  CHECK(Fraction::parse("-6/8").str() == "-3/4");
  CHECK(Fraction::parse(" 5 ").str() == "5");
  CHECK(Fraction::parse("2/-4").str() == "-1/2");
  CHECK_THROWS_AS(Fraction::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Fraction::parse("abc"), DomainError);
  CHECK_THROWS_AS(Fraction::parse("1/"), DomainError);
  CHECK(Fraction(0).pow(3) == Fraction(0));
  CHECK(Fraction::parse("2/3").pow(3).str() == "8/27");
}

TEST_CASE("dyadic rationals stay normalised") {
  DyadicRational a(mpz_class(6), 3);  // 6/8
  CHECK(a.num() == 3);
  CHECK(a.exponent() == 2);
  CHECK((a + DyadicRational::pow2(-2)).str() == "1");
  CHECK((DyadicRational::pow2(-1) - DyadicRational::pow2(-4)).str() == "7/16");
  CHECK(a.scaled(2).str() == "3");
  CHECK(a.scaled(-1).str() == "3/8");
  CHECK(DyadicRational::pow2(3).str() == "8");
}

TEST_CASE("polylog at one half") {
  const Precision eps(1e-12);
  const PrecReal li1 = polylog_half(1, eps);
  CHECK(li1.rad_double() <= 1e-12);
  CHECK(encloses(li1, std::numbers::ln2_v<long double>));
  CHECK(encloses(li1, series_oracle(1, 1), 1e-18L));

  const PrecReal li2 = polylog_half(2, eps);
  const long double closed = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 12.0L -
                             std::numbers::ln2_v<long double> * std::numbers::ln2_v<long double> / 2.0L;
  CHECK(encloses(li2, closed, 1e-18L));
  CHECK(li2.mid_double() == doctest::Approx(0.582240526465).epsilon(1e-12));

  // Decreasing toward the leading term 1/2; successive gaps are about 3^{-s}/8.
  const Precision fine(1e-30);
  PrecReal prev = polylog_half(1, fine);
  for (long s = 2; s <= 50; ++s) {
    const PrecReal v = polylog_half(s, fine);
    CHECK(mpfr_cmp(v.upper().get(), prev.lower().get()) < 0);
    CHECK(v.lower_double() >= 0.5);
    prev = v;
  }
  CHECK(prev.mid_double() == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(polylog_half(0, eps), DomainError);
  CHECK_THROWS_AS(polylog_half(-3, eps), DomainError);
}

TEST_CASE("c coefficients") {
  const Precision eps(1e-14);
  const PrecReal c1 = c_coeff(1, eps);
  CHECK(c1.rad_double() <= 1e-14);
  CHECK(encloses(c1, 2.0L * std::numbers::ln2_v<long double> - 1.0L, 1e-18L));
  CHECK(c1.mid_string(10) == "0.3862943611");

  const PrecReal c2 = c_coeff(2, eps);
  CHECK(encloses(c2, 2.0L * series_oracle(2, 2), 1e-18L));
  CHECK(c2.mid_double() == doctest::Approx(0.164481052930).epsilon(1e-11));

  const PrecReal c3 = c_coeff(3, eps);
  CHECK(encloses(c3, 2.0L * series_oracle(3, 2), 1e-18L));
  CHECK(c3.mid_double() == doctest::Approx(0.0744263872161).epsilon(1e-11));

  // 0 < c_s < 2^{-s}, decreasing, and c_s ~ 2^{-(s+1)}.
  double prev = 1.0;
  for (long s = 1; s <= 40; ++s) {
    const PrecReal c = c_coeff(s, eps);
    CHECK(c.is_positive());
    CHECK(c.upper_double() < std::ldexp(1.0, static_cast<int>(-s)));
    CHECK(c.mid_double() < prev);
    prev = c.mid_double();
    const double ratio = c.mid_double() / std::ldexp(1.0, static_cast<int>(-(s + 1)));
    if (s >= 20) CHECK(std::fabs(ratio - 1.0) < 0.1);
  }
  CHECK_THROWS_AS(c_coeff(0, eps), DomainError);
}

TEST_CASE("relative accuracy of c_s for large s") {
  for (long s : {100L, 400L, 1600L}) {
    const PrecReal c = c_coeff_relative(s, 120);
    BigFloat rel(64);
    mpfr_div(rel.get(), c.rad().get(), c.mid().get(), MPFR_RNDU);
    CHECK(rel.to_double() < 1e-35);
    // Leading term 2^{-(s+1)} dominates.
    const PrecReal lead = PrecReal::pow2(-(s + 1), 128);
    // c_s / 2^{-(s+1)} - 1 = (1/2)(2/3)^s + (1/4)(2/4)^s + ... lies in [0, (2/3)^s].
    const PrecReal excess = c / lead - PrecReal(1, 128);
    CHECK(excess.upper_double() <= std::pow(2.0 / 3.0, static_cast<double>(s)) + 1e-33);
    CHECK(excess.lower_double() >= -1e-33);
    if (s == 100) CHECK(excess.mid_double() / (0.5 * std::pow(2.0 / 3.0, 100.0)) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("scaled Bessel I1 series") {
  const Precision eps(1e-12);
  CHECK(bessel_i1_scaled(PrecReal(0), eps).mid_double() == 0.0);
  CHECK(bessel_i1_scaled(PrecReal(0), eps).is_exact());

  const PrecReal one = bessel_i1_scaled(PrecReal(1), eps);
  CHECK(one.rad_double() <= 1e-12);
  CHECK(encloses(one, 1.590636854637329063L, 1e-18L));

  const PrecReal quarter = bessel_i1_scaled(PrecReal::from_fraction(Fraction::parse("1/4"), 128), eps);
  CHECK(encloses(quarter, 0.282579551996242514L, 1e-18L));

  CHECK_THROWS_AS(bessel_i1_scaled(PrecReal(-1), eps), DomainError);

  // Term-by-term oracle and std::cyl_bessel_i agree with the ball on a spread of arguments.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 400.0);
  for (int i = 0; i < 50; ++i) {
    const double x = dist(rng);
    const PrecReal b = bessel_i1_scaled(PrecReal::from_double(x, 64), Precision(1e-20));
    long double term = x, sum = x;
    for (int q = 1; q < 400; ++q) {
      term *= x / (static_cast<long double>(q) * (q + 1));
      sum += term;
    }
    CHECK(std::fabs(b.mid_double() / static_cast<double>(sum) - 1.0) < 1e-14);
    const double ref = std::sqrt(x) * std::cyl_bessel_i(1.0, 2.0 * std::sqrt(x));
    CHECK(std::fabs(b.mid_double() / ref - 1.0) < 1e-12);
    CHECK(std::fabs(bessel_i1_ratio(x) * x / ref - 1.0) < 1e-12);
  }
  CHECK(bessel_i1_ratio(0.0) == 1.0);
}

TEST_CASE("ball arithmetic encloses exact results") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-500, 500), den(1, 500);
  for (int i = 0; i < 300; ++i) {
    const Fraction a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    for (mpfr_prec_t prec : {24, 53, 200}) {
      const PrecReal A = PrecReal::from_fraction(a, prec), B = PrecReal::from_fraction(b, prec),
                     C = PrecReal::from_fraction(c, prec);
      const Fraction exact_expr = a * b + c - a;
      CHECK((A * B + C - A).contains(exact_expr));
      if (!c.is_zero()) CHECK(((A - B) / C).contains((a - b) / c));
      CHECK(pow(A, 5).contains(a.pow(5)));
    }
    // Same composite at two precisions: balls overlap.
    const auto eval = [&](mpfr_prec_t prec) {
      PrecReal x = PrecReal::from_fraction(a, prec);
      PrecReal y = PrecReal::from_fraction(b, prec);
      return exp(x / PrecReal(1000, prec)) * sqrt(abs(y) + PrecReal(1, prec)) -
             log(PrecReal(2, prec) + x * x);
    };
    CHECK(eval(40).overlaps(eval(300)));
  }
}

TEST_CASE("decimal formatting") {
  const PrecReal c1 = c_coeff(1, Precision(1e-12));
  const std::string s = c1.mid_string();
  CHECK(s.rfind("0.386294361119", 0) == 0);
  CHECK(PrecReal::from_decimal("0.125", 64).is_exact());
  CHECK(PrecReal::from_decimal("0.1", 64).contains(Fraction::parse("1/10")));
  CHECK_THROWS_AS(PrecReal::from_decimal("0.1x", 64), DomainError);
  PrecReal half = PrecReal::pow2(-1);
  half.add_error(std::ldexp(1.0, -10));
  CHECK(half.mid_string() == "0.500");
  CHECK(half.radius_string() == "9.77e-04");
  CHECK(half.str() == "0.500 ± 9.77e-04");
  CHECK_THROWS_AS(PrecReal(1) / PrecReal::from_decimal("0", 64).add_error(0.5), DomainError);
}
