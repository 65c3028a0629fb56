#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omp.h>

#include <cmath>
#include <numeric>
#include <set>

#include "minkqm/contfrac.hpp"
#include "minkqm/errors.hpp"
#include "minkqm/kernels.hpp"
#include "minkqm/moments.hpp"
#include "minkqm/special.hpp"

using namespace minkqm;

namespace {

Fraction F(const char* s) { return Fraction::parse(s); }

bool same_interval(const kernels::IntervalVector& a, const kernels::IntervalVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!mpfr_equal_p(a.lo(i).get(), b.lo(i).get()) || !mpfr_equal_p(a.hi(i).get(), b.hi(i).get())) return false;
  }
  return true;
}

// All p/q in (0, 1] whose regular partial quotients sum to n, found by scanning denominators.
std::set<std::pair<unsigned long, unsigned long>> generation_by_scan(int n) {
  unsigned long fib_a = 1, fib_b = 1;
  for (int i = 1; i < n; ++i) {
    const unsigned long t = fib_a + fib_b;
    fib_a = fib_b;
    fib_b = t;
  }
  std::set<std::pair<unsigned long, unsigned long>> out;
  for (unsigned long q = 2; q <= fib_b; ++q) {
    for (unsigned long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const RegularCF cf = regular_expand(Fraction{mpz_class(p), mpz_class(q)});
      unsigned long s = 0;
      for (Digit d : cf.digits) s += d;
      if (s == static_cast<unsigned long>(n)) out.insert({p, q});
    }
  }
  return out;
}

const char* kReferenceDigits[] = {"0.3862943611", "0.0791502471", "0.0226858500", "0.0074990924"};

}  // namespace

TEST_CASE("farey generations") {
  CHECK(farey_generation(2) == std::vector<Fraction>{F("1/2")});
  const auto g3 = farey_generation(3);
  CHECK(std::set<Fraction>(g3.begin(), g3.end()) == std::set<Fraction>{F("1/3"), F("2/3")});
  const auto g4 = farey_generation(4);
  CHECK(std::set<Fraction>(g4.begin(), g4.end()) == std::set<Fraction>{F("1/4"), F("3/4"), F("2/5"), F("3/5")});
  CHECK_THROWS_AS(farey_generation(1), ResourceLimit);
  CHECK_THROWS_AS(farey_generation(27), ResourceLimit);

  for (int n = 2; n <= 13; ++n) {
    const auto gen = farey_generation(n);
    std::set<std::pair<unsigned long, unsigned long>> seen;
    for (const Fraction& x : gen) seen.insert({x.num().get_ui(), x.den().get_ui()});
    CHECK(gen.size() == (std::size_t{1} << (n - 2)));
    CHECK(seen.size() == gen.size());
    CHECK(seen == generation_by_scan(n));
  }
}

TEST_CASE("farey moments") {
  CHECK(farey_moment(1, 4) == F("1/2"));
  CHECK(farey_moment(2, 4) == F("229/800"));
  CHECK(farey_moment(1, 2) == F("1/2"));
  for (int n = 2; n <= 20; ++n) CHECK(farey_moment(1, n) == F("1/2"));
  // generation symmetry x -> 1 - x gives the same linear relation as for m_L
  for (int n = 3; n <= 14; ++n) {
    const Fraction m1 = farey_moment(1, n), m2 = farey_moment(2, n), m3 = farey_moment(3, n);
    CHECK(Fraction(3) * m2 - Fraction(2) * m3 == F("1/2"));
    CHECK(m1 - m2 > Fraction(0));
  }
  CHECK_THROWS_AS(farey_moment(0, 5), DomainError);
}

TEST_CASE("farey kernel matches direct rational summation") {
  for (unsigned L : {1u, 2u, 3u, 7u, 12u}) {
    for (unsigned n = 2; n <= 14; ++n) {
      CHECK(kernels::farey_power_sum(L, n) == kernels::farey_power_sum_reference(L, n));
    }
  }
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const Fraction one = kernels::farey_power_sum(5, 18);
  omp_set_num_threads(4);
  const Fraction four = kernels::farey_power_sum(5, 18);
  omp_set_num_threads(saved);
  CHECK(one == four);
}

TEST_CASE("transfer matrix") {
  const TransferMatrix m = build_transfer_matrix(10, Precision(1e-30));
  CHECK(m.dimension() == 10);
  CHECK(m(1, 1).overlaps(c_coeff(2, Precision(1e-30))));
  CHECK(std::fabs(m(1, 1).mid_double() - 0.164481) < 1e-6);
  CHECK(m(1, 2).overlaps(c_coeff(3, Precision(1e-30))));
  CHECK(std::fabs(m(1, 2).mid_double() - 0.0744263872) < 1e-10);
  // M[3,2] = c_5 binom(4,2)
  CHECK(m(3, 2).overlaps(c_coeff(5, Precision(1e-30)) * PrecReal(6, 128)));
  for (int q = 1; q <= 10; ++q) {
    for (int qp = 1; qp <= 10; ++qp) {
      CHECK(m(q, qp).is_positive());
      CHECK(m(q, qp).upper_double() < 1.0);
      CHECK(m(q, qp).rad_double() <= 1e-30);
    }
  }
  CHECK_THROWS_AS(m(0, 1), DomainError);
  CHECK_THROWS_AS(build_transfer_matrix(0, Precision(1e-10)), DomainError);
}

TEST_CASE("matvec kernel is exact-order and thread independent") {
  const TransferMatrix m = build_transfer_matrix(64, Precision(1e-20));
  kernels::IntervalVector v(64, 100), a(64, 100), b(64, 100), c(64, 100);
  for (int q = 1; q <= 64; ++q) v.set(static_cast<std::size_t>(q - 1), c_coeff(q, Precision(1e-25)));
  kernels::matvec_reference(m.intervals(), v, a);
  kernels::matvec(m.intervals(), v, b);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(3);
  kernels::matvec(m.intervals(), v, c);
  omp_set_num_threads(saved);
  CHECK(same_interval(a, b));
  CHECK(same_interval(a, c));
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(mpfr_lessequal_p(a.lo(i).get(), a.hi(i).get()));
    CHECK(mpfr_sgn(a.lo(i).get()) > 0);
  }
}

TEST_CASE("ten-digit series terms") {
  VSeries s(256, Precision(1e-15));
  PrecReal sum(0, 128);
  for (int l = 0; l <= 3; ++l) {
    const PrecReal v = s.term(1, l);
    CHECK(std::fabs(v.mid_double() - std::stod(kReferenceDigits[l])) <= 5e-10);
    sum += v;
  }
  CHECK(std::fabs(sum.mid_double() - 0.4956295506) <= 1e-9);
  CHECK(s.term(1, 0).overlaps(c_coeff(1, Precision(1e-20))));

  const PrecReal v1 = v_term(1, 1, 200, Precision(1e-12));
  CHECK(std::fabs(v1.mid_double() - 0.0791502471) <= 5e-10);
  CHECK(v1.rad_double() < 1e-11);
}

TEST_CASE("series terms: positivity, bound and monotone truncation") {
  VSeries coarse(32, Precision(1e-12)), fine(64, Precision(1e-12));
  for (int L = 1; L <= 5; ++L) {
    for (int l = 0; l <= 20; ++l) {
      const PrecReal a = coarse.term(L, l);
      const PrecReal b = fine.term(L, l);
      CHECK(b.is_positive());
      CHECK(b.upper_double() < std::ldexp(1.0, -l));
      CHECK(b.upper_double() >= a.lower_double());
    }
  }
  CHECK_THROWS_AS(coarse.term(0, 1), DomainError);
  CHECK_THROWS_AS(coarse.term(1, -1), DomainError);
}

TEST_CASE("digit sums") {
  CHECK(a_partial_direct(1, 0, 10).is_exact());
  CHECK(a_partial_direct(1, 0, 10).mid_double() == 0.0);
  for (int L = 1; L <= 4; ++L) {
    const PrecReal a1 = a_partial_direct(L, 1, 60);
    CHECK(a1.overlaps(c_coeff(L, Precision(1e-20))));
    CHECK(a1.rad_double() < 1e-14);
  }
  const PrecReal v1 = a_partial_direct(1, 2, 60) - a_partial_direct(1, 1, 60);
  CHECK(std::fabs(v1.mid_double() - 0.0791502471) <= 1e-9);
  CHECK_THROWS_AS(a_partial_direct(1, 5, 10), ResourceLimit);
  CHECK_THROWS_AS(a_partial_direct(1, 2, 2), DomainError);

  for (unsigned L : {1u, 3u}) {
    for (unsigned len = 1; len <= 3; ++len) {
      const auto fast = kernels::semiregular_power_sum(L, len, 30);
      const auto slow = kernels::semiregular_power_sum_reference(L, len, 30);
      CHECK(fast.count == slow.count);
      CHECK(std::fabs(fast.sum - slow.sum) <= 1e-15 * slow.sum);
      CHECK(std::fabs(fast.weight - slow.weight) <= 1e-15 * slow.weight);
      const auto cf = kernels::cylinder_power_sum(L, len, 30);
      const auto cs = kernels::cylinder_power_sum_reference(L, len, 30);
      CHECK(std::fabs(cf.sum - cs.sum) <= 1e-15 * cs.sum);
    }
  }
}

TEST_CASE("series terms equal digit-sum differences") {
  VSeries s(200, Precision(1e-12));
  for (int L = 1; L <= 3; ++L) {
    for (int l = 0; l <= 3; ++l) {
      const PrecReal diff = a_partial_direct(L, l + 1, 40) - a_partial_direct(L, l, 40);
      CHECK(s.term(L, l).overlaps(diff));
    }
  }
}

TEST_CASE("integral identity for the weights f") {
  for (int L = 1; L <= 3; ++L) {
    for (int l = 0; l <= 3; ++l) {
      const auto [lhs, rhs] = h_integral_identity_check(L, l, 40);
      CHECK(lhs.overlaps(rhs));
      CHECK(lhs.upper_double() < std::ldexp(1.0, -(l + 1)));
    }
  }
  const auto [lhs, rhs] = h_integral_identity_check(1, 0, 60);
  CHECK(std::fabs(lhs.mid_double() - 0.30685) < 1e-5);
  CHECK(lhs.overlaps(rhs));
  CHECK_THROWS_AS(h_integral_identity_check(1, 4, 20), ResourceLimit);
}

TEST_CASE("moments by the series") {
  const MomentEstimate m1 = moment(1, Precision(1e-6));
  CHECK(std::fabs(m1.value.mid_double() - 0.5) <= 1e-6);
  CHECK(m1.value.contains(F("1/2")));
  CHECK(*m1.params.lmax >= 25);
  CHECK(m1.params.heuristic);
  CHECK(m1.tail_bound <= 1e-6);

  SeriesMoments engine(Precision(1e-6));
  std::vector<PrecReal> ms;
  double previous = 1.0;
  for (int L = 1; L <= 6; ++L) {
    const MomentEstimate m = engine(L);
    CHECK(m.value.lower_double() > 0.0);
    CHECK(m.value.upper_double() < 1.0);
    CHECK(m.value.upper_double() < previous);
    previous = m.value.lower_double();
    ms.push_back(m.value);
  }
  for (const PrecReal& r : symmetry_residual(std::span<const PrecReal>(ms).first(5))) CHECK(r.contains_zero());

  const Fraction f24 = farey_moment(2, 24);
  const double farey2 = mpq_get_d(f24.raw().get_mpq_t());
  CHECK(std::fabs(farey2 - ms[1].mid_double()) <= 0.02);

  MomentOptions tight;
  tight.q_start = 2;
  tight.q_max = 4;
  CHECK_THROWS_AS(moment(1, Precision(1e-9), tight), PrecisionUnreachable);
}

TEST_CASE("symmetry residuals on exact inputs") {
  const std::vector<PrecReal> half{PrecReal::from_fraction(F("1/2"), 64)};
  const auto r = symmetry_residual(half);
  CHECK(r.size() == 1);
  CHECK(r[0].is_exact());
  CHECK(r[0].mid_double() == 0.0);
  // m_2 arbitrary, m_3 = (3 m_2 - 1/2)/2 satisfies the L = 3 relation
  const std::vector<PrecReal> ms{PrecReal::from_fraction(F("1/2"), 64), PrecReal::from_fraction(F("3/10"), 64),
                                 PrecReal::from_fraction(F("1/5"), 64)};
  const auto rs = symmetry_residual(ms);
  CHECK(rs[1].contains_zero());
  CHECK(rs[2].contains_zero());
  CHECK_THROWS_AS(symmetry_residual({}), DomainError);
}

TEST_CASE("truncation parameter listing") {
  TruncationParams p;
  p.lmax = 25;
  p.Q = 256;
  p.heuristic = true;
  CHECK(p.str() == "lmax=25;Q=256;heuristic");
  CHECK(parse_method("farey") == Method::farey);
  CHECK(to_string(Method::bessel) == "bessel");
  CHECK_THROWS_AS(parse_method("magic"), DomainError);
}
