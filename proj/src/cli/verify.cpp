#include <chrono>
#include <cmath>
#include <algorithm>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "minkqm/cli.hpp"
#include "minkqm/conjecture.hpp"
#include "minkqm/contfrac.hpp"
#include "minkqm/errors.hpp"
#include "minkqm/kernels.hpp"
#include "minkqm/minkowski.hpp"
#include "minkqm/moments.hpp"
#include "minkqm/quadrature.hpp"
#include "minkqm/special.hpp"

namespace minkqm::cli {

namespace {

Fraction rational(unsigned long p, unsigned long q) { return Fraction{mpz_class(p), mpz_class(q)}; }

Fraction random_rational(std::mt19937_64& rng, unsigned long max_den) {
  const unsigned long q = std::uniform_int_distribution<unsigned long>(2, max_den)(rng);
  const unsigned long p = std::uniform_int_distribution<unsigned long>(1, q - 1)(rng);
  return rational(p, q);
}

double factorial(int n) { return std::tgamma(n + 1.0); }

bool c_coefficients_bounded_and_decreasing() {
  double previous = 1.0;
  for (long s = 1; s <= 60; ++s) {
    const PrecReal c = c_coeff_relative(s, 120);
    if (!c.is_positive() || !(c.upper_double() < std::ldexp(1.0, static_cast<int>(-s)))) return false;
    if (!(c.upper_double() < previous)) return false;
    previous = c.lower_double();
  }
  return true;
}

bool ball_soundness_two_precisions() {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Fraction a = random_rational(rng, 1000), b = random_rational(rng, 1000);
    auto expr = [&](mpfr_prec_t prec) {
      const PrecReal x = PrecReal::from_fraction(a, prec), y = PrecReal::from_fraction(b, prec);
      return exp(x * y - y / x) + sqrt(x + y) * log(y + PrecReal(1, prec)) - pow(x, 3);
    };
    if (!expr(53).overlaps(expr(200))) return false;
  }
  return true;
}

bool bessel_series_termwise() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 30.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng);
    long double term = x, sum = x;
    for (int q = 2; q < 400; ++q) {
      term *= static_cast<long double>(x) / (static_cast<long double>(q) * (q - 1));
      sum += term;
    }
    const PrecReal b = bessel_i1_scaled(PrecReal::from_double(x, 64), Precision(1e-12));
    if (std::fabs(b.mid_double() - static_cast<double>(sum)) > 1e-15 * static_cast<double>(sum) + 1e-12) return false;
  }
  return true;
}

bool round_trips(unsigned long max_den) {
  for (unsigned long q = 2; q <= max_den; ++q) {
    for (unsigned long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Fraction x = rational(p, q);
      if (eval_regular(regular_expand(x)) != x) return false;
      if (eval_semiregular(semiregular_expand(x)) != x) return false;
    }
  }
  return true;
}

bool angle_identity() {
  for (std::size_t k = 1; k <= 5; ++k) {
    std::vector<Digit> b(k, 2);
    while (true) {
      if (eval_angle(AngleForm::from_semiregular(b)) != eval_semiregular(b)) return false;
      std::size_t i = k;
      while (i-- > 0) {
        if (++b[i] <= 6) break;
        b[i] = 2;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  return true;
}

bool ramharter_prefixes() {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const Fraction x = random_rational(rng, 100000);
    const RegularCF r = regular_expand(x);
    for (std::size_t K = 1; K <= 30; ++K) {
      SemiRegularCF s;
      try {
        s = regular_to_semiregular(r, K);
      } catch (const NeedsMoreDigits&) {
        break;
      }
      const Fraction gap = x - eval_semiregular(s);
      const Fraction width = semiregular_cylinder_width(s.digits);
      if ((gap.sign() >= 0 ? gap : -gap) > width) return false;
      if (width > rational(1, K + 1)) return false;
    }
  }
  return true;
}

bool all_twos() {
  for (unsigned long k = 1; k <= 64; ++k) {
    if (eval_semiregular(std::vector<Digit>(k, 2)) != rational(k, k + 1)) return false;
  }
  return true;
}

bool prop1(unsigned long max_den) {
  for (unsigned long q = 2; q <= max_den; ++q) {
    for (unsigned long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Fraction x = rational(p, q);
      if (question_mark(x) != question_mark_semiregular(x)) return false;
    }
  }
  return true;
}

template <class Pred>
bool on_random_rationals(int count, unsigned long max_den, unsigned seed, Pred pred) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    if (!pred(random_rational(rng, max_den))) return false;
  }
  return true;
}

bool telescoping(const Fraction& x) {
  const SemiRegularCF cf = semiregular_expand(x);
  DyadicRational sum;
  for (std::size_t l = 0; l <= cf.digits.size(); ++l) sum += weight_h(cf, l);
  return sum == DyadicRational(1) - question_mark(x);
}

bool h_nonnegative(const Fraction& x) {
  const SemiRegularCF cf = semiregular_expand(x);
  for (std::size_t l = 0; l <= cf.digits.size() + 1; ++l) {
    if (weight_h(cf, l) < DyadicRational(0)) return false;
  }
  return true;
}

bool monotone_question_mark() {
  std::mt19937_64 rng(3);
  std::vector<Fraction> xs;
  for (int i = 0; i < 500; ++i) xs.push_back(random_rational(rng, 100000));
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] != xs[i - 1] && !(question_mark(xs[i - 1]) < question_mark(xs[i]))) return false;
  }
  return true;
}

}  // namespace

Report verify_all(const RunConfig& cfg, std::ostream* progress) {
  Report r;
  r.command = "verify all";
  r.inputs["precision"] = cfg.precision;
  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = body();
    } catch (const std::exception& e) {
      pass = false;
      if (progress) *progress << "  error in " << name << ": " << e.what() << '\n';
    }
    if (progress) {
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      *progress << (pass ? "  ok   " : "  FAIL ") << name << " (" << static_cast<int>(s * 1000) << " ms)\n";
    }
    r.checks.push_back({name, pass});
  };

  check("c_s in (0, 2^-s) and decreasing, s <= 60", c_coefficients_bounded_and_decreasing);
  check("ball evaluation overlaps at 53 and 200 bits", ball_soundness_two_precisions);
  check("scaled Bessel series matches termwise summation", bessel_series_termwise);

  check("regular and semi-regular round trips, q <= 300", [] { return round_trips(300); });
  check("angle form equals semi-regular value, b <= 6, k <= 5", angle_identity);
  check("mapped prefixes within cylinder width <= 1/(K+1)", ramharter_prefixes);
  check("[[2_k]] = k/(k+1), k <= 64", all_twos);

  check("regular and semi-regular ?(x) agree, q <= 300", [] { return prop1(300); });
  check("?(x) + ?(1-x) = 1", [] {
    return on_random_rationals(2000, 1000000, 1, [](const Fraction& x) {
      return question_mark(x) + question_mark(Fraction(1) - x) == DyadicRational(1);
    });
  });
  check("?(x/(x+1)) = ?(x)/2", [] {
    return on_random_rationals(2000, 1000000, 2, [](const Fraction& x) {
      return question_mark(x / (x + Fraction(1))) == question_mark(x).scaled(-1);
    });
  });
  check("sum of h_l(x) = 1 - ?(x)", [] { return on_random_rationals(2000, 1000000, 4, telescoping); });
  check("h_l(x) >= 0", [] { return on_random_rationals(2000, 1000000, 6, h_nonnegative); });
  check("? strictly increasing", monotone_question_mark);

  check("Farey m_1 = 1/2 exactly, n <= 20", [] {
    for (int n = 2; n <= 20; ++n) {
      if (farey_moment(1, n) != Fraction(1) / Fraction(2)) return false;
    }
    return true;
  });
  VSeries coarse(64, Precision(1e-12)), fine(128, Precision(1e-12));
  check("0 < V_l < 2^-l, L <= 5, l <= 20", [&] {
    for (int L = 1; L <= 5; ++L) {
      for (int l = 0; l <= 20; ++l) {
        const PrecReal v = fine.term(L, l);
        if (!v.is_positive() || !(v.upper_double() < std::ldexp(1.0, -l))) return false;
      }
    }
    return true;
  });
  check("V_l nondecreasing in Q", [&] {
    for (int L = 1; L <= 5; ++L) {
      for (int l = 0; l <= 20; ++l) {
        if (fine.term(L, l).upper_double() < coarse.term(L, l).lower_double()) return false;
      }
    }
    return true;
  });
  check("V_l = A_{l+1} - A_l, l <= 3, L <= 3", [] {
    VSeries s(200, Precision(1e-12));
    for (int L = 1; L <= 3; ++L) {
      for (int l = 0; l <= 3; ++l) {
        if (!s.term(L, l).overlaps(a_partial_direct(L, l + 1, 40) - a_partial_direct(L, l, 40))) return false;
      }
    }
    return true;
  });
  check("integral identity for f_{l+1}, l <= 3", [] {
    for (int L = 1; L <= 3; ++L) {
      for (int l = 0; l <= 3; ++l) {
        const auto [lhs, rhs] = h_integral_identity_check(L, l, 40);
        if (!lhs.overlaps(rhs) || !(lhs.upper_double() < std::ldexp(1.0, -(l + 1)))) return false;
      }
    }
    return true;
  });
  std::vector<PrecReal> moments;
  check("m_L in (0,1) and decreasing, L <= 6", [&] {
    SeriesMoments engine(Precision(1e-6));
    double previous = 1.0;
    for (int L = 1; L <= 6; ++L) {
      const PrecReal v = engine(L).value;
      if (!(v.lower_double() > 0.0) || !(v.upper_double() < previous)) return false;
      previous = v.lower_double();
      moments.push_back(v);
    }
    return true;
  });
  check("symmetry residuals contain 0, L <= 5", [&] {
    if (moments.size() < 5) return false;
    for (const PrecReal& res : symmetry_residual(std::span<const PrecReal>(moments).first(5))) {
      if (!res.contains_zero()) return false;
    }
    return true;
  });

  check("quadrature overlaps (L-1)! V_l, L <= 3, l <= 2", [] {
    VSeries s(256, Precision(1e-14));
    for (int L = 1; L <= 3; ++L) {
      for (int l = 0; l <= 2; ++l) {
        if (!theorem_term(L, l).overlaps(s.term(L, l) * PrecReal::from_double(factorial(L - 1), 64))) return false;
      }
    }
    return true;
  });
  check("quadrature l = 0 overlaps (L-1)! c_L, L <= 6", [] {
    for (int L = 1; L <= 6; ++L) {
      const PrecReal ref = c_coeff(L, Precision(1e-20)) * PrecReal::from_double(factorial(L - 1), 64);
      if (!theorem_term(L, 0).overlaps(ref, 1e-8)) return false;
    }
    return true;
  });
  check("quadrature stable under smaller X and coarser nodes", [] {
    for (int l = 0; l <= 2; ++l) {
      const PrecReal full = theorem_term(2, l);
      QuadConfig small;
      small.X = 16;
      const PrecReal part = theorem_term(2, l, small);
      if (full.lower_double() < part.lower_double() - part.rad_double() - full.rad_double()) return false;
      QuadConfig coarse_cfg;
      coarse_cfg.nodes_per_axis = 9;
      coarse_cfg.tolerance = 1e-9;
      if (!theorem_term(2, l, coarse_cfg).overlaps(full)) return false;
    }
    return true;
  });

  check("Q_n'(-1), n <= 8, equals the nine reference values", [] {
    const std::vector<Fraction> expect{Fraction::parse("1/2"),  Fraction::parse("-1/2"),  Fraction(1),
                                       Fraction::parse("-5/2"), Fraction::parse("25/4"),  Fraction(-16),
                                       Fraction(43),            Fraction::parse("-971/8"), Fraction::parse("1417/4")};
    return q_prime_at_minus_one(8) == expect;
  });
  check("Q_n coefficients dyadic, n <= 20", [] {
    for (const LaurentPoly& p : q_sequence(20)) {
      if (!p.dyadic()) return false;
    }
    return true;
  });
  check("Q_n incremental equals from scratch, n <= 12", [] {
    const auto seq = q_sequence(12);
    for (int n = 0; n <= 12; ++n) {
      if (!(seq[static_cast<std::size_t>(n)] == q_polynomial_from_scratch(n))) return false;
    }
    return true;
  });

  check("parallel kernels equal serial references", [] {
    if (kernels::farey_power_sum(3, 16) != kernels::farey_power_sum_reference(3, 16)) return false;
    const auto a = kernels::semiregular_power_sum(2, 3, 20), b = kernels::semiregular_power_sum_reference(2, 3, 20);
    if (a.count != b.count || std::fabs(a.sum - b.sum) > 1e-14 * b.sum) return false;
    const TransferMatrix m = TransferMatrix::build(64, Precision(1e-20));
    kernels::IntervalVector v(64, m.intervals().precision()), x(64, v.precision()), y(64, v.precision());
    for (std::size_t i = 0; i < 64; ++i) v.set(i, PrecReal::pow2(-static_cast<long>(i)));
    kernels::matvec(m.intervals(), v, x);
    kernels::matvec_reference(m.intervals(), v, y);
    for (std::size_t i = 0; i < 64; ++i) {
      if (mpfr_cmp(x.lo(i).get(), y.lo(i).get()) != 0 || mpfr_cmp(x.hi(i).get(), y.hi(i).get()) != 0) return false;
    }
    return true;
  });

  check("JSON output round-trips byte-identically", [&] {
    RunConfig c = cfg;
    c.cache_path.reset();
    const std::string first = to_json(qm_eval("3/7", c)).dump(2);
    return nlohmann::ordered_json::parse(first).dump(2) == first;
  });
  return r;
}

}  // namespace minkqm::cli
