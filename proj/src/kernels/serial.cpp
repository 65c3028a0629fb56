#include <gmpxx.h>

#include "common.hpp"
#include "minkqm/kernels.hpp"
#include "minkqm/special.hpp"
#include "minkqm/summation.hpp"

namespace minkqm::kernels {

using detail::cf_step;
using detail::ipow;

void matvec_reference(const IntervalMatrix& m, const IntervalVector& v, IntervalVector& out) {
  const std::size_t n = m.dimension();
  if (v.size() != n || out.size() != n) throw DomainError("matvec: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    mpfr_set_zero(out.lo(i).get(), 1);
    mpfr_set_zero(out.hi(i).get(), 1);
    for (std::size_t j = 0; j < n; ++j) {
      mpfr_fma(out.lo(i).get(), m.lo(i, j).get(), v.lo(j).get(), out.lo(i).get(), MPFR_RNDD);
      mpfr_fma(out.hi(i).get(), m.hi(i, j).get(), v.hi(j).get(), out.hi(i).get(), MPFR_RNDU);
    }
  }
}

void farey_enumerate(unsigned n, const std::function<void(std::uint64_t, std::uint64_t)>& visit) {
  if (n < 2) return;
  struct Frame {
    std::uint64_t pp, qp, p, q;
    unsigned remaining;
  };
  std::vector<Frame> stack{{1, 0, 0, 1, n}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    // Push larger partial quotients first so the smallest are visited first.
    for (unsigned a = f.remaining - 2; a >= 1 && f.remaining >= 3; --a) {
      stack.push_back({f.p, f.q, a * f.p + f.pp, a * f.q + f.qp, f.remaining - a});
    }
    visit(f.remaining * f.p + f.pp, f.remaining * f.q + f.qp);
  }
}

Fraction farey_power_sum_reference(unsigned L, unsigned n) {
  mpq_class total = 0;
  farey_enumerate(n, [&](std::uint64_t p, std::uint64_t q) {
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), p, L);
    mpz_ui_pow_ui(den.get_mpz_t(), q, L);
    total += mpq_class(num, den);
    total.canonicalize();
  });
  return Fraction(total);
}

BoxSum semiregular_power_sum_reference(unsigned L, unsigned len, unsigned B) {
  detail::check_box(len, B);
  std::vector<unsigned> digits(len, 2);
  NeumaierSum sum, weight;
  do {
    double x = 0.0;
    long digit_sum = 0;
    for (std::size_t i = len; i-- > 0;) {
      x = cf_step(digits[i], x);
      digit_sum += digits[i];
    }
    const double w = std::ldexp(1.0, static_cast<int>(len) - static_cast<int>(digit_sum));
    sum.add(w * ipow(x, L));
    weight.add(w);
  } while (detail::next_tuple(digits, B));
  return {sum.value(), weight.value(), sum.count()};
}

BoxSum cylinder_power_sum_reference(unsigned L, unsigned len, unsigned B) {
  detail::check_box(len, B);
  std::vector<unsigned> digits(len, 2);
  NeumaierSum sum, weight;
  do {
    double x = cf_step(digits[len - 1], 0.0);
    double y = cf_step(digits[len - 1] - 1, 0.0);
    long digit_sum = digits[len - 1];
    for (std::size_t i = len - 1; i-- > 0;) {
      x = cf_step(digits[i], x);
      y = cf_step(digits[i], y);
      digit_sum += digits[i];
    }
    const double w = std::ldexp(1.0, static_cast<int>(len) - static_cast<int>(digit_sum));
    sum.add(w * (ipow(y, L) - ipow(x, L)));
    weight.add(w);
  } while (detail::next_tuple(digits, B));
  return {sum.value(), weight.value(), sum.count()};
}

double decay_weight(double x) {
  const double e = std::exp(-x);
  return e * e / (2.0 - e);
}

double theorem_integrand_double(unsigned L, std::span<const double> point) {
  if (point.empty()) throw DomainError("integrand needs at least one coordinate");
  const std::size_t l = point.size() - 1;
  double v = ipow(point[0], L) * decay_weight(point[0]);
  if (l == 0) return v / point[0];
  for (std::size_t i = 1; i <= l; ++i) {
    v *= bessel_i1_ratio(point[i - 1] * point[i]) * decay_weight(point[i]);
    if (i < l) v *= point[i];
  }
  return v;
}

double theorem_grid_sum_reference(unsigned L, unsigned l, std::span<const double> nodes,
                                  std::span<const double> weights) {
  const std::size_t n = nodes.size();
  if (weights.size() != n) throw DomainError("quadrature: nodes and weights differ in length");
  std::vector<std::size_t> idx(l + 1, 0);
  std::vector<double> point(l + 1);
  NeumaierSum sum;
  if (n == 0) return 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t k = 0; k <= l; ++k) {
      point[k] = nodes[idx[k]];
      w *= weights[idx[k]];
    }
    sum.add(w * theorem_integrand_double(L, point));
    std::size_t k = l + 1;
    while (k-- > 0) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return sum.value();
}

}  // namespace minkqm::kernels
