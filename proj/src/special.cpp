#include "minkqm/special.hpp"

#include <algorithm>
#include <cmath>

#include "minkqm/errors.hpp"

namespace minkqm {

namespace {

// sum_{n>=first} 2^{-n} n^{-s} with relative error <= 2^{-bits}. The tail after the last
// included index N is at most (N+1)^{-s} 2^{-N}; it is added to the radius.
PrecReal half_weighted_zeta(long s, long first, mpfr_prec_t bits) {
  const mpfr_prec_t prec = bits + 24;
  const double sd = static_cast<double>(s);
  const double first_log2 = -static_cast<double>(first) - sd * std::log2(static_cast<double>(first));
  const double target_log2 = first_log2 - static_cast<double>(bits) - 1.0;

  PrecReal sum(0, prec);
  long n = first;
  for (;; ++n) {
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(s));
    sum += (PrecReal(1, prec) / PrecReal::from_mpz(power, prec)).scaled2(-n);
    const double tail_log2 = -sd * std::log2(static_cast<double>(n + 1)) - static_cast<double>(n);
    if (tail_log2 <= target_log2) {
      BigFloat tail(PrecReal::kRadiusBits);
      mpfr_set_ui_2exp(tail.get(), 1, static_cast<mpfr_exp_t>(std::ceil(tail_log2)), MPFR_RNDU);
      sum.add_error(tail);
      return sum;
    }
  }
}

}  // namespace

PrecReal polylog_half(long s, Precision eps) {
  if (s < 1) throw DomainError("polylog_half requires s >= 1");
  PrecReal out = half_weighted_zeta(s, 1, eps.working_bits());
  if (out.rad_double() > eps.eps()) throw PrecisionUnreachable("polylog_half radius above target");
  return out;
}

PrecReal c_coeff_relative(long s, mpfr_prec_t bits) {
  if (s < 1) throw DomainError("c_coeff requires s >= 1");
  return half_weighted_zeta(s, 2, bits).scaled2(1);
}

PrecReal c_coeff(long s, Precision eps) {
  if (s < 1) throw DomainError("c_coeff requires s >= 1");
  PrecReal out = c_coeff_relative(s, eps.working_bits());
  if (out.rad_double() > eps.eps()) throw PrecisionUnreachable("c_coeff radius above target");
  return out;
}

PrecReal bessel_i1_scaled(const PrecReal& x, Precision eps) {
  if (mpfr_sgn(x.mid().get()) < 0) throw DomainError("bessel_i1_scaled requires x >= 0");
  if (mpfr_zero_p(x.mid().get()) && x.is_exact()) return PrecReal(0, x.precision());

  const double xu = x.upper_double();
  // Series value is at most x e^{2 sqrt x}; carry that many extra bits so the absolute target holds.
  const double mag_log2 = std::max(0.0, std::log2(std::max(xu, 1.0)) + 2.0 * std::sqrt(xu) / std::log(2.0));
  const mpfr_prec_t prec =
      std::max(x.precision(), eps.working_bits() + static_cast<mpfr_prec_t>(std::ceil(mag_log2)));

  PrecReal xx = x.with_precision(prec);
  PrecReal term = xx;
  PrecReal sum = xx;
  BigFloat x_up = xx.upper();
  BigFloat half_eps(PrecReal::kRadiusBits);
  mpfr_set_d(half_eps.get(), eps.eps() / 2.0, MPFR_RNDD);

  for (unsigned long q = 1;; ++q) {
    // t_{q+1} / t_q = x / (q (q+1)), decreasing in q, so once rho < 1 the tail is geometric.
    const double qq = static_cast<double>(q) * static_cast<double>(q + 1);
    BigFloat rho(PrecReal::kRadiusBits);
    mpfr_div_d(rho.get(), x_up.get(), qq, MPFR_RNDU);
    if (mpfr_cmp_d(rho.get(), 0.5) <= 0) {
      BigFloat tail = term.upper();
      BigFloat one_minus(PrecReal::kRadiusBits);
      mpfr_ui_sub(one_minus.get(), 1, rho.get(), MPFR_RNDD);
      mpfr_mul(tail.get(), tail.get(), rho.get(), MPFR_RNDU);
      mpfr_div(tail.get(), tail.get(), one_minus.get(), MPFR_RNDU);
      if (mpfr_cmp(tail.get(), half_eps.get()) <= 0) {
        sum.add_error(tail);
        return sum;
      }
    }
    term *= xx;
    term /= PrecReal(static_cast<long>(q * (q + 1)), prec);
    sum += term;
  }
}

double bessel_i1_ratio(double y) {
  double term = 1.0;
  double sum = 1.0;
  const double qmin = std::sqrt(y);
  for (int q = 1; q < 100000; ++q) {
    term *= y / (static_cast<double>(q) * static_cast<double>(q + 1));
    sum += term;
    if (static_cast<double>(q) > qmin && term < 1e-17 * sum) break;
  }
  return sum;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace minkqm
