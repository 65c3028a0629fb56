#pragma once

#include <gmpxx.h>

#include "minkqm/prec_real.hpp"

namespace minkqm {

/// Li_s(1/2) = sum_{n>=1} 2^{-n} n^{-s}, enclosed with radius <= eps. Requires s >= 1.
PrecReal polylog_half(long s, Precision eps);

/// c_s = 2 Li_s(1/2) - 1 = 2 sum_{n>=2} 2^{-n} n^{-s}. Summed directly (no cancellation), so the
/// result has radius <= eps and relative accuracy as well.
PrecReal c_coeff(long s, Precision eps);

/// c_s with relative error at most 2^{-bits}; used where c_s is multiplied by a huge binomial.
PrecReal c_coeff_relative(long s, mpfr_prec_t bits);

/// sqrt(x) I_1(2 sqrt(x)) = sum_{q>=1} x^q / ((q-1)! q!), radius <= eps for an exact argument.
PrecReal bessel_i1_scaled(const PrecReal& x, Precision eps);

/// I_1(2 sqrt(y)) / sqrt(y) = sum_{q>=1} y^{q-1} / ((q-1)! q!) in double precision, y >= 0.
/// Every term is positive, so the relative error stays within a few ulps.
double bessel_i1_ratio(double y);

mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace minkqm
