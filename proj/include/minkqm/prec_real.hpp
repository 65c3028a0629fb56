#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

#include "minkqm/fraction.hpp"

namespace minkqm {

/// Owning handle for an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

 private:
  mpfr_t v_;
};

/// Target absolute error for an operation. Always strictly positive.
class Precision {
 public:
  explicit Precision(double eps);
  static Precision digits(int decimal_digits);

  double eps() const { return eps_; }
  /// Midpoint precision used internally: eps/8 per stage plus guard bits for error growth.
  mpfr_prec_t working_bits() const;

 private:
  double eps_;
};

/// Ball real: an MPFR midpoint and an absolute error radius (rounded upward). Every
/// operation returns a ball that contains the exact result of the operation applied to
/// any points of the argument balls.
class PrecReal {
 public:
  static constexpr mpfr_prec_t kRadiusBits = 32;

  PrecReal();
  explicit PrecReal(long value, mpfr_prec_t prec = 64);

  static PrecReal from_mpz(const mpz_class& z, mpfr_prec_t prec);
  static PrecReal from_fraction(const Fraction& q, mpfr_prec_t prec);
  static PrecReal from_double(double d, mpfr_prec_t prec);
  /// Decimal literal such as "0.3862943611" or "-1.5e-3"; radius covers the conversion.
  static PrecReal from_decimal(std::string_view text, mpfr_prec_t prec);
  /// Exact 2^k.
  static PrecReal pow2(long k, mpfr_prec_t prec = 64);
  /// Ball with an explicit midpoint and radius; the radius is rounded up to radius precision.
  static PrecReal ball(const BigFloat& mid, const BigFloat& rad);
  /// Ball [lo, hi] (requires lo <= hi).
  static PrecReal hull(const BigFloat& lo, const BigFloat& hi, mpfr_prec_t prec);

  const BigFloat& mid() const { return mid_; }
  const BigFloat& rad() const { return rad_; }
  mpfr_prec_t precision() const { return mid_.precision(); }

  double mid_double() const { return mid_.to_double(); }
  /// Radius rounded up to a double.
  double rad_double() const { return rad_.to_double(MPFR_RNDU); }
  bool is_exact() const { return mpfr_zero_p(rad_.get()) != 0; }

  /// Lower and upper ends of the ball, rounded outward.
  BigFloat lower() const;
  BigFloat upper() const;
  double lower_double() const;
  double upper_double() const;

  /// Widens the ball by err (must be non-negative).
  PrecReal& add_error(double err);
  PrecReal& add_error(const BigFloat& err);

  /// Same ball with the midpoint stored at a different precision (radius grows by the rounding).
  PrecReal with_precision(mpfr_prec_t prec) const;

  bool contains(const Fraction& q) const;
  bool contains_zero() const;
  bool is_positive() const;
  bool is_negative() const;
  /// |mid_a - mid_b| <= rad_a + rad_b + slack.
  bool overlaps(const PrecReal& other, double slack = 0.0) const;
  /// Upper bound of |x - y| over both balls.
  double max_distance(const PrecReal& other) const;
  /// Upper bound of |x| over the ball.
  double abs_upper() const;

  /// Midpoint printed with floor(-log10(radius)) fractional digits (capped), no radius suffix.
  std::string mid_string() const;
  /// Midpoint with `digits` fractional digits.
  std::string mid_string(int digits) const;
  /// Full-precision midpoint, suitable for re-parsing without loss beyond one ulp.
  std::string mid_string_full() const;
  /// Radius as a short upward-rounded scientific literal, e.g. "4.21e-12".
  std::string radius_string() const;
  /// "<mid> ± <radius>".
  std::string str() const;

  PrecReal& operator+=(const PrecReal& o);
  PrecReal& operator-=(const PrecReal& o);
  PrecReal& operator*=(const PrecReal& o);
  PrecReal& operator/=(const PrecReal& o);

  friend PrecReal operator+(PrecReal a, const PrecReal& b) { return a += b; }
  friend PrecReal operator-(PrecReal a, const PrecReal& b) { return a -= b; }
  friend PrecReal operator*(PrecReal a, const PrecReal& b) { return a *= b; }
  friend PrecReal operator/(PrecReal a, const PrecReal& b) { return a /= b; }
  friend PrecReal operator-(const PrecReal& a);

  /// Exact multiplication by 2^k.
  PrecReal scaled2(long k) const;

  friend PrecReal exp(const PrecReal& x);
  friend PrecReal log(const PrecReal& x);
  friend PrecReal sqrt(const PrecReal& x);
  friend PrecReal pow(const PrecReal& x, unsigned n);
  friend PrecReal abs(const PrecReal& x);

 private:
  BigFloat mid_;
  BigFloat rad_;
};

}  // namespace minkqm
