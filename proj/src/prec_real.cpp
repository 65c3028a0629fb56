#include "minkqm/prec_real.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minkqm/errors.hpp"

namespace minkqm {

namespace {

constexpr mpfr_prec_t kRad = PrecReal::kRadiusBits;

std::string take_mpfr_string(char* s) {
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

// rad += ulp(mid) when the operation that produced mid was inexact.
void add_rounding(BigFloat& rad, const BigFloat& mid, int ternary) {
  if (ternary == 0 || mpfr_zero_p(mid.get())) return;
  BigFloat ulp(kRad);
  mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid.get()) - mid.precision(), MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), ulp.get(), MPFR_RNDU);
}

// Upward-rounded |x| at radius precision.
BigFloat abs_up(const BigFloat& x) {
  BigFloat out(kRad);
  mpfr_abs(out.get(), x.get(), MPFR_RNDU);
  return out;
}

BigFloat abs_down(const BigFloat& x) {
  BigFloat out(kRad);
  mpfr_abs(out.get(), x.get(), MPFR_RNDD);
  return out;
}

}  // namespace

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

Precision::Precision(double eps) : eps_(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("precision eps must be positive");
}

Precision Precision::digits(int decimal_digits) {
  if (decimal_digits < 1 || decimal_digits > 300) throw DomainError("decimal digits out of range");
  return Precision(std::pow(10.0, -decimal_digits));
}

mpfr_prec_t Precision::working_bits() const {
  const auto bits = static_cast<mpfr_prec_t>(std::ceil(std::log2(8.0 / eps_))) + 32;
  return std::max<mpfr_prec_t>(bits, 64);
}

PrecReal::PrecReal() : mid_(64), rad_(kRad) {}

PrecReal::PrecReal(long value, mpfr_prec_t prec) : mid_(std::max<mpfr_prec_t>(prec, 64)), rad_(kRad) {
  // 64 bits hold any long exactly.
  mpfr_set_si(mid_.get(), value, MPFR_RNDN);
}

PrecReal PrecReal::from_mpz(const mpz_class& z, mpfr_prec_t prec) {
  PrecReal out;
  out.mid_ = BigFloat(prec);
  add_rounding(out.rad_, out.mid_, mpfr_set_z(out.mid_.get(), z.get_mpz_t(), MPFR_RNDN));
  return out;
}

PrecReal PrecReal::from_fraction(const Fraction& q, mpfr_prec_t prec) {
  PrecReal out;
  out.mid_ = BigFloat(prec);
  add_rounding(out.rad_, out.mid_,
               mpfr_set_q(out.mid_.get(), q.raw().get_mpq_t(), MPFR_RNDN));
  return out;
}

PrecReal PrecReal::from_double(double d, mpfr_prec_t prec) {
  if (!std::isfinite(d)) throw DomainError("non-finite double");
  PrecReal out;
  out.mid_ = BigFloat(std::max<mpfr_prec_t>(prec, 53));
  mpfr_set_d(out.mid_.get(), d, MPFR_RNDN);
  return out;
}

PrecReal PrecReal::from_decimal(std::string_view text, mpfr_prec_t prec) {
  std::string s(text);
  PrecReal out;
  out.mid_ = BigFloat(prec);
  char* end = nullptr;
  const int t = mpfr_strtofr(out.mid_.get(), s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size()) throw DomainError("not a decimal literal: '" + s + "'");
  add_rounding(out.rad_, out.mid_, t);
  return out;
}

PrecReal PrecReal::pow2(long k, mpfr_prec_t prec) {
  PrecReal out;
  out.mid_ = BigFloat(prec);
  mpfr_set_ui_2exp(out.mid_.get(), 1, k, MPFR_RNDN);
  return out;
}

PrecReal PrecReal::ball(const BigFloat& mid, const BigFloat& rad) {
  if (mpfr_sgn(rad.get()) < 0) throw DomainError("negative radius");
  PrecReal out;
  out.mid_ = mid;
  mpfr_set(out.rad_.get(), rad.get(), MPFR_RNDU);
  return out;
}

PrecReal PrecReal::hull(const BigFloat& lo, const BigFloat& hi, mpfr_prec_t prec) {
  if (mpfr_cmp(lo.get(), hi.get()) > 0) throw DomainError("hull with lo > hi");
  PrecReal out;
  out.mid_ = BigFloat(prec);
  mpfr_add(out.mid_.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(out.mid_.get(), out.mid_.get(), 1, MPFR_RNDN);
  BigFloat a(kRad), b(kRad);
  mpfr_sub(a.get(), hi.get(), out.mid_.get(), MPFR_RNDU);
  mpfr_sub(b.get(), out.mid_.get(), lo.get(), MPFR_RNDU);
  mpfr_max(out.rad_.get(), a.get(), b.get(), MPFR_RNDU);
  return out;
}

BigFloat PrecReal::lower() const {
  BigFloat out(precision());
  mpfr_sub(out.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return out;
}

BigFloat PrecReal::upper() const {
  BigFloat out(precision());
  mpfr_add(out.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return out;
}

double PrecReal::lower_double() const { return lower().to_double(MPFR_RNDD); }
double PrecReal::upper_double() const { return upper().to_double(MPFR_RNDU); }

PrecReal& PrecReal::add_error(double err) {
  if (!(err >= 0.0)) throw DomainError("negative error bound");
  mpfr_add_d(rad_.get(), rad_.get(), err, MPFR_RNDU);
  return *this;
}

PrecReal& PrecReal::add_error(const BigFloat& err) {
  if (mpfr_sgn(err.get()) < 0) throw DomainError("negative error bound");
  mpfr_add(rad_.get(), rad_.get(), err.get(), MPFR_RNDU);
  return *this;
}

PrecReal PrecReal::with_precision(mpfr_prec_t prec) const {
  PrecReal out;
  out.mid_ = BigFloat(prec);
  out.rad_ = rad_;
  add_rounding(out.rad_, out.mid_, mpfr_set(out.mid_.get(), mid_.get(), MPFR_RNDN));
  return out;
}

bool PrecReal::contains(const Fraction& q) const {
  return mpfr_cmp_q(lower().get(), q.raw().get_mpq_t()) <= 0 &&
         mpfr_cmp_q(upper().get(), q.raw().get_mpq_t()) >= 0;
}

bool PrecReal::contains_zero() const { return !is_positive() && !is_negative(); }

bool PrecReal::is_positive() const { return mpfr_sgn(lower().get()) > 0; }

bool PrecReal::is_negative() const { return mpfr_sgn(upper().get()) < 0; }

bool PrecReal::overlaps(const PrecReal& other, double slack) const {
  const mpfr_prec_t p = std::max(precision(), other.precision()) + 2;
  BigFloat d(p);
  mpfr_sub(d.get(), mid_.get(), other.mid_.get(), MPFR_RNDN);
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  BigFloat allowed(kRad);
  mpfr_add(allowed.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
  mpfr_add_d(allowed.get(), allowed.get(), slack, MPFR_RNDU);
  return mpfr_cmp(d.get(), allowed.get()) <= 0;
}

double PrecReal::max_distance(const PrecReal& other) const {
  BigFloat d(kRad);
  mpfr_sub(d.get(), mid_.get(), other.mid_.get(), MPFR_RNDU);
  BigFloat e(kRad);
  mpfr_sub(e.get(), other.mid_.get(), mid_.get(), MPFR_RNDU);
  mpfr_max(d.get(), d.get(), e.get(), MPFR_RNDU);
  mpfr_add(d.get(), d.get(), rad_.get(), MPFR_RNDU);
  mpfr_add(d.get(), d.get(), other.rad_.get(), MPFR_RNDU);
  return d.to_double(MPFR_RNDU);
}

double PrecReal::abs_upper() const {
  BigFloat a = abs_up(mid_);
  mpfr_add(a.get(), a.get(), rad_.get(), MPFR_RNDU);
  return a.to_double(MPFR_RNDU);
}

std::string PrecReal::mid_string() const {
  const int cap = std::max(1, static_cast<int>(static_cast<double>(precision()) * 0.30103) - 1);
  int digits = cap;
  if (!is_exact()) {
    const double r = rad_double();
    digits = r >= 1.0 ? 0 : static_cast<int>(std::floor(-std::log10(r)));
    digits = std::clamp(digits, 0, cap);
  }
  return mid_string(digits);
}

std::string PrecReal::mid_string(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*RNf", digits, mid_.get());
  return take_mpfr_string(s);
}

std::string PrecReal::mid_string_full() const {
  const int sig = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30103)) + 2;
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*RNe", sig, mid_.get());
  return take_mpfr_string(s);
}

std::string PrecReal::radius_string() const {
  if (is_exact()) return "0";
  char* s = nullptr;
  mpfr_asprintf(&s, "%.2RUe", rad_.get());
  return take_mpfr_string(s);
}

std::string PrecReal::str() const { return mid_string() + " ± " + radius_string(); }

PrecReal& PrecReal::operator+=(const PrecReal& o) {
  const mpfr_prec_t p = std::max(precision(), o.precision());
  if (precision() != p) mpfr_prec_round(mid_.get(), p, MPFR_RNDN);
  mpfr_add(rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  add_rounding(rad_, mid_, mpfr_add(mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN));
  return *this;
}

PrecReal& PrecReal::operator-=(const PrecReal& o) {
  const mpfr_prec_t p = std::max(precision(), o.precision());
  if (precision() != p) mpfr_prec_round(mid_.get(), p, MPFR_RNDN);
  mpfr_add(rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  add_rounding(rad_, mid_, mpfr_sub(mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN));
  return *this;
}

PrecReal& PrecReal::operator*=(const PrecReal& o) {
  const mpfr_prec_t p = std::max(precision(), o.precision());
  // |a||rb| + |b||ra| + ra rb, computed before the midpoint changes.
  BigFloat r(kRad), t(kRad);
  mpfr_mul(r.get(), abs_up(mid_).get(), o.rad_.get(), MPFR_RNDU);
  mpfr_mul(t.get(), abs_up(o.mid_).get(), rad_.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), t.get(), MPFR_RNDU);
  BigFloat m(p);
  add_rounding(r, m, mpfr_mul(m.get(), mid_.get(), o.mid_.get(), MPFR_RNDN));
  mid_ = std::move(m);
  rad_ = std::move(r);
  return *this;
}

PrecReal& PrecReal::operator/=(const PrecReal& o) {
  if (o.contains_zero()) throw DomainError("division by a ball containing zero");
  const mpfr_prec_t p = std::max(precision(), o.precision());
  // (|a| rb + |b| ra) / (|b| (|b| - rb))
  BigFloat num(kRad), t(kRad), den(kRad);
  mpfr_mul(num.get(), abs_up(mid_).get(), o.rad_.get(), MPFR_RNDU);
  mpfr_mul(t.get(), abs_up(o.mid_).get(), rad_.get(), MPFR_RNDU);
  mpfr_add(num.get(), num.get(), t.get(), MPFR_RNDU);
  const BigFloat bl = abs_down(o.mid_);
  mpfr_sub(den.get(), bl.get(), o.rad_.get(), MPFR_RNDD);
  mpfr_mul(den.get(), den.get(), bl.get(), MPFR_RNDD);
  BigFloat r(kRad);
  mpfr_div(r.get(), num.get(), den.get(), MPFR_RNDU);
  BigFloat m(p);
  add_rounding(r, m, mpfr_div(m.get(), mid_.get(), o.mid_.get(), MPFR_RNDN));
  mid_ = std::move(m);
  rad_ = std::move(r);
  return *this;
}

PrecReal operator-(const PrecReal& a) {
  PrecReal out = a;
  mpfr_neg(out.mid_.get(), out.mid_.get(), MPFR_RNDN);
  return out;
}

PrecReal PrecReal::scaled2(long k) const {
  PrecReal out = *this;
  mpfr_mul_2si(out.mid_.get(), out.mid_.get(), k, MPFR_RNDN);
  mpfr_mul_2si(out.rad_.get(), out.rad_.get(), k, MPFR_RNDU);
  return out;
}

PrecReal exp(const PrecReal& x) {
  // |e^y - e^m| <= e^m (e^r - 1) for |y - m| <= r
  BigFloat em(kRad), er(kRad);
  mpfr_exp(em.get(), x.mid_.get(), MPFR_RNDU);
  mpfr_expm1(er.get(), x.rad_.get(), MPFR_RNDU);
  PrecReal out;
  out.mid_ = BigFloat(x.precision());
  mpfr_mul(out.rad_.get(), em.get(), er.get(), MPFR_RNDU);
  add_rounding(out.rad_, out.mid_, mpfr_exp(out.mid_.get(), x.mid_.get(), MPFR_RNDN));
  return out;
}

PrecReal log(const PrecReal& x) {
  if (!x.is_positive()) throw DomainError("log of a ball that is not strictly positive");
  BigFloat lo(kRad);
  mpfr_sub(lo.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
  PrecReal out;
  out.mid_ = BigFloat(x.precision());
  mpfr_div(out.rad_.get(), x.rad_.get(), lo.get(), MPFR_RNDU);
  add_rounding(out.rad_, out.mid_, mpfr_log(out.mid_.get(), x.mid_.get(), MPFR_RNDN));
  return out;
}

PrecReal sqrt(const PrecReal& x) {
  if (x.is_negative()) throw DomainError("sqrt of a negative ball");
  const BigFloat lo = x.lower();
  if (mpfr_sgn(lo.get()) <= 0) {
    BigFloat hi(x.precision());
    mpfr_sqrt(hi.get(), x.upper().get(), MPFR_RNDU);
    return PrecReal::hull(BigFloat(x.precision()), hi, x.precision());
  }
  // |sqrt(y) - sqrt(m)| <= r / (sqrt(m - r) + sqrt(m))
  BigFloat a(kRad), b(kRad);
  mpfr_sqrt(a.get(), lo.get(), MPFR_RNDD);
  mpfr_sqrt(b.get(), x.mid_.get(), MPFR_RNDD);
  mpfr_add(a.get(), a.get(), b.get(), MPFR_RNDD);
  PrecReal out;
  out.mid_ = BigFloat(x.precision());
  mpfr_div(out.rad_.get(), x.rad_.get(), a.get(), MPFR_RNDU);
  add_rounding(out.rad_, out.mid_, mpfr_sqrt(out.mid_.get(), x.mid_.get(), MPFR_RNDN));
  return out;
}

PrecReal pow(const PrecReal& x, unsigned n) {
  PrecReal result(1, x.precision());
  PrecReal base = x;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

PrecReal abs(const PrecReal& x) {
  if (!x.contains_zero()) {
    PrecReal out = x;
    mpfr_abs(out.mid_.get(), out.mid_.get(), MPFR_RNDN);
    return out;
  }
  BigFloat hi(x.precision());
  mpfr_abs(hi.get(), x.mid_.get(), MPFR_RNDU);
  mpfr_add(hi.get(), hi.get(), x.rad_.get(), MPFR_RNDU);
  return PrecReal::hull(BigFloat(x.precision()), hi, x.precision());
}

}  // namespace minkqm
