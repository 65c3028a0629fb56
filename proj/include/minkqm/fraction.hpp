#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace minkqm {

/// Exact rational in lowest terms with a positive denominator.
class Fraction {
 public:
  Fraction() = default;
  Fraction(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Fraction(const mpz_class& num, const mpz_class& den);
  explicit Fraction(const mpq_class& q);

  /// Parses "p/q" or "p" (optional leading sign). Throws DomainError on bad input.
  static Fraction parse(std::string_view text);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  Fraction reciprocal() const;
  Fraction pow(unsigned exponent) const;

  /// "p/q", or "p" when the denominator is one.
  std::string str() const;

  Fraction& operator+=(const Fraction& o) { v_ += o.v_; return *this; }
  Fraction& operator-=(const Fraction& o) { v_ -= o.v_; return *this; }
  Fraction& operator*=(const Fraction& o) { v_ *= o.v_; return *this; }
  Fraction& operator/=(const Fraction& o);

  friend Fraction operator+(Fraction a, const Fraction& b) { return a += b; }
  friend Fraction operator-(Fraction a, const Fraction& b) { return a -= b; }
  friend Fraction operator*(Fraction a, const Fraction& b) { return a *= b; }
  friend Fraction operator/(Fraction a, const Fraction& b) { return a /= b; }
  friend Fraction operator-(const Fraction& a) { return Fraction(mpq_class(-a.v_)); }

  friend bool operator==(const Fraction& a, const Fraction& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

/// p/q with a power-of-two denominator; every value of ?(x) at a rational is one.
class DyadicRational {
 public:
  DyadicRational() = default;
  /// num / 2^exponent, normalised so that the numerator is odd or the exponent is zero.
  DyadicRational(mpz_class num, std::uint64_t exponent);
  explicit DyadicRational(long value) : num_(value) {}

  /// 2^{-k}; k may be negative.
  static DyadicRational pow2(std::int64_t k);

  const mpz_class& num() const { return num_; }
  std::uint64_t exponent() const { return exp_; }

  Fraction to_fraction() const;
  std::string str() const { return to_fraction().str(); }

  DyadicRational& operator+=(const DyadicRational& o);
  DyadicRational& operator-=(const DyadicRational& o);
  friend DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }
  friend DyadicRational operator-(DyadicRational a, const DyadicRational& b) { return a -= b; }
  /// Exact multiplication by 2^k.
  DyadicRational scaled(std::int64_t k) const;

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
    return a.to_fraction() <=> b.to_fraction();
  }

 private:
  void normalise();

  mpz_class num_{0};
  std::uint64_t exp_ = 0;
};

}  // namespace minkqm
