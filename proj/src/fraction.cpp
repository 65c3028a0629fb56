#include "minkqm/fraction.hpp"

#include <cctype>

#include "minkqm/errors.hpp"

namespace minkqm {

namespace {

bool parse_integer(std::string_view text, mpz_class& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Fraction::Fraction(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("fraction with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Fraction::Fraction(const mpq_class& q) : v_(q) { v_.canonicalize(); }

Fraction Fraction::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  mpz_class num, den(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) throw DomainError("not a rational: '" + std::string(text) + "'");
  } else {
    if (!parse_integer(text.substr(0, slash), num) || !parse_integer(text.substr(slash + 1), den)) {
      throw DomainError("not a rational: '" + std::string(text) + "'");
    }
  }
  return Fraction(num, den);
}

Fraction Fraction::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  return Fraction(den(), num());
}

Fraction Fraction::pow(unsigned exponent) const {
  if (is_zero()) return exponent == 0 ? Fraction(1) : Fraction(0);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), exponent);
  mpq_class q;
  mpz_swap(mpq_numref(q.get_mpq_t()), n.get_mpz_t());
  mpz_swap(mpq_denref(q.get_mpq_t()), d.get_mpz_t());
  // Powers of coprime integers stay coprime.
  Fraction out;
  out.v_ = std::move(q);
  return out;
}

Fraction& Fraction::operator/=(const Fraction& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Fraction::str() const {
  if (den() == 1) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

DyadicRational::DyadicRational(mpz_class num, std::uint64_t exponent)
    : num_(std::move(num)), exp_(exponent) {
  normalise();
}

DyadicRational DyadicRational::pow2(std::int64_t k) {
  DyadicRational d;
  if (k >= 0) {
    mpz_ui_pow_ui(d.num_.get_mpz_t(), 2, static_cast<unsigned long>(k));
  } else {
    d.num_ = 1;
    d.exp_ = static_cast<std::uint64_t>(-k);
  }
  return d;
}

void DyadicRational::normalise() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  const auto tz = mpz_scan1(num_.get_mpz_t(), 0);
  const auto shift = std::min<std::uint64_t>(tz, exp_);
  if (shift > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), shift);
    exp_ -= shift;
  }
}

Fraction DyadicRational::to_fraction() const {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exp_);
  return Fraction(num_, den);
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& o) {
  if (o.exp_ > exp_) {
    mpz_mul_2exp(num_.get_mpz_t(), num_.get_mpz_t(), o.exp_ - exp_);
    exp_ = o.exp_;
    num_ += o.num_;
  } else {
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), o.num_.get_mpz_t(), exp_ - o.exp_);
    num_ += t;
  }
  normalise();
  return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& o) {
  DyadicRational neg = o;
  neg.num_ = -neg.num_;
  return *this += neg;
}

DyadicRational DyadicRational::scaled(std::int64_t k) const {
  DyadicRational d = *this;
  if (k >= 0) {
    const auto up = static_cast<std::uint64_t>(k);
    if (up >= d.exp_) {
      mpz_mul_2exp(d.num_.get_mpz_t(), d.num_.get_mpz_t(), up - d.exp_);
      d.exp_ = 0;
    } else {
      d.exp_ -= up;
    }
  } else {
    d.exp_ += static_cast<std::uint64_t>(-k);
  }
  d.normalise();
  return d;
}

}  // namespace minkqm
