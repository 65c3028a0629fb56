#include "minkqm/minkowski.hpp"

#include <limits>

#include "minkqm/errors.hpp"

namespace minkqm {

namespace {

void check_domain(const Fraction& x) {
  if (x <= Fraction(0) || x > Fraction(1)) throw DomainError("?(x) is evaluated on 0 < x <= 1");
}

std::int64_t checked_add(std::int64_t s, Digit d) {
  if (d > static_cast<Digit>(std::numeric_limits<std::int32_t>::max()) ||
      s > std::numeric_limits<std::int64_t>::max() / 2) {
    throw ResourceLimit("digit sum too large for a dyadic exponent");
  }
  return s + static_cast<std::int64_t>(d);
}

}  // namespace

DyadicRational question_mark(const Fraction& x) {
  check_domain(x);
  if (x == Fraction(1)) return DyadicRational(1);
  const RegularCF cf = regular_expand(x);
  DyadicRational sum;
  std::int64_t partial = 0;
  for (std::size_t k = 0; k < cf.digits.size(); ++k) {
    partial = checked_add(partial, cf.digits[k]);
    const DyadicRational term = DyadicRational::pow2(1 - partial);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

DyadicRational question_mark_semiregular(const Fraction& x) {
  check_domain(x);
  const SemiRegularCF cf = semiregular_expand(x);
  if (cf.unit) return DyadicRational(1);
  DyadicRational sum;
  std::int64_t partial = 0;
  for (std::size_t k = 0; k < cf.digits.size(); ++k) {
    partial = checked_add(partial, cf.digits[k]);
    sum += DyadicRational::pow2(static_cast<std::int64_t>(k + 1) - partial);
  }
  return sum;
}

DyadicRational weight_f(const SemiRegularCF& cf, std::size_t l) {
  if (l == 0) return DyadicRational(1);
  if (cf.unit) return DyadicRational::pow2(-static_cast<std::int64_t>(l));
  if (l > cf.digits.size()) return DyadicRational(0);
  std::int64_t partial = 0;
  for (std::size_t i = 0; i < l; ++i) partial = checked_add(partial, cf.digits[i]);
  return DyadicRational::pow2(static_cast<std::int64_t>(l) - partial);
}

DyadicRational weight_h(const SemiRegularCF& cf, std::size_t l) {
  return weight_f(cf, l) - weight_f(cf, l + 1).scaled(1);
}

DyadicRational weight_f(const Fraction& x, std::size_t l) {
  check_domain(x);
  return weight_f(semiregular_expand(x), l);
}

DyadicRational weight_h(const Fraction& x, std::size_t l) {
  check_domain(x);
  return weight_h(semiregular_expand(x), l);
}

}  // namespace minkqm
