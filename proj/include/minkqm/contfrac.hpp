#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minkqm/fraction.hpp"

namespace minkqm {

using Digit = std::uint64_t;

/// [0; a_1, ..., a_s] with a_i >= 1. Canonical form ends in a digit >= 2.
struct RegularCF {
  std::vector<Digit> digits;

  bool canonical() const;
  /// "[0;a1,a2,...]"
  std::string str() const;
  static RegularCF parse(std::string_view text);

  friend bool operator==(const RegularCF&, const RegularCF&) = default;
};

/// [[b_1, ..., b_k]] = 1/(b_1 - 1/(b_2 - ...)) with b_i >= 2. The value 1 has no finite
/// expansion; it is represented by `unit`, whose prefixes are all twos.
struct SemiRegularCF {
  std::vector<Digit> digits;
  bool unit = false;

  bool canonical() const;
  /// First k digits; for the unit marker these are k twos.
  std::vector<Digit> prefix(std::size_t k) const;
  /// "[[b1,b2,...]]", or "[[2,2,2,...]]" for the unit marker.
  std::string str() const;
  static SemiRegularCF parse(std::string_view text);

  friend bool operator==(const SemiRegularCF&, const SemiRegularCF&) = default;
};

/// <d_1, ..., d_k> = d_1 / (1 - d_2 / (1 - ... / (1 - d_k))).
struct AngleForm {
  std::vector<Fraction> entries;

  /// d_1 = 1/b_1, d_{i+1} = 1/(b_i b_{i+1}).
  static AngleForm from_semiregular(std::span<const Digit> digits);
};

/// Euclidean expansion of 0 < x < 1.
RegularCF regular_expand(const Fraction& x);
Fraction eval_regular(const RegularCF& cf);

/// Finite greedy expansion of 0 < x <= 1 (b_k = ceil(1/x_{k-1})); x = 1 gives the unit marker.
SemiRegularCF semiregular_expand(const Fraction& x);
Fraction eval_semiregular(const SemiRegularCF& cf);
/// Backward evaluation of an arbitrary digit string; a trailing 1 is allowed.
Fraction eval_semiregular(std::span<const Digit> digits);

/// First K semi-regular digits of a complete finite regular expansion, via
/// [0;a1,a2,a3,...] = [[a1+1, 2_{a2-1}, a3+2, 2_{a4-1}, a5+2, ...]]. An expansion of odd
/// length continues with infinitely many twos (the infinite twin); one of even length ends
/// after its last block of twos.
SemiRegularCF regular_to_semiregular(const RegularCF& cf, std::size_t K);
/// Same map over a prefix of a (possibly infinite) digit stream; throws NeedsMoreDigits when
/// the prefix does not determine K digits.
SemiRegularCF regular_to_semiregular_prefix(std::span<const Digit> stream, std::size_t K);

Fraction eval_angle(const AngleForm& a);

/// Length of the interval of all reals whose semi-regular expansion begins with `digits`:
/// 1 / (Q_k (Q_k - Q_{k-1})), which is at most 1/(k+1).
Fraction semiregular_cylinder_width(std::span<const Digit> digits);

}  // namespace minkqm
