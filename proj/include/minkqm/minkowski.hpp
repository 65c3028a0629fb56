#pragma once

#include <cstddef>

#include "minkqm/contfrac.hpp"
#include "minkqm/fraction.hpp"

namespace minkqm {

/// ?(x) on a rational 0 < x <= 1 from the regular expansion:
/// 2^{1-a1} - 2^{1-(a1+a2)} + 2^{1-(a1+a2+a3)} - ...
DyadicRational question_mark(const Fraction& x);

/// ?(x) from the semi-regular expansion: 2^{1-b1} + 2^{2-(b1+b2)} + 2^{3-(b1+b2+b3)} + ...
/// Equal to question_mark on every rational.
DyadicRational question_mark_semiregular(const Fraction& x);

/// f_l(x) = 2^{l - (b1 + ... + bl)} on the finite semi-regular expansion of x. Digits past
/// the end of the expansion count as infinite, so f_l(x) = 0 once l exceeds its length.
/// f_0 = 1. For x = 1 every digit is 2 and f_l(1) = 2^{-l}.
DyadicRational weight_f(const Fraction& x, std::size_t l);

/// h_l(x) = f_l(x) - 2 f_{l+1}(x) >= 0. Sum over l telescopes to 1 - ?(x).
DyadicRational weight_h(const Fraction& x, std::size_t l);

/// Same weights over an already computed expansion (avoids re-expanding in hot loops).
DyadicRational weight_f(const SemiRegularCF& cf, std::size_t l);
DyadicRational weight_h(const SemiRegularCF& cf, std::size_t l);

}  // namespace minkqm
