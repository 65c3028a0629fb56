#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "minkqm/errors.hpp"

namespace minkqm::kernels::detail {

inline double ipow(double x, unsigned n) {
  double r = 1.0;
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}

// One step of the semi-regular continued fraction, applied from the innermost digit out.
inline double cf_step(unsigned b, double inner) { return 1.0 / (static_cast<double>(b) - inner); }

inline void check_box(unsigned len, unsigned B) {
  if (len == 0) throw DomainError("digit box needs at least one digit");
  if (B < 2) throw DomainError("digit bound must be at least 2");
}

// Odometer over [2, B]^len; digits[0] is the outermost digit.
inline bool next_tuple(std::vector<unsigned>& digits, unsigned B) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] < B) {
      ++digits[i];
      return true;
    }
    digits[i] = 2;
  }
  return false;
}

}  // namespace minkqm::kernels::detail
