#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace minkqm {

/// Neumaier's variant of compensated summation. For non-negative inputs the error of
/// value() is at most 2u|S| + O(n u^2) S.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    ++count_;
  }
  NeumaierSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }
  std::uint64_t count() const { return count_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::uint64_t count_ = 0;
};

/// Compensated sum of a span in index order; the result does not depend on how the
/// span was filled.
inline double ordered_sum(std::span<const double> xs) {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

}  // namespace minkqm
