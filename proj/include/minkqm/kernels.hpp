#pragma once

// Hot loops of the moment computations. Each kernel has a serial reference (`*_reference`)
// that evaluates the defining sum in the most direct way, and an OpenMP version that
// reorganises the work. Results of the OpenMP versions do not depend on the thread count:
// per-item partial results land in fixed slots and are combined serially in index order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "minkqm/fraction.hpp"
#include "minkqm/prec_real.hpp"

namespace minkqm::kernels {

/// Vector of non-negative reals held as outward-rounded intervals [lo, hi].
class IntervalVector {
 public:
  IntervalVector() = default;
  IntervalVector(std::size_t n, mpfr_prec_t prec);

  std::size_t size() const { return lo_.size(); }
  mpfr_prec_t precision() const { return prec_; }
  /// Stores the ball; a lower end below zero is clamped to zero (entries are non-negative).
  void set(std::size_t i, const PrecReal& x);
  PrecReal get(std::size_t i) const;
  BigFloat& lo(std::size_t i) { return lo_[i]; }
  BigFloat& hi(std::size_t i) { return hi_[i]; }
  const BigFloat& lo(std::size_t i) const { return lo_[i]; }
  const BigFloat& hi(std::size_t i) const { return hi_[i]; }

 private:
  std::vector<BigFloat> lo_, hi_;
  mpfr_prec_t prec_ = 64;
};

/// Dense square matrix of non-negative intervals, row-major.
class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t n, mpfr_prec_t prec);

  std::size_t dimension() const { return n_; }
  mpfr_prec_t precision() const { return prec_; }
  void set(std::size_t i, std::size_t j, const PrecReal& x);
  PrecReal get(std::size_t i, std::size_t j) const;
  const BigFloat& lo(std::size_t i, std::size_t j) const { return lo_[i * n_ + j]; }
  const BigFloat& hi(std::size_t i, std::size_t j) const { return hi_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  mpfr_prec_t prec_ = 64;
  std::vector<BigFloat> lo_, hi_;
};

/// out = M v with directed rounding (lower ends rounded down, upper ends up).
void matvec_reference(const IntervalMatrix& m, const IntervalVector& v, IntervalVector& out);
void matvec(const IntervalMatrix& m, const IntervalVector& v, IntervalVector& out);

/// sum_i a_i b_i over the first min(|a|, |b|) entries, as an enclosing ball.
PrecReal dot(const IntervalVector& a, const IntervalVector& b);

/// Calls visit(p, q) for every [0; a_1, ..., a_s] with a_1 + ... + a_s = n, a_s >= 2.
void farey_enumerate(unsigned n, const std::function<void(std::uint64_t, std::uint64_t)>& visit);

/// sum of x^L over Farey generation n, exactly: direct rational accumulation.
Fraction farey_power_sum_reference(unsigned L, unsigned n);
/// Same sum; numerators are accumulated per denominator in parallel and combined by a
/// divide-and-conquer common-denominator reduction.
Fraction farey_power_sum(unsigned L, unsigned n);

/// Double-precision sum over the digit box 2 <= b_i <= B, together with the total weight
/// sum_b 2^{len - sum b} of the box (used for rounding-error bounds).
struct BoxSum {
  double sum = 0.0;
  double weight = 0.0;
  std::uint64_t count = 0;
};

/// sum_{b in box} 2^{len - sum b} [[b_1, ..., b_len]]^L.
BoxSum semiregular_power_sum_reference(unsigned L, unsigned len, unsigned B);
BoxSum semiregular_power_sum(unsigned L, unsigned len, unsigned B);

/// sum_{b in box} 2^{len - sum b} ([[b_1, ..., b_len - 1]]^L - [[b_1, ..., b_len]]^L), i.e.
/// L times the integral of f_len(x) x^{L-1} restricted to the box cylinders.
BoxSum cylinder_power_sum_reference(unsigned L, unsigned len, unsigned B);
BoxSum cylinder_power_sum(unsigned L, unsigned len, unsigned B);

/// w(x) = 1 / (e^x (2 e^x - 1)), evaluated without overflow.
double decay_weight(double x);

/// Integrand of the (l+1)-fold Bessel-kernel integral at a point with positive
/// coordinates, in the regrouped form
///   x_0^L * prod_{0<i<l} x_i * prod_{i<l} g(x_i x_{i+1}) * prod_i w(x_i),  g(y) = I_1(2 sqrt y)/sqrt y,
/// which equals x_0^L (x_0 x_l)^{-1/2} prod I_1(2 sqrt(x_i x_{i+1})) / prod e^{x_i}(2e^{x_i} - 1).
double theorem_integrand_double(unsigned L, std::span<const double> point);

/// Tensor-product rule sum_{i_0..i_l} prod w_{i_k} F(x_{i_0}, ..., x_{i_l}): every grid point.
double theorem_grid_sum_reference(unsigned L, unsigned l, std::span<const double> nodes,
                                  std::span<const double> weights);
/// Same tensor-product sum, factorised along the chain structure of F (O(l N^2)).
double theorem_grid_sum(unsigned L, unsigned l, std::span<const double> nodes,
                        std::span<const double> weights);

}  // namespace minkqm::kernels
