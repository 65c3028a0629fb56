#pragma once

#include <map>
#include <string>
#include <vector>

#include "minkqm/fraction.hpp"
#include "minkqm/prec_real.hpp"
#include "minkqm/quadrature.hpp"

namespace minkqm {

/// Finite sum of c_e z^e with rational coefficients and integer (possibly negative) exponents.
/// Zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(int exponent, const Fraction& coefficient);

  const std::map<int, Fraction>& coefficients() const { return c_; }
  Fraction coefficient(int exponent) const;
  bool is_zero() const { return c_.empty(); }

  void add_term(int exponent, const Fraction& coefficient);
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Fraction& s);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator*(LaurentPoly a, const Fraction& s) { return a *= s; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

  LaurentPoly derivative(unsigned order = 1) const;
  /// Value at z; z = 0 is rejected when negative exponents are present.
  Fraction eval(const Fraction& z) const;
  /// order-th derivative at z, without forming the derivative polynomial.
  Fraction derivative_at(unsigned order, const Fraction& z) const;
  /// Every coefficient has a power-of-two denominator.
  bool dyadic() const;
  /// e.g. "1/4 - 1/4*z^-2"; "0" for the zero polynomial.
  std::string str() const;

 private:
  std::map<int, Fraction> c_;
};

/// Q_0 = -1/(2z), Q_n = (1/2) sum_{j<n} Q_{n-j-1}^{(j)}(-1)/j! (z^j - z^{-(j+2)}).
/// Built incrementally; each Q_m^{(j)}(-1) is computed once and cached.
class QSequence {
 public:
  static constexpr int kMaxN = 60;

  QSequence();
  /// Extends the table through Q_n. n <= kMaxN, otherwise ResourceLimit.
  void extend_to(int n);
  int size() const { return static_cast<int>(q_.size()); }
  const LaurentPoly& operator[](int n) const { return q_.at(static_cast<std::size_t>(n)); }
  /// Q_m^{(j)}(-1), m < size().
  const Fraction& derivative_at_minus_one(int m, int j) const;

 private:
  std::vector<LaurentPoly> q_;
  mutable std::vector<std::vector<Fraction>> d_;
};

/// Q_0..Q_N.
std::vector<LaurentPoly> q_sequence(int N);

/// Q_n recomputed from nothing: each Q_m is rebuilt by differentiating the polynomials
/// of the previous step, with no shared cache.
LaurentPoly q_polynomial_from_scratch(int n);

/// Q_n'(-1) for n = 0..N.
std::vector<Fraction> q_prime_at_minus_one(int N);

struct LambdaSum {
  PrecReal value;
  /// |last term|; a size hint only, not a bound.
  double heuristic_remainder = 0.0;
};

/// Lambda_N(t) = sum_{n<=N} Q_n'(-1) t^n / n!.
LambdaSum lambda_partial(const PrecReal& t, int N);
Fraction lambda_partial_exact(const Fraction& t, int N);

struct M2Report {
  double T = 0.0;
  int N = 0;
  /// int_0^T Lambda_N(t) e^{-t} dt from the incomplete-gamma closed form.
  PrecReal integral;
  /// The same integral by one-dimensional quadrature, as a cross-check.
  double integral_quadrature = 0.0;
  /// m_2 from the transfer-matrix series.
  PrecReal m2;
  PrecReal difference;
  /// Last series term plus Lambda_N(T) e^{-T}; a size hint for the truncations.
  double heuristic_remainder = 0.0;
};

/// Compares int_0^T Lambda_N(t) e^{-t} dt with m_2. Reports only; nothing is asserted.
M2Report conjecture_m2_report(double T, int N, const QuadConfig& cfg = {}, double m2_eps = 1e-8);

}  // namespace minkqm
