#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minkqm/fraction.hpp"
#include "minkqm/kernels.hpp"
#include "minkqm/prec_real.hpp"

namespace minkqm {

enum class Method { series, farey, bessel };

std::string to_string(Method m);
Method parse_method(const std::string& name);

/// Truncation parameters that produced an estimate. Unset fields did not apply.
struct TruncationParams {
  std::optional<int> n, lmax, Q, B, nodes;
  std::optional<double> X;
  /// True when part of the radius is an empirical estimate rather than a proven bound.
  bool heuristic = false;

  /// "lmax=25;Q=256" style listing of the set fields.
  std::string str() const;
};

struct MomentEstimate {
  int L = 0;
  PrecReal value;
  Method method = Method::series;
  TruncationParams params;
  /// Proven part of the error budget: the l-tail 2^{-lmax} plus accumulated radii.
  double tail_bound = 0.0;
};

/// Rationals [0; a_1, ..., a_s] with a_1 + ... + a_s = n and a_s >= 2, in enumeration order.
/// 2 <= n <= 26, otherwise ResourceLimit.
std::vector<Fraction> farey_generation(int n);

/// 2^{2-n} sum_{x in generation n} x^L, exactly.
Fraction farey_moment(int L, int n);

/// Truncated operator M[q, q'] = c_{q+q'} binom(q+q'-1, q'), 1 <= q, q' <= Q.
class TransferMatrix {
 public:
  static TransferMatrix build(int Q, Precision eps);
  /// Entries with relative accuracy 2^{-bits}.
  static TransferMatrix build_bits(int Q, mpfr_prec_t bits);

  int dimension() const { return static_cast<int>(m_.dimension()); }
  /// Entry (q, q'), 1-based.
  PrecReal operator()(int q, int qp) const;
  const kernels::IntervalMatrix& intervals() const { return m_; }

 private:
  explicit TransferMatrix(kernels::IntervalMatrix m) : m_(std::move(m)) {}
  kernels::IntervalMatrix m_;
};

TransferMatrix build_transfer_matrix(int Q, Precision eps);

/// The series V_l = u_L . M^{l-1} w truncated at q <= Q. Iterates M^k w are shared between
/// all L and l and extended on demand.
class VSeries {
 public:
  VSeries(int Q, Precision eps);

  int dimension() const { return Q_; }
  /// Enclosure of the truncated sum, which is a lower bound of V_l (all summands positive).
  PrecReal term(int L, int l);

 private:
  const kernels::IntervalVector& iterate(int k);
  const kernels::IntervalVector& left_vector(int L);

  int Q_;
  Precision eps_;
  mpfr_prec_t bits_;
  TransferMatrix matrix_;
  std::vector<kernels::IntervalVector> iterates_;
  std::map<int, kernels::IntervalVector> left_;
};

/// Truncated V_l(L) with q <= Q, no truncation estimate.
PrecReal v_term_truncated(int L, int l, int Q, Precision eps);

/// Truncated V_l(L) at 2Q, widened by the difference to the value at Q (empirical
/// truncation estimate).
PrecReal v_term(int L, int l, int Q, Precision eps);

/// A_l = sum_{b_i >= 2} 2^{l - sum b} [[b_1, ..., b_l]]^L with digits capped at B. The ball
/// covers the truncated sum and the tail 2 l 2^{-B}. 1 <= l <= 4 (l = 0 gives exact 0), B >= 3.
PrecReal a_partial_direct(int L, int l, int B);

struct MomentOptions {
  int min_lmax = 25;
  int q_start = 128;
  int q_max = 1024;
};

/// m_L = sum_l V_l by the transfer-matrix series, with Q doubled until two successive
/// sums agree to eps/4.
MomentEstimate moment(int L, Precision eps, const MomentOptions& opts = {});

/// 2^{2-n} sum over generation n of x^L as an estimate of m_L (radius covers only the
/// conversion to `bits`; the distance to m_L is not bounded).
MomentEstimate moment_farey(int L, int n, mpfr_prec_t bits = 256);

/// Series moments for several L sharing the transfer matrices.
class SeriesMoments {
 public:
  explicit SeriesMoments(Precision eps, MomentOptions opts = {});
  MomentEstimate operator()(int L);

 private:
  VSeries& series(int Q);
  PrecReal partial_sum(int L, int Q, int lmax);

  Precision eps_;
  MomentOptions opts_;
  int lmax_;
  std::map<int, VSeries> by_Q_;
};

/// R_L = sum_{k=0}^{L} binom(L, k) (-1)^k m_k - m_L with m_0 = 1, for L = 1..K. `m` holds m_1..m_K.
std::vector<PrecReal> symmetry_residual(std::span<const PrecReal> m);

/// Both sides of L int_0^1 f_{l+1}(x) x^{L-1} dx = -A_{l+1}/2 + sum_{i<l} A_{l-i}/2^{i+2} + 2^{-(l+1)}.
/// The left side sums the cylinder integrals of the piecewise constant f_{l+1}. l <= 3.
std::pair<PrecReal, PrecReal> h_integral_identity_check(int L, int l, int B);

}  // namespace minkqm
