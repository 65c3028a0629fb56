#pragma once

#include <span>
#include <string>
#include <vector>

#include "minkqm/moments.hpp"
#include "minkqm/prec_real.hpp"

namespace minkqm {

enum class QuadRule { tanh_sinh, gauss_legendre_composite };

std::string to_string(QuadRule r);
QuadRule parse_quad_rule(const std::string& name);

struct QuadConfig {
  /// Integration box [0, X]^{l+1}.
  double X = 40.0;
  /// Starting node count per axis; doubled until two successive estimates agree.
  int nodes_per_axis = 33;
  QuadRule rule = QuadRule::tanh_sinh;
  double tolerance = 1e-12;
  int max_nodes = 2049;

  void validate() const;
};

/// One-dimensional rule on (0, X); no node sits on an endpoint.
struct Rule1D {
  std::vector<double> nodes, weights;
};

Rule1D make_rule(QuadRule rule, int nodes, double X);
/// Node count of the next refinement (tanh-sinh halves the step, composite rules double the panels).
int refine_nodes(QuadRule rule, int nodes);

/// x_0^L (x_0 x_l)^{-1/2} prod_{i<l} I_1(2 sqrt(x_i x_{i+1})) / prod_i e^{x_i}(2 e^{x_i} - 1), evaluated as
/// x_0^L prod_{i<l} S(x_i x_{i+1}) / (x_0 x_l prod_{0<i<l} x_i) * prod_i w(x_i), S(y) = sqrt(y) I_1(2 sqrt y).
/// Every coordinate must be positive.
PrecReal theorem_integrand(int L, int l, std::span<const PrecReal> point, Precision eps);

/// Bound for the integral of the integrand outside [0, X]^{l+1}, l <= 2.
///  l = 0: w(x) <= e^{-2x} gives Gamma(L, 2X) / 2^L.
///  l >= 1: I_1(z) <= (z/2) e^z and w(x) <= e^{-2x}, then 2 sqrt(ab) <= t a + b/t splits the
///  exponent; for l = 2 the best t in (1, 2) is chosen separately for each coordinate leaving the box.
double theorem_tail_bound(int L, int l, double X);

struct QuadratureResult {
  PrecReal value;
  int nodes = 0;
  double drift = 0.0;
  double tail = 0.0;
};

/// The (l+1)-fold integral over (0, inf)^{l+1}, equal to (L-1)! V_l. l <= 2.
QuadratureResult theorem_term_detailed(int L, int l, const QuadConfig& cfg = {});
PrecReal theorem_term(int L, int l, const QuadConfig& cfg = {});

/// m_L with l = 0, 1, 2 from quadrature ((L-1)! V_l) and l >= 3 from the series
/// (truncation estimated by doubling Q).
MomentEstimate moment_bessel(int L, Precision eps, const QuadConfig& cfg = {}, const MomentOptions& opts = {});

}  // namespace minkqm
