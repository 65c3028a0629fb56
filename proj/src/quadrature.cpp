#include "minkqm/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "minkqm/errors.hpp"
#include "minkqm/kernels.hpp"
#include "minkqm/special.hpp"

namespace minkqm {

std::string to_string(QuadRule r) {
  return r == QuadRule::tanh_sinh ? "tanh-sinh" : "gauss-legendre-composite";
}

QuadRule parse_quad_rule(const std::string& name) {
  if (name == "tanh-sinh" || name == "tanh_sinh") return QuadRule::tanh_sinh;
  if (name == "gauss-legendre-composite" || name == "gauss-legendre") return QuadRule::gauss_legendre_composite;
  throw DomainError("unknown quadrature rule '" + name + "'");
}

void QuadConfig::validate() const {
  if (!(X > 0.0) || X > 300.0) throw DomainError("quadrature box X must lie in (0, 300]");
  if (nodes_per_axis < 8) throw DomainError("quadrature needs at least 8 nodes per axis");
  if (max_nodes < nodes_per_axis) throw DomainError("max_nodes below the starting node count");
  if (!(tolerance > 0.0)) throw DomainError("quadrature tolerance must be positive");
}

namespace {

constexpr double kTanhSinhRange = 3.5;
constexpr int kPanelPoints = 8;

Rule1D tanh_sinh(int nodes, double X) {
  const int half = (nodes - 1) / 2;
  const double h = kTanhSinhRange / half;
  Rule1D r;
  for (int k = -half; k <= half; ++k) {
    const double t = k * h;
    const double u = std::numbers::pi / 2 * std::sinh(t);
    // x = X sigma(2u), dx/dt = X 2 sigma(2u) sigma(-2u) (pi/2) cosh t
    const double s = 1.0 / (1.0 + std::exp(-2 * u));
    const double sc = 1.0 / (1.0 + std::exp(2 * u));
    const double x = X * s;
    const double w = h * X * 2 * s * sc * std::numbers::pi / 2 * std::cosh(t);
    if (x <= 0.0 || x >= X || w == 0.0) continue;
    r.nodes.push_back(x);
    r.weights.push_back(w);
  }
  return r;
}

// Gauss-Legendre nodes and weights on (-1, 1) by Newton iteration on P_m.
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(m), 0.0);
  w.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2 / ((1 - z * z) * dp * dp);
  }
}

Rule1D composite_gauss(int nodes, double X) {
  const int panels = std::max(1, nodes / kPanelPoints);
  std::vector<double> gx, gw;
  gauss_legendre(kPanelPoints, gx, gw);
  const double width = X / panels;
  Rule1D r;
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      r.nodes.push_back(a + width * (gx[i] + 1) / 2);
      r.weights.push_back(width * gw[i] / 2);
    }
  }
  return r;
}

// Gamma(p + 1, y) / beta^{p+1} with Gamma(p + 1, y) = p! e^{-y} sum_{j<=p} y^j / j!.
double upper_moment(int p, double beta, double a) {
  const double y = beta * a;
  double term = 1.0, sum = 1.0;
  for (int j = 1; j <= p; ++j) {
    term *= y / j;
    sum += term;
  }
  return std::tgamma(p + 1.0) * std::exp(-y) * sum / std::pow(beta, p + 1.0);
}

}  // namespace

Rule1D make_rule(QuadRule rule, int nodes, double X) {
  if (nodes < 8) throw DomainError("quadrature needs at least 8 nodes per axis");
  return rule == QuadRule::tanh_sinh ? tanh_sinh(nodes, X) : composite_gauss(nodes, X);
}

int refine_nodes(QuadRule rule, int nodes) {
  if (rule == QuadRule::tanh_sinh) return 2 * nodes - 1;
  return 2 * std::max(kPanelPoints, nodes / kPanelPoints * kPanelPoints);
}

PrecReal theorem_integrand(int L, int l, std::span<const PrecReal> point, Precision eps) {
  if (L < 1) throw DomainError("moment order L must be positive");
  if (l < 0 || point.size() != static_cast<std::size_t>(l) + 1) {
    throw DomainError("integrand needs exactly l + 1 coordinates");
  }
  for (const PrecReal& x : point) {
    if (!x.is_positive()) throw DomainError("integrand coordinates must be positive");
  }
  const Precision inner(eps.eps() / 64);
  const mpfr_prec_t prec = inner.working_bits();
  const PrecReal one(1, prec), two(2, prec);
  PrecReal v = pow(point[0].with_precision(prec), static_cast<unsigned>(L));
  PrecReal den = point[0].with_precision(prec);
  if (l > 0) den *= point.back();
  for (int i = 0; i < l; ++i) {
    const auto k = static_cast<std::size_t>(i);
    v *= bessel_i1_scaled(point[k] * point[k + 1], inner);
    if (i > 0) den *= point[k];
  }
  v /= den;
  for (const PrecReal& x : point) {
    const PrecReal e = exp(x.with_precision(prec));
    v /= e * (two * e - one);
  }
  return v;
}

double theorem_tail_bound(int L, int l, double X) {
  if (l == 0) return upper_moment(L - 1, 2.0, X);
  if (l == 1) return upper_moment(L, 1.0, X) + upper_moment(0, 1.0, X) * std::tgamma(L + 1.0);
  if (l != 2) throw ResourceLimit("tail bound available for l <= 2");
  // majorant x_0^L x_1 exp(-(2-t) x_0 - (2-2/t) x_1 - (2-t) x_2)
  const int powers[3] = {L, 1, 0};
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    double best = INFINITY;
    for (int i = 1; i < 1000; ++i) {
      const double t = 1.0 + i / 1000.0;
      const double beta[3] = {2 - t, 2 - 2 / t, 2 - t};
      double piece = 1.0;
      for (int j = 0; j < 3; ++j) piece *= upper_moment(powers[j], beta[j], j == k ? X : 0.0);
      best = std::min(best, piece);
    }
    total += best;
  }
  return total;
}

QuadratureResult theorem_term_detailed(int L, int l, const QuadConfig& cfg) {
  if (L < 1) throw DomainError("moment order L must be positive");
  if (l < 0) throw DomainError("series index l must be non-negative");
  if (l > 2) throw ResourceLimit("direct quadrature is limited to l <= 2");
  cfg.validate();
  auto estimate = [&](int n) {
    const Rule1D r = make_rule(cfg.rule, n, cfg.X);
    return kernels::theorem_grid_sum(static_cast<unsigned>(L), static_cast<unsigned>(l), r.nodes, r.weights);
  };
  int n = cfg.nodes_per_axis;
  double previous = estimate(n);
  while (true) {
    const int next = refine_nodes(cfg.rule, n);
    if (next > cfg.max_nodes) {
      throw PrecisionUnreachable("quadrature did not converge within " + std::to_string(cfg.max_nodes) +
                                 " nodes per axis");
    }
    const double current = estimate(next);
    n = next;
    const double drift = std::fabs(current - previous);
    if (drift <= cfg.tolerance) {
      QuadratureResult out;
      out.nodes = n;
      out.drift = drift;
      out.tail = theorem_tail_bound(L, l, cfg.X);
      // The box integral lies below the full one; the tail only adds.
      out.value = PrecReal::from_double(current, 64) + PrecReal::from_double(out.tail / 2, 64);
      out.value.add_error(drift + out.tail / 2 + 1e-13 * std::fabs(current) + 1e-300);
      return out;
    }
    previous = current;
  }
}

PrecReal theorem_term(int L, int l, const QuadConfig& cfg) { return theorem_term_detailed(L, l, cfg).value; }

MomentEstimate moment_bessel(int L, Precision eps, const QuadConfig& cfg, const MomentOptions& opts) {
  if (L < 1) throw DomainError("moment order L must be positive");
  const int lmax = std::max(opts.min_lmax, static_cast<int>(std::ceil(std::log2(2.0 / eps.eps()))));
  const PrecReal scale = PrecReal::from_double(std::tgamma(L), 64);
  MomentEstimate est;
  est.L = L;
  est.method = Method::bessel;
  int nodes = 0;
  PrecReal sum(0, 128);
  for (int l = 0; l <= 2; ++l) {
    const QuadratureResult q = theorem_term_detailed(L, l, cfg);
    nodes = std::max(nodes, q.nodes);
    sum += q.value / scale;
  }
  VSeries coarse(opts.q_start, Precision(eps.eps() / 16));
  VSeries fine(2 * opts.q_start, Precision(eps.eps() / 16));
  PrecReal a(0, 128), b(0, 128);
  for (int l = 3; l <= lmax; ++l) {
    a += coarse.term(L, l);
    b += fine.term(L, l);
  }
  const double l_tail = std::ldexp(1.0, -lmax);
  est.tail_bound = l_tail + sum.rad_double() + b.rad_double();
  b.add_error(b.max_distance(a));
  est.value = sum + b + PrecReal::from_double(l_tail / 2, 128);
  est.value.add_error(l_tail / 2);
  est.params.lmax = lmax;
  est.params.Q = 2 * opts.q_start;
  est.params.nodes = nodes;
  est.params.X = cfg.X;
  est.params.heuristic = true;
  return est;
}

}  // namespace minkqm
