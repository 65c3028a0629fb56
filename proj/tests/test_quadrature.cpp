#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omp.h>

#include <cmath>
#include <numeric>
#include <random>

#include "minkqm/errors.hpp"
#include "minkqm/kernels.hpp"
#include "minkqm/moments.hpp"
#include "minkqm/quadrature.hpp"
#include "minkqm/special.hpp"

using namespace minkqm;

namespace {

std::vector<PrecReal> point_of(std::initializer_list<double> xs) {
  std::vector<PrecReal> out;
  for (double x : xs) out.push_back(PrecReal::from_double(x, 64));
  return out;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_CASE("integrand closed forms") {
  for (double t : {0.1, 1.0, 3.5, 20.0}) {
    const PrecReal v = theorem_integrand(1, 0, point_of({t}), Precision(1e-25));
    const double expect = 1.0 / (std::exp(t) * (2 * std::exp(t) - 1));
    CHECK(std::fabs(v.mid_double() - expect) <= 1e-15 * expect);
  }
  const double e = std::exp(1.0);
  const double expect = std::cyl_bessel_i(1.0, 2.0) / std::pow(e * (2 * e - 1), 2);
  const PrecReal v = theorem_integrand(1, 1, point_of({1.0, 1.0}), Precision(1e-25));
  CHECK(std::fabs(v.mid_double() - expect) <= 1e-14 * expect);
  CHECK(std::fabs(std::cyl_bessel_i(1.0, 2.0) - 1.59064) < 1e-5);

  CHECK_THROWS_AS(theorem_integrand(1, 1, point_of({1.0, 0.0}), Precision(1e-10)), DomainError);
  CHECK_THROWS_AS(theorem_integrand(1, 1, point_of({1.0}), Precision(1e-10)), DomainError);
  CHECK_THROWS_AS(theorem_integrand(1, 0, point_of({-2.0}), Precision(1e-10)), DomainError);
}

TEST_CASE("integrand: ball and double forms agree and stay positive") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(1e-3, 30.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = trial % 4;
    const int L = 1 + trial % 5;
    std::vector<double> xs(static_cast<std::size_t>(l) + 1);
    for (double& x : xs) x = coord(rng);
    std::vector<PrecReal> ball;
    for (double x : xs) ball.push_back(PrecReal::from_double(x, 64));
    const PrecReal v = theorem_integrand(L, l, ball, Precision(1e-40));
    const double d = kernels::theorem_integrand_double(static_cast<unsigned>(L), xs);
    CHECK(v.is_positive());
    CHECK(d > 0.0);
    CHECK(std::fabs(v.mid_double() - d) <= 1e-13 * d);
  }
}

TEST_CASE("one-dimensional rules") {
  for (QuadRule rule : {QuadRule::tanh_sinh, QuadRule::gauss_legendre_composite}) {
    const Rule1D r = make_rule(rule, refine_nodes(rule, refine_nodes(rule, 33)), 40.0);
    CHECK(r.nodes.size() == r.weights.size());
    double s0 = 0, s2 = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      CHECK(r.nodes[i] > 0.0);
      CHECK(r.nodes[i] < 40.0);
      s0 += r.weights[i];
      s2 += r.weights[i] * r.nodes[i] * r.nodes[i];
    }
    CHECK(std::fabs(s0 - 40.0) < 1e-10);
    CHECK(std::fabs(s2 - 64000.0 / 3) < 1e-7);
  }
  CHECK(refine_nodes(QuadRule::tanh_sinh, 33) == 65);
  CHECK(refine_nodes(QuadRule::gauss_legendre_composite, 32) == 64);
  CHECK_THROWS_AS(make_rule(QuadRule::tanh_sinh, 5, 1.0), DomainError);
  CHECK(parse_quad_rule("gauss-legendre-composite") == QuadRule::gauss_legendre_composite);
  CHECK(to_string(QuadRule::tanh_sinh) == "tanh-sinh");
}

TEST_CASE("grid kernel matches the tensor-product reference") {
  const Rule1D r = make_rule(QuadRule::tanh_sinh, 17, 40.0);
  for (unsigned l = 0; l <= 2; ++l) {
    for (unsigned L : {1u, 3u}) {
      const double fast = kernels::theorem_grid_sum(L, l, r.nodes, r.weights);
      const double slow = kernels::theorem_grid_sum_reference(L, l, r.nodes, r.weights);
      CHECK(std::fabs(fast - slow) <= 1e-13 * slow);
    }
  }
  const Rule1D small = make_rule(QuadRule::gauss_legendre_composite, 8, 20.0);
  const double fast = kernels::theorem_grid_sum(2, 3, small.nodes, small.weights);
  const double slow = kernels::theorem_grid_sum_reference(2, 3, small.nodes, small.weights);
  CHECK(std::fabs(fast - slow) <= 1e-13 * slow);

  const Rule1D big = make_rule(QuadRule::tanh_sinh, 129, 40.0);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = kernels::theorem_grid_sum(1, 2, big.nodes, big.weights);
  omp_set_num_threads(4);
  const double four = kernels::theorem_grid_sum(1, 2, big.nodes, big.weights);
  omp_set_num_threads(saved);
  CHECK(one == four);
}

TEST_CASE("l = 0 reduces to (L-1)! c_L") {
  CHECK(std::fabs(theorem_term(1, 0).mid_double() - 0.3862943611) <= 1e-8);
  CHECK(std::fabs(theorem_term(3, 0).mid_double() - 0.1488527744) <= 1e-8);
  for (QuadRule rule : {QuadRule::tanh_sinh, QuadRule::gauss_legendre_composite}) {
    QuadConfig cfg;
    cfg.rule = rule;
    for (int L = 1; L <= 6; ++L) {
      const PrecReal q = theorem_term(L, 0, cfg);
      const PrecReal ref = c_coeff(L, Precision(1e-20)) * PrecReal::from_double(factorial(L - 1), 64);
      CHECK(q.overlaps(ref, 1e-8));
      CHECK(q.rad_double() < 1e-10);
    }
  }
}

TEST_CASE("quadrature agrees with the series") {
  VSeries s(256, Precision(1e-14));
  for (QuadRule rule : {QuadRule::tanh_sinh, QuadRule::gauss_legendre_composite}) {
    QuadConfig cfg;
    cfg.rule = rule;
    for (int L = 1; L <= 3; ++L) {
      for (int l = 0; l <= 2; ++l) {
        const PrecReal q = theorem_term(L, l, cfg);
        const PrecReal v = s.term(L, l) * PrecReal::from_double(factorial(L - 1), 64);
        CHECK(q.overlaps(v));
      }
    }
  }
  CHECK(std::fabs(theorem_term(1, 1).mid_double() - 0.0791502471) <= 1e-6);
}

TEST_CASE("smaller boxes and coarser grids stay consistent") {
  for (int l = 0; l <= 2; ++l) {
    const PrecReal full = theorem_term(2, l);
    for (double X : {12.0, 16.0, 24.0}) {
      QuadConfig cfg;
      cfg.X = X;
      const PrecReal part = theorem_term(2, l, cfg);
      CHECK(part.overlaps(full));
      CHECK(full.lower_double() >= part.lower_double() - part.rad_double() - full.rad_double());
    }
    QuadConfig coarse;
    coarse.nodes_per_axis = 9;
    coarse.tolerance = 1e-9;
    CHECK(theorem_term(2, l, coarse).overlaps(full));
  }
  for (int l = 0; l <= 2; ++l) {
    CHECK(theorem_tail_bound(3, l, 20.0) > theorem_tail_bound(3, l, 40.0));
    CHECK(theorem_tail_bound(3, l, 40.0) < 1e-8);
  }
}

TEST_CASE("quadrature errors") {
  CHECK_THROWS_AS(theorem_term(1, 3), ResourceLimit);
  QuadConfig cfg;
  cfg.tolerance = 1e-300;
  cfg.max_nodes = 300;
  CHECK_THROWS_AS(theorem_term(2, 1, cfg), PrecisionUnreachable);
  QuadConfig bad;
  bad.nodes_per_axis = 4;
  CHECK_THROWS_AS(theorem_term(1, 0, bad), DomainError);
  bad = QuadConfig{};
  bad.X = -1;
  CHECK_THROWS_AS(theorem_term(1, 0, bad), DomainError);
  CHECK_THROWS_AS(theorem_term(0, 0), DomainError);
}
