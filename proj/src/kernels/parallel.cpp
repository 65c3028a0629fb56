#include <algorithm>
#include <numeric>

#include <gmpxx.h>
#include <omp.h>

#include "common.hpp"
#include "minkqm/kernels.hpp"
#include "minkqm/special.hpp"
#include "minkqm/summation.hpp"

namespace minkqm::kernels {

using detail::cf_step;
using detail::ipow;

void matvec(const IntervalMatrix& m, const IntervalVector& v, IntervalVector& out) {
  const std::size_t n = m.dimension();
  if (v.size() != n || out.size() != n) throw DomainError("matvec: dimension mismatch");
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    const auto r = static_cast<std::size_t>(i);
    mpfr_ptr lo = out.lo(r).get();
    mpfr_ptr hi = out.hi(r).get();
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
    for (std::size_t j = 0; j < n; ++j) {
      mpfr_fma(lo, m.lo(r, j).get(), v.lo(j).get(), lo, MPFR_RNDD);
      mpfr_fma(hi, m.hi(r, j).get(), v.hi(j).get(), hi, MPFR_RNDU);
    }
  }
}

namespace {

struct Node {
  std::uint64_t pp, qp, p, q;
  unsigned remaining;
};

// Per-denominator numerator sums sum_{p/q in generation} p^L.
class DenominatorAccumulator {
 public:
  DenominatorAccumulator(unsigned L, std::uint64_t max_q)
      : L_(L), narrow_(fits_narrow(L, max_q)) {
    if (narrow_) {
      small_.assign(max_q + 1, 0);
    } else {
      big_.assign(max_q + 1, mpz_class(0));
    }
  }

  void add(std::uint64_t p, std::uint64_t q) {
    if (narrow_) {
      unsigned __int128 t = 1;
      for (unsigned i = 0; i < L_; ++i) t *= p;
      small_[q] += t;
    } else {
      mpz_class t;
      mpz_ui_pow_ui(t.get_mpz_t(), p, L_);
      big_[q] += t;
    }
  }

  void merge_into(std::vector<mpz_class>& total) const {
    for (std::size_t q = 0; q < total.size(); ++q) {
      if (narrow_) {
        if (small_[q] == 0) continue;
        const auto hi = static_cast<std::uint64_t>(small_[q] >> 64);
        const auto lo = static_cast<std::uint64_t>(small_[q]);
        mpz_class v(static_cast<unsigned long>(hi));
        v <<= 64;
        v += mpz_class(static_cast<unsigned long>(lo));
        total[q] += v;
      } else if (big_[q] != 0) {
        total[q] += big_[q];
      }
    }
  }

 private:
  // Each denominator q carries at most q numerators, each below q^L.
  static bool fits_narrow(unsigned L, std::uint64_t max_q) {
    return (L + 1) * std::log2(static_cast<double>(max_q) + 1.0) < 126.0;
  }

  unsigned L_;
  bool narrow_;
  std::vector<unsigned __int128> small_;
  std::vector<mpz_class> big_;
};

void walk(const Node& root, DenominatorAccumulator& acc) {
  std::vector<Node> stack{root};
  while (!stack.empty()) {
    const Node f = stack.back();
    stack.pop_back();
    for (unsigned a = 1; a + 2 <= f.remaining; ++a) {
      stack.push_back({f.p, f.q, a * f.p + f.pp, a * f.q + f.qp, f.remaining - a});
    }
    acc.add(f.remaining * f.p + f.pp, f.remaining * f.q + f.qp);
  }
}

// sum_{q in [lo, hi)} S_q / q^L as N / D^L with D = lcm of the contributing q.
struct Partial {
  mpz_class num, lcm;
};

Partial reduce(const std::vector<mpz_class>& sums, std::size_t lo, std::size_t hi, unsigned L) {
  if (hi - lo == 1) {
    if (sums[lo] == 0) return {0, 1};
    return {sums[lo], mpz_class(static_cast<unsigned long>(lo))};
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const Partial a = reduce(sums, lo, mid, L);
  const Partial b = reduce(sums, mid, hi, L);
  Partial out;
  mpz_lcm(out.lcm.get_mpz_t(), a.lcm.get_mpz_t(), b.lcm.get_mpz_t());
  mpz_class fa = out.lcm / a.lcm;
  mpz_class fb = out.lcm / b.lcm;
  mpz_pow_ui(fa.get_mpz_t(), fa.get_mpz_t(), L);
  mpz_pow_ui(fb.get_mpz_t(), fb.get_mpz_t(), L);
  out.num = a.num * fa + b.num * fb;
  return out;
}

std::uint64_t fibonacci(unsigned k) {
  std::uint64_t a = 0, b = 1;
  for (unsigned i = 0; i < k; ++i) {
    const std::uint64_t t = a + b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Fraction farey_power_sum(unsigned L, unsigned n) {
  if (n < 2) return Fraction(0);
  // The largest denominator in generation n is F_{n+1}, reached by [0; 1, 1, ..., 1, 2].
  const std::uint64_t max_q = fibonacci(n + 1);

  // Expand breadth-first to a deterministic frontier; leaves met on the way go to `top`.
  DenominatorAccumulator top(L, max_q);
  std::vector<Node> frontier{{1, 0, 0, 1, n}};
  while (frontier.size() < 1024) {
    std::vector<Node> next;
    bool expanded = false;
    for (const Node& f : frontier) {
      if (f.remaining < 3) {
        next.push_back(f);
        continue;
      }
      expanded = true;
      top.add(f.remaining * f.p + f.pp, f.remaining * f.q + f.qp);
      for (unsigned a = 1; a + 2 <= f.remaining; ++a) {
        next.push_back({f.p, f.q, a * f.p + f.pp, a * f.q + f.qp, f.remaining - a});
      }
    }
    frontier.swap(next);
    if (!expanded) break;
  }

  std::vector<mpz_class> sums(max_q + 1, mpz_class(0));
  top.merge_into(sums);
  const auto tasks = static_cast<std::int64_t>(frontier.size());
#pragma omp parallel
  {
    DenominatorAccumulator local(L, max_q);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t t = 0; t < tasks; ++t) walk(frontier[static_cast<std::size_t>(t)], local);
#pragma omp critical
    local.merge_into(sums);
  }

  const Partial total = reduce(sums, 1, sums.size(), L);
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), total.lcm.get_mpz_t(), L);
  return Fraction(total.num, den);
}

namespace {

// Suffix-sharing walk over the outer digits b_1..b_{depth} (the inner ones are already
// folded into x and y). Terms are added in lexicographic digit order.
template <bool kCylinder>
void box_walk(unsigned L, unsigned depth, unsigned B, double x, double y, long digit_sum,
              unsigned len, NeumaierSum& sum, NeumaierSum& weight) {
  for (unsigned b = 2; b <= B; ++b) {
    const double nx = cf_step(b, x);
    const double ny = kCylinder ? cf_step(b, y) : 0.0;
    if (depth == 1) {
      const double w = std::ldexp(1.0, static_cast<int>(len) - static_cast<int>(digit_sum + b));
      if constexpr (kCylinder) {
        sum.add(w * (ipow(ny, L) - ipow(nx, L)));
      } else {
        sum.add(w * ipow(nx, L));
      }
      weight.add(w);
    } else {
      box_walk<kCylinder>(L, depth - 1, B, nx, ny, digit_sum + b, len, sum, weight);
    }
  }
}

template <bool kCylinder>
BoxSum box_sum(unsigned L, unsigned len, unsigned B) {
  detail::check_box(len, B);
  // One task per innermost digit.
  const unsigned tasks = B - 1;
  std::vector<double> sums(tasks), weights(tasks);
  std::vector<std::uint64_t> counts(tasks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks); ++t) {
    const unsigned b = static_cast<unsigned>(t) + 2;
    const double x = cf_step(b, 0.0);
    const double y = kCylinder ? cf_step(b - 1, 0.0) : 0.0;
    NeumaierSum s, w;
    if (len == 1) {
      const double wt = std::ldexp(1.0, 1 - static_cast<int>(b));
      s.add(kCylinder ? wt * (ipow(y, L) - ipow(x, L)) : wt * ipow(x, L));
      w.add(wt);
    } else {
      box_walk<kCylinder>(L, len - 1, B, x, y, b, len, s, w);
    }
    sums[static_cast<std::size_t>(t)] = s.value();
    weights[static_cast<std::size_t>(t)] = w.value();
    counts[static_cast<std::size_t>(t)] = s.count();
  }
  return {ordered_sum(sums), ordered_sum(weights),
          std::accumulate(counts.begin(), counts.end(), std::uint64_t{0})};
}

}  // namespace

BoxSum semiregular_power_sum(unsigned L, unsigned len, unsigned B) {
  return box_sum<false>(L, len, B);
}

BoxSum cylinder_power_sum(unsigned L, unsigned len, unsigned B) {
  return box_sum<true>(L, len, B);
}

double theorem_grid_sum(unsigned L, unsigned l, std::span<const double> nodes,
                        std::span<const double> weights) {
  const std::size_t n = nodes.size();
  if (weights.size() != n) throw DomainError("quadrature: nodes and weights differ in length");
  const auto ni = static_cast<std::int64_t>(n);
  std::vector<double> dw(n);
  for (std::size_t i = 0; i < n; ++i) dw[i] = weights[i] * decay_weight(nodes[i]);

  // phi_0(i) = w_i x_i^L w(x_i); phi_k(j) = w_j w(x_j) [x_j if k < l] sum_i phi_{k-1}(i) g(x_i x_j).
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    phi[i] = dw[i] * ipow(nodes[i], L);
    if (l == 0) phi[i] /= nodes[i];
  }
  if (l == 0) return ordered_sum(phi);

  std::vector<double> kernel(n * n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < ni; ++i) {
    for (std::int64_t j = i; j < ni; ++j) {
      const double g = bessel_i1_ratio(nodes[static_cast<std::size_t>(i)] * nodes[static_cast<std::size_t>(j)]);
      kernel[static_cast<std::size_t>(i * ni + j)] = g;
      kernel[static_cast<std::size_t>(j * ni + i)] = g;
    }
  }

  std::vector<double> next(n);
  for (unsigned k = 1; k <= l; ++k) {
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < ni; ++j) {
      const auto c = static_cast<std::size_t>(j);
      NeumaierSum s;
      for (std::size_t i = 0; i < n; ++i) s.add(phi[i] * kernel[c * n + i]);
      double v = dw[c] * s.value();
      if (k < l) v *= nodes[c];
      next[c] = v;
    }
    phi.swap(next);
  }
  return ordered_sum(phi);
}

}  // namespace minkqm::kernels
