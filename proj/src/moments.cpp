#include "minkqm/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minkqm/errors.hpp"
#include "minkqm/special.hpp"

namespace minkqm {

std::string to_string(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::farey: return "farey";
    case Method::bessel: return "bessel";
  }
  return "series";
}

Method parse_method(const std::string& name) {
  if (name == "series") return Method::series;
  if (name == "farey") return Method::farey;
  if (name == "bessel") return Method::bessel;
  throw DomainError("unknown method '" + name + "' (expected series, farey or bessel)");
}

std::string TruncationParams::str() const {
  std::ostringstream out;
  const char* sep = "";
  auto field = [&](const char* name, const auto& v) {
    if (v) {
      out << sep << name << '=' << *v;
      sep = ";";
    }
  };
  field("n", n);
  field("lmax", lmax);
  field("Q", Q);
  field("B", B);
  field("nodes", nodes);
  field("X", X);
  if (heuristic) out << sep << "heuristic";
  return out.str();
}

namespace {

void check_generation(int n) {
  if (n < 2 || n > 26) throw ResourceLimit("Farey generation must satisfy 2 <= n <= 26");
}

void check_L(int L) {
  if (L < 1) throw DomainError("moment order L must be positive");
}

}  // namespace

std::vector<Fraction> farey_generation(int n) {
  check_generation(n);
  std::vector<Fraction> out;
  out.reserve(std::size_t{1} << (n - 2));
  kernels::farey_enumerate(static_cast<unsigned>(n), [&](std::uint64_t p, std::uint64_t q) {
    out.emplace_back(mpz_class(static_cast<unsigned long>(p)), mpz_class(static_cast<unsigned long>(q)));
  });
  return out;
}

Fraction farey_moment(int L, int n) {
  check_L(L);
  check_generation(n);
  mpz_class scale = 1;
  scale <<= static_cast<unsigned>(n - 2);
  return kernels::farey_power_sum(static_cast<unsigned>(L), static_cast<unsigned>(n)) /
         Fraction(scale, 1);
}

MomentEstimate moment_farey(int L, int n, mpfr_prec_t bits) {
  MomentEstimate est;
  est.L = L;
  est.method = Method::farey;
  est.value = PrecReal::from_fraction(farey_moment(L, n), bits);
  est.params.n = n;
  return est;
}

TransferMatrix TransferMatrix::build(int Q, Precision eps) {
  // Entries lie in (0, 1), so relative accuracy at working precision meets eps.
  return build_bits(Q, eps.working_bits() + 16);
}

TransferMatrix TransferMatrix::build_bits(int Q, mpfr_prec_t bits) {
  if (Q < 1) throw DomainError("transfer matrix dimension must be positive");
  const auto n = static_cast<std::size_t>(Q);
  std::vector<PrecReal> c(2 * n + 1);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t s = 2; s <= static_cast<std::int64_t>(2 * n); ++s) {
    c[static_cast<std::size_t>(s)] = c_coeff_relative(s, bits);
  }
  kernels::IntervalMatrix m(n, bits);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < Q; ++i) {
    const auto q = static_cast<unsigned long>(i + 1);
    mpz_class binom = 1;  // binom(q + q' - 1, q') at q' = 0
    for (unsigned long qp = 1; qp <= n; ++qp) {
      binom *= q + qp - 1;
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), qp);
      m.set(q - 1, qp - 1, c[q + qp] * PrecReal::from_mpz(binom, bits));
    }
  }
  return TransferMatrix(std::move(m));
}

PrecReal TransferMatrix::operator()(int q, int qp) const {
  if (q < 1 || qp < 1 || q > dimension() || qp > dimension()) {
    throw DomainError("transfer matrix index out of range");
  }
  return m_.get(static_cast<std::size_t>(q - 1), static_cast<std::size_t>(qp - 1));
}

TransferMatrix build_transfer_matrix(int Q, Precision eps) { return TransferMatrix::build(Q, eps); }

VSeries::VSeries(int Q, Precision eps)
    : Q_(Q),
      eps_(eps),
      bits_(eps.working_bits() + 16 + static_cast<mpfr_prec_t>(std::ceil(std::log2(Q + 1.0)))),
      matrix_(TransferMatrix::build_bits(Q, bits_)) {
  kernels::IntervalVector w(static_cast<std::size_t>(Q), bits_);
  for (int q = 1; q <= Q; ++q) w.set(static_cast<std::size_t>(q - 1), c_coeff_relative(q, bits_));
  iterates_.push_back(std::move(w));
}

const kernels::IntervalVector& VSeries::iterate(int k) {
  while (static_cast<int>(iterates_.size()) <= k) {
    kernels::IntervalVector next(static_cast<std::size_t>(Q_), bits_);
    kernels::matvec(matrix_.intervals(), iterates_.back(), next);
    iterates_.push_back(std::move(next));
  }
  return iterates_[static_cast<std::size_t>(k)];
}

const kernels::IntervalVector& VSeries::left_vector(int L) {
  auto it = left_.find(L);
  if (it != left_.end()) return it->second;
  kernels::IntervalVector u(static_cast<std::size_t>(Q_), bits_);
  const auto Lu = static_cast<unsigned long>(L);
  mpz_class binom = 1;
  for (unsigned long q = 1; q <= static_cast<unsigned long>(Q_); ++q) {
    binom *= Lu + q - 1;
    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), q);
    u.set(q - 1, c_coeff_relative(static_cast<long>(Lu + q), bits_) * PrecReal::from_mpz(binom, bits_));
  }
  return left_.emplace(L, std::move(u)).first->second;
}

PrecReal VSeries::term(int L, int l) {
  check_L(L);
  if (l < 0) throw DomainError("series index l must be non-negative");
  if (l == 0) return c_coeff_relative(L, bits_);
  const kernels::IntervalVector& u = left_vector(L);
  return kernels::dot(u, iterate(l - 1));
}

PrecReal v_term_truncated(int L, int l, int Q, Precision eps) {
  if (Q < 1) throw DomainError("series truncation Q must be positive");
  VSeries series(Q, eps);
  return series.term(L, l);
}

PrecReal v_term(int L, int l, int Q, Precision eps) {
  if (l == 0) return v_term_truncated(L, 0, Q, eps);
  const PrecReal coarse = v_term_truncated(L, l, Q, eps);
  PrecReal fine = v_term_truncated(L, l, 2 * Q, eps);
  fine.add_error(fine.max_distance(coarse));
  return fine;
}

namespace {

constexpr double kUnit = 0x1p-53;

double gamma_factor(int ops) {
  const double k = ops * kUnit;
  return k / (1.0 - k);
}

void check_box_args(int L, int l, int B) {
  check_L(L);
  if (l < 0) throw DomainError("digit count must be non-negative");
  if (l > 4) throw ResourceLimit("direct digit sums are limited to l <= 4");
  if (B < 3) throw DomainError("digit cap B must be at least 3");
  if (B > 200 || L > 256) throw ResourceLimit("digit cap B <= 200 and L <= 256 for direct digit sums");
}

// Ball [s - err, s + err + tail] around a non-negative double sum.
PrecReal one_sided_ball(double s, double err, double tail) {
  PrecReal v = PrecReal::from_double(s, 128);
  v += PrecReal::from_double(tail / 2, 128);
  v.add_error(err + tail / 2);
  return v;
}

}  // namespace

PrecReal a_partial_direct(int L, int l, int B) {
  check_box_args(L, l, B);
  if (l == 0) return PrecReal(0);
  const kernels::BoxSum box =
      kernels::semiregular_power_sum(static_cast<unsigned>(L), static_cast<unsigned>(l), static_cast<unsigned>(B));
  // Per term: l subtractions, l divisions and L multiplications, each relative error <= u.
  const int ops = 2 * l + L + 1;
  const double n = static_cast<double>(box.count);
  const double err = 1.0625 * ((gamma_factor(ops) + 2 * kUnit) * box.sum + 4 * n * kUnit * kUnit * box.sum) +
                     n * ops * 0x1p-1074;
  const double tail = l * std::ldexp(1.0, 1 - B);
  return one_sided_ball(box.sum, err, tail);
}

std::pair<PrecReal, PrecReal> h_integral_identity_check(int L, int l, int B) {
  if (l < 0 || l > 3) throw ResourceLimit("identity check is limited to 0 <= l <= 3");
  check_box_args(L, l + 1, B);
  const kernels::BoxSum box = kernels::cylinder_power_sum(static_cast<unsigned>(L), static_cast<unsigned>(l + 1),
                                                          static_cast<unsigned>(B));
  const int ops = 2 * (l + 1) + L + 1;
  const double n = static_cast<double>(box.count);
  const double err = 1.0625 * ((2 * gamma_factor(ops) + kUnit) * box.weight + 2 * kUnit * box.sum +
                               4 * n * kUnit * kUnit * box.weight) +
                     2 * n * ops * 0x1p-1074;
  const double tail = (l + 1) * std::ldexp(1.0, 1 - B);
  PrecReal lhs = one_sided_ball(box.sum, err, tail);

  PrecReal rhs = PrecReal::pow2(-(l + 1), 128) - a_partial_direct(L, l + 1, B).scaled2(-1);
  for (int i = 0; i < l; ++i) rhs += a_partial_direct(L, l - i, B).scaled2(-(i + 2));
  return {std::move(lhs), std::move(rhs)};
}

std::vector<PrecReal> symmetry_residual(std::span<const PrecReal> m) {
  if (m.empty()) throw DomainError("symmetry residual needs at least m_1");
  const mpfr_prec_t prec = m.front().precision();
  std::vector<PrecReal> out;
  for (std::size_t L = 1; L <= m.size(); ++L) {
    PrecReal r(1, prec);
    for (std::size_t k = 1; k <= L; ++k) {
      PrecReal term = PrecReal::from_mpz(binomial(L, k), prec) * m[k - 1];
      if (k % 2 == 1) {
        r -= term;
      } else {
        r += term;
      }
    }
    r -= m[L - 1];
    out.push_back(std::move(r));
  }
  return out;
}

SeriesMoments::SeriesMoments(Precision eps, MomentOptions opts) : eps_(eps), opts_(opts) {
  if (opts_.q_start < 1 || opts_.q_max < opts_.q_start) throw DomainError("invalid Q range");
  lmax_ = std::max(opts_.min_lmax, static_cast<int>(std::ceil(std::log2(2.0 / eps_.eps()))));
}

VSeries& SeriesMoments::series(int Q) {
  auto it = by_Q_.find(Q);
  if (it == by_Q_.end()) it = by_Q_.try_emplace(Q, Q, Precision(eps_.eps() / 16)).first;
  return it->second;
}

PrecReal SeriesMoments::partial_sum(int L, int Q, int lmax) {
  VSeries& s = series(Q);
  PrecReal sum = s.term(L, 0);
  for (int l = 1; l <= lmax; ++l) sum += s.term(L, l);
  return sum;
}

MomentEstimate SeriesMoments::operator()(int L) {
  check_L(L);
  int Q = opts_.q_start;
  PrecReal previous = partial_sum(L, Q, lmax_);
  while (true) {
    if (2 * Q > opts_.q_max) {
      throw PrecisionUnreachable("series truncation did not stabilise below Q = " + std::to_string(opts_.q_max));
    }
    Q *= 2;
    PrecReal current = partial_sum(L, Q, lmax_);
    const double drift = current.max_distance(previous);
    if (drift <= eps_.eps() / 4) {
      MomentEstimate est;
      est.L = L;
      est.method = Method::series;
      est.params.lmax = lmax_;
      est.params.Q = Q;
      est.params.heuristic = true;
      const double l_tail = std::ldexp(1.0, -lmax_);
      est.tail_bound = l_tail + current.rad_double();
      // Truncated sums are lower bounds; the tail in l only adds.
      est.value = current + PrecReal::from_double(l_tail / 2, current.precision());
      est.value.add_error(l_tail / 2 + drift);
      return est;
    }
    previous = std::move(current);
  }
}

MomentEstimate moment(int L, Precision eps, const MomentOptions& opts) {
  SeriesMoments engine(eps, opts);
  return engine(L);
}

}  // namespace minkqm
