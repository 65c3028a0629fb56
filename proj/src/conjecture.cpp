#include "minkqm/conjecture.hpp"

#include <cmath>
#include <sstream>

#include "minkqm/errors.hpp"
#include "minkqm/moments.hpp"
#include "minkqm/summation.hpp"

namespace minkqm {

namespace {

void check_n(int N) {
  if (N < 0) throw DomainError("sequence length must be non-negative");
  if (N > QSequence::kMaxN) throw ResourceLimit("Q_n is computed exactly only for n <= 60");
}

// e (e-1) ... (e-k+1)
mpz_class falling(int e, unsigned k) {
  mpz_class r = 1;
  for (unsigned i = 0; i < k; ++i) r *= e - static_cast<int>(i);
  return r;
}

Fraction factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Fraction(r, 1);
}

// (1/2) c (z^j - z^{-(j+2)})
void add_basis(LaurentPoly& p, int j, const Fraction& c) {
  const Fraction half = c / Fraction(2);
  p.add_term(j, half);
  p.add_term(-(j + 2), -half);
}

}  // namespace

LaurentPoly LaurentPoly::monomial(int exponent, const Fraction& coefficient) {
  LaurentPoly p;
  p.add_term(exponent, coefficient);
  return p;
}

Fraction LaurentPoly::coefficient(int exponent) const {
  const auto it = c_.find(exponent);
  return it == c_.end() ? Fraction(0) : it->second;
}

void LaurentPoly::add_term(int exponent, const Fraction& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = c_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) c_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Fraction& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [e, c] : c_) c *= s;
  return *this;
}

LaurentPoly LaurentPoly::derivative(unsigned order) const {
  LaurentPoly out;
  for (const auto& [e, c] : c_) out.add_term(e - static_cast<int>(order), c * Fraction(falling(e, order), 1));
  return out;
}

Fraction LaurentPoly::eval(const Fraction& z) const {
  if (z.is_zero() && !c_.empty() && c_.begin()->first < 0) throw DomainError("Laurent polynomial has a pole at 0");
  Fraction sum;
  for (const auto& [e, c] : c_) {
    if (e >= 0) {
      sum += c * z.pow(static_cast<unsigned>(e));
    } else {
      sum += c * z.reciprocal().pow(static_cast<unsigned>(-e));
    }
  }
  return sum;
}

Fraction LaurentPoly::derivative_at(unsigned order, const Fraction& z) const {
  if (z == Fraction(-1)) {
    Fraction total;
    for (const auto& [e, c] : c_) {
      const mpz_class f = falling(e, order);
      if (f == 0) continue;
      const bool odd = ((e - static_cast<int>(order)) % 2) != 0;
      total += c * Fraction(odd ? mpz_class(-f) : f, 1);
    }
    return total;
  }
  return derivative(order).eval(z);
}

bool LaurentPoly::dyadic() const {
  for (const auto& [e, c] : c_) {
    const mpz_class& d = c.den();
    if (mpz_popcount(d.get_mpz_t()) != 1) return false;
  }
  return true;
}

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c.sign() < 0;
    if (first) {
      out << (negative ? "-" : "");
    } else {
      out << (negative ? " - " : " + ");
    }
    out << (negative ? -c : c).str();
    if (e == 1) out << "*z";
    if (e != 0 && e != 1) out << "*z^" << e;
    first = false;
  }
  return out.str();
}

QSequence::QSequence() {
  q_.push_back(LaurentPoly::monomial(-1, Fraction(-1) / Fraction(2)));
  d_.emplace_back();
}

void QSequence::extend_to(int n) {
  check_n(n);
  while (size() <= n) {
    const int m = size();
    LaurentPoly q;
    for (int j = 0; j < m; ++j) {
      add_basis(q, j, derivative_at_minus_one(m - j - 1, j) / factorial(static_cast<unsigned>(j)));
    }
    q_.push_back(std::move(q));
    d_.emplace_back();
  }
}

const Fraction& QSequence::derivative_at_minus_one(int m, int j) const {
  auto& row = d_.at(static_cast<std::size_t>(m));
  const LaurentPoly& q = q_.at(static_cast<std::size_t>(m));
  while (static_cast<int>(row.size()) <= j) {
    row.push_back(q.derivative_at(static_cast<unsigned>(row.size()), Fraction(-1)));
  }
  return row[static_cast<std::size_t>(j)];
}

std::vector<LaurentPoly> q_sequence(int N) {
  check_n(N);
  QSequence seq;
  seq.extend_to(N);
  std::vector<LaurentPoly> out;
  for (int n = 0; n <= N; ++n) out.push_back(seq[n]);
  return out;
}

LaurentPoly q_polynomial_from_scratch(int n) {
  check_n(n);
  std::vector<LaurentPoly> q{LaurentPoly::monomial(-1, Fraction(-1) / Fraction(2))};
  for (int m = 1; m <= n; ++m) {
    LaurentPoly next;
    for (int j = 0; j < m; ++j) {
      const Fraction value = q[static_cast<std::size_t>(m - j - 1)].derivative(static_cast<unsigned>(j)).eval(Fraction(-1));
      add_basis(next, j, value / factorial(static_cast<unsigned>(j)));
    }
    q.push_back(std::move(next));
  }
  return q.back();
}

std::vector<Fraction> q_prime_at_minus_one(int N) {
  check_n(N);
  QSequence seq;
  seq.extend_to(N);
  std::vector<Fraction> out;
  for (int n = 0; n <= N; ++n) out.push_back(seq.derivative_at_minus_one(n, 1));
  return out;
}

Fraction lambda_partial_exact(const Fraction& t, int N) {
  const std::vector<Fraction> a = q_prime_at_minus_one(N);
  Fraction sum;
  for (int n = N; n >= 0; --n) sum = sum * t + a[static_cast<std::size_t>(n)] / factorial(static_cast<unsigned>(n));
  return sum;
}

LambdaSum lambda_partial(const PrecReal& t, int N) {
  const std::vector<Fraction> a = q_prime_at_minus_one(N);
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(t.precision(), 128);
  PrecReal sum(0, prec);
  PrecReal power(1, prec);
  PrecReal last(0, prec);
  for (int n = 0; n <= N; ++n) {
    last = PrecReal::from_fraction(a[static_cast<std::size_t>(n)] / factorial(static_cast<unsigned>(n)), prec) * power;
    sum += last;
    power *= t;
  }
  return {sum, last.abs_upper()};
}

M2Report conjecture_m2_report(double T, int N, const QuadConfig& cfg, double m2_eps) {
  if (!(T > 0.0) || T > 200.0) throw DomainError("integration limit T must lie in (0, 200]");
  cfg.validate();
  const std::vector<Fraction> a = q_prime_at_minus_one(N);
  const mpfr_prec_t prec = 256 + static_cast<mpfr_prec_t>(2 * T);
  const PrecReal t = PrecReal::from_double(T, prec);
  const PrecReal decay = exp(-t);

  // int_0^T t^n e^{-t} dt / n! = 1 - e^{-T} sum_{j<=n} T^j / j!
  M2Report r;
  r.T = T;
  r.N = N;
  r.integral = PrecReal(0, prec);
  PrecReal partial(0, prec), term(1, prec), last(0, prec);
  for (int n = 0; n <= N; ++n) {
    if (n > 0) term = term * t / PrecReal(n, prec);
    partial += term;
    last = PrecReal::from_fraction(a[static_cast<std::size_t>(n)], prec) * (PrecReal(1, prec) - decay * partial);
    r.integral += last;
  }

  const Rule1D rule = make_rule(cfg.rule, cfg.max_nodes, T);
  NeumaierSum quad;
  std::vector<double> coef;
  for (int n = 0; n <= N; ++n) {
    coef.push_back(mpq_get_d(a[static_cast<std::size_t>(n)].raw().get_mpq_t()) / std::tgamma(n + 1.0));
  }
  auto lambda_d = [&](double x) {
    double s = 0.0;
    for (int n = N; n >= 0; --n) s = s * x + coef[static_cast<std::size_t>(n)];
    return s;
  };
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) quad.add(rule.weights[i] * lambda_d(rule.nodes[i]) * std::exp(-rule.nodes[i]));
  r.integral_quadrature = quad.value();

  r.m2 = moment(2, Precision(m2_eps)).value;
  r.difference = r.integral - r.m2;
  r.heuristic_remainder = last.abs_upper() + std::fabs(lambda_d(T)) * std::exp(-T);
  return r;
}

}  // namespace minkqm
