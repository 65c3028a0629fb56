#include "minkqm/errors.hpp"
#include "minkqm/kernels.hpp"

namespace minkqm::kernels {

IntervalVector::IntervalVector(std::size_t n, mpfr_prec_t prec) : prec_(prec) {
  lo_.reserve(n);
  hi_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo_.emplace_back(prec);
    hi_.emplace_back(prec);
    mpfr_set_zero(lo_.back().get(), 1);
    mpfr_set_zero(hi_.back().get(), 1);
  }
}

void IntervalVector::set(std::size_t i, const PrecReal& x) {
  const BigFloat l = x.lower();
  const BigFloat h = x.upper();
  if (mpfr_sgn(h.get()) < 0) throw DomainError("interval vector entries must be non-negative");
  if (mpfr_sgn(l.get()) < 0) {
    mpfr_set_zero(lo_[i].get(), 1);
  } else {
    mpfr_set(lo_[i].get(), l.get(), MPFR_RNDD);
  }
  mpfr_set(hi_[i].get(), h.get(), MPFR_RNDU);
}

PrecReal IntervalVector::get(std::size_t i) const { return PrecReal::hull(lo_[i], hi_[i], prec_); }

IntervalMatrix::IntervalMatrix(std::size_t n, mpfr_prec_t prec) : n_(n), prec_(prec) {
  lo_.reserve(n * n);
  hi_.reserve(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    lo_.emplace_back(prec);
    hi_.emplace_back(prec);
  }
}

void IntervalMatrix::set(std::size_t i, std::size_t j, const PrecReal& x) {
  const BigFloat l = x.lower();
  const BigFloat h = x.upper();
  if (mpfr_sgn(l.get()) < 0) throw DomainError("interval matrix entries must be non-negative");
  mpfr_set(lo_[i * n_ + j].get(), l.get(), MPFR_RNDD);
  mpfr_set(hi_[i * n_ + j].get(), h.get(), MPFR_RNDU);
}

PrecReal IntervalMatrix::get(std::size_t i, std::size_t j) const {
  return PrecReal::hull(lo(i, j), hi(i, j), prec_);
}

PrecReal dot(const IntervalVector& a, const IntervalVector& b) {
  const std::size_t n = std::min(a.size(), b.size());
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  BigFloat lo(prec), hi(prec);
  mpfr_set_zero(lo.get(), 1);
  mpfr_set_zero(hi.get(), 1);
  for (std::size_t i = 0; i < n; ++i) {
    mpfr_fma(lo.get(), a.lo(i).get(), b.lo(i).get(), lo.get(), MPFR_RNDD);
    mpfr_fma(hi.get(), a.hi(i).get(), b.hi(i).get(), hi.get(), MPFR_RNDU);
  }
  return PrecReal::hull(lo, hi, prec);
}

}  // namespace minkqm::kernels
