#include "minkqm/contfrac.hpp"

#include <cctype>
#include <limits>

#include "minkqm/errors.hpp"

namespace minkqm {

namespace {

Digit to_digit(const mpz_class& z) {
  if (z < 0 || !mpz_fits_ulong_p(z.get_mpz_t())) {
    throw ResourceLimit("continued-fraction digit exceeds 64 bits");
  }
  return static_cast<Digit>(z.get_ui());
}

std::string join(const std::vector<Digit>& digits) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(digits[i]);
  }
  return out;
}

std::vector<Digit> parse_list(std::string_view body, std::string_view original) {
  std::vector<Digit> out;
  if (body.empty()) return out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const auto comma = body.find(',', pos);
    const auto item = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (item.empty() || item.size() > 19) throw DomainError("bad digit list: '" + std::string(original) + "'");
    Digit d = 0;
    for (char c : item) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw DomainError("bad digit list: '" + std::string(original) + "'");
      }
      d = d * 10 + static_cast<Digit>(c - '0');
    }
    out.push_back(d);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

bool RegularCF::canonical() const {
  if (digits.empty()) return false;
  for (Digit a : digits) {
    if (a < 1) return false;
  }
  return digits.back() >= 2;
}

std::string RegularCF::str() const { return "[0;" + join(digits) + "]"; }

RegularCF RegularCF::parse(std::string_view text) {
  if (text.size() < 4 || text.substr(0, 3) != "[0;" || text.back() != ']') {
    throw DomainError("not a regular continued fraction: '" + std::string(text) + "'");
  }
  RegularCF cf{parse_list(text.substr(3, text.size() - 4), text)};
  if (cf.digits.empty()) throw DomainError("empty regular continued fraction");
  for (Digit a : cf.digits) {
    if (a < 1) throw DomainError("regular digits must be >= 1");
  }
  return cf;
}

bool SemiRegularCF::canonical() const {
  if (unit) return digits.empty();
  if (digits.empty()) return false;
  for (Digit b : digits) {
    if (b < 2) return false;
  }
  return true;
}

std::vector<Digit> SemiRegularCF::prefix(std::size_t k) const {
  if (unit) return std::vector<Digit>(k, 2);
  if (k > digits.size()) throw NeedsMoreDigits("prefix longer than the finite expansion");
  return {digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(k)};
}

std::string SemiRegularCF::str() const {
  if (unit) return "[[2,2,2,...]]";
  return "[[" + join(digits) + "]]";
}

SemiRegularCF SemiRegularCF::parse(std::string_view text) {
  if (text == "[[2,2,2,...]]") return SemiRegularCF{{}, true};
  if (text.size() < 5 || text.substr(0, 2) != "[[" || text.substr(text.size() - 2) != "]]") {
    throw DomainError("not a semi-regular continued fraction: '" + std::string(text) + "'");
  }
  SemiRegularCF cf{parse_list(text.substr(2, text.size() - 4), text), false};
  if (cf.digits.empty()) throw DomainError("empty semi-regular continued fraction");
  return cf;
}

AngleForm AngleForm::from_semiregular(std::span<const Digit> digits) {
  AngleForm a;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const mpz_class b(static_cast<unsigned long>(digits[i]));
    if (i == 0) {
      a.entries.emplace_back(mpz_class(1), b);
    } else {
      a.entries.emplace_back(mpz_class(1), mpz_class(static_cast<unsigned long>(digits[i - 1])) * b);
    }
  }
  return a;
}

RegularCF regular_expand(const Fraction& x) {
  if (x <= Fraction(0) || x >= Fraction(1)) throw DomainError("regular_expand requires 0 < x < 1");
  RegularCF cf;
  mpz_class p = x.num(), q = x.den();
  // x = p/q; a = floor(q/p), next x = (q mod p)/p
  while (p != 0) {
    mpz_class a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    cf.digits.push_back(to_digit(a));
    q = p;
    p = r;
  }
  return cf;
}

Fraction eval_regular(const RegularCF& cf) {
  if (cf.digits.empty()) throw DomainError("eval_regular of an empty expansion");
  // Backward: v = n/d, 1/(a + v) = d/(a d + n).
  mpz_class n(0), d(1);
  for (auto it = cf.digits.rbegin(); it != cf.digits.rend(); ++it) {
    if (*it == 0) throw DomainError("regular digits must be >= 1");
    mpz_class next = d * static_cast<unsigned long>(*it) + n;
    n = d;
    d = std::move(next);
  }
  return Fraction(n, d);
}

SemiRegularCF semiregular_expand(const Fraction& x) {
  if (x <= Fraction(0) || x > Fraction(1)) throw DomainError("semiregular_expand requires 0 < x <= 1");
  if (x == Fraction(1)) return SemiRegularCF{{}, true};
  SemiRegularCF cf;
  mpz_class p = x.num(), q = x.den();
  // b = ceil(q/p); next x = b - q/p = (b p - q)/p, stop at zero.
  while (p != 0) {
    mpz_class b;
    mpz_cdiv_q(b.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    cf.digits.push_back(to_digit(b));
    mpz_class next = b * p - q;
    q = p;
    p = std::move(next);
  }
  return cf;
}

Fraction eval_semiregular(std::span<const Digit> digits) {
  if (digits.empty()) throw DomainError("eval_semiregular of an empty expansion");
  // Backward: v = n/d, 1/(b - v) = d/(b d - n).
  mpz_class n(0), d(1);
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    mpz_class next = d * static_cast<unsigned long>(*it) - n;
    if (next == 0) throw MalformedExpansion("zero denominator in semi-regular expansion");
    n = d;
    d = std::move(next);
  }
  return Fraction(n, d);
}

Fraction eval_semiregular(const SemiRegularCF& cf) {
  if (cf.unit) return Fraction(1);
  return eval_semiregular(std::span<const Digit>(cf.digits));
}

namespace {

// Emits mapped digits for stream[0..n) into out, stopping once out has K digits.
// Returns true when the K digits were produced.
bool ramharter_emit(std::span<const Digit> stream, std::size_t K, std::vector<Digit>& out) {
  for (std::size_t i = 0; i < stream.size() && out.size() < K; ++i) {
    const Digit a = stream[i];
    if (a < 1) throw DomainError("regular digits must be >= 1");
    const std::size_t index = i + 1;
    if (index == 1) {
      out.push_back(a + 1);
    } else if (index % 2 == 0) {
      const Digit twos = std::min<Digit>(a - 1, static_cast<Digit>(K - out.size()));
      out.insert(out.end(), static_cast<std::size_t>(twos), 2);
    } else {
      out.push_back(a + 2);
    }
  }
  return out.size() >= K;
}

}  // namespace

SemiRegularCF regular_to_semiregular(const RegularCF& cf, std::size_t K) {
  if (K < 1) throw DomainError("prefix length K must be >= 1");
  if (cf.digits.empty()) throw DomainError("empty regular expansion");
  SemiRegularCF out;
  if (ramharter_emit(cf.digits, K, out.digits)) return out;
  if (cf.digits.size() % 2 == 1) {
    // Missing a_{s+1} is treated as infinite: the block of twos never ends.
    out.digits.resize(K, 2);
    return out;
  }
  throw NeedsMoreDigits("finite expansion has only " + std::to_string(out.digits.size()) +
                        " semi-regular digits");
}

SemiRegularCF regular_to_semiregular_prefix(std::span<const Digit> stream, std::size_t K) {
  if (K < 1) throw DomainError("prefix length K must be >= 1");
  SemiRegularCF out;
  if (!ramharter_emit(stream, K, out.digits)) {
    throw NeedsMoreDigits("digit stream too short for " + std::to_string(K) + " semi-regular digits");
  }
  return out;
}

Fraction eval_angle(const AngleForm& a) {
  if (a.entries.empty()) throw DomainError("eval_angle of an empty form");
  // E_k = 1, E_j = 1 - d_{j+1} / E_{j+1}; value d_1 / E_1.
  Fraction e(1);
  for (std::size_t j = a.entries.size() - 1; j >= 1; --j) {
    e = Fraction(1) - a.entries[j] / e;
    if (e.is_zero()) throw MalformedExpansion("zero denominator in angle form");
  }
  return a.entries.front() / e;
}

Fraction semiregular_cylinder_width(std::span<const Digit> digits) {
  if (digits.empty()) return Fraction(1);
  // Q_0 = 1, Q_{-1} = 0, Q_k = b_k Q_{k-1} - Q_{k-2}
  mpz_class prev(0), cur(1);
  for (Digit b : digits) {
    mpz_class next = cur * static_cast<unsigned long>(b) - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Fraction(mpz_class(1), cur * (cur - prev));
}

}  // namespace minkqm
