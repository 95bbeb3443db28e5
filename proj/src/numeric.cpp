#include "supnorm/numeric.hpp"

#include <string>

#include "supnorm/errors.hpp"

namespace supnorm {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw DomainError("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) throw DomainError("malformed rational: '" + s + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

Integer parse_integer(std::string_view text) {
  const std::string s = trim(text);
  Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) throw DomainError("malformed integer: '" + s + "'");
  return z;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer isqrt(const Integer& x) {
  if (x < 0) throw DomainError("isqrt of negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

std::optional<Integer> exact_root(const Integer& x, unsigned long n) {
  if (n == 0) throw DomainError("zeroth root");
  if (x < 0 && n % 2 == 0) return std::nullopt;
  Integer r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), n) != 0) return r;
  return std::nullopt;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw DivisionByZero("negative power of zero");
    return pow(Rational(1) / base, -exponent);
  }
  Rational r(pow(Integer(base.get_num()), static_cast<unsigned long>(exponent)),
             pow(Integer(base.get_den()), static_cast<unsigned long>(exponent)));
  r.canonicalize();
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer mod(const Integer& x, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::optional<Integer> inverse_mod(const Integer& a, const Integer& m) {
  if (m == 1) return Integer(0);
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return mod(r, m);
}

bool is_prime(const Integer& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

std::vector<std::pair<Integer, unsigned long>> factorize(Integer x) {
  if (x < 0) x = -x;
  if (x == 0) throw DomainError("cannot factor zero");
  std::vector<std::pair<Integer, unsigned long>> out;
  const unsigned long trial_bound = 10'000'000UL;
  for (unsigned long d = 2; d <= trial_bound; d += (d == 2 ? 1 : 2)) {
    if (Integer(d) * d > x) break;
    if (mpz_divisible_ui_p(x.get_mpz_t(), d) == 0) continue;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), d) != 0) {
      mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), d);
      ++e;
    }
    out.emplace_back(Integer(d), e);
  }
  if (x > 1) {
    // Either x is prime, or all its factors exceed the trial bound.
    if (Integer(trial_bound) * trial_bound < x && !is_prime(x)) {
      throw DomainError("factorization exceeds trial-division range: " + x.get_str());
    }
    out.emplace_back(x, 1);
  }
  return out;
}

Integer radical(const Integer& x) {
  if (x <= 1 && x >= -1) return 1;
  Integer r = 1;
  for (const auto& [p, e] : factorize(x)) r *= p;
  return r;
}

Integer squarefree_part(const Integer& x) {
  if (x == 0) return 0;
  Integer s = x < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(x)) {
    if (e % 2 == 1) s *= p;
  }
  return s;
}

Rational best_approximation(const Rational& x, const Integer& bound) {
  if (bound < 1) throw DomainError("denominator bound must be positive");
  if (x.get_den() <= bound) return x;
  // Convergents h/k of the continued fraction of x.
  Integer h_prev = 1, k_prev = 0, h = floor(x), k = 1;
  Rational rest = x - Rational(h);
  while (rest != 0) {
    Rational inv = Rational(1) / rest;
    Integer a = floor(inv);
    Integer k_next = a * k + k_prev;
    if (k_next > bound) {
      // Largest admissible semiconvergent, compared against the convergent.
      Integer t = (bound - k_prev) / k;
      Rational semi(t * h + h_prev, t * k + k_prev);
      semi.canonicalize();
      Rational conv(h, k);
      conv.canonicalize();
      if (t > 0 && abs(Rational(semi - x)) < abs(Rational(conv - x))) return semi;
      return conv;
    }
    Integer h_next = a * h + h_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    rest = inv - Rational(a);
  }
  Rational r(h, k);
  r.canonicalize();
  return r;
}

}  // namespace supnorm
