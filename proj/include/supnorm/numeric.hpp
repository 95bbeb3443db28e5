#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace supnorm {

using Integer = mpz_class;
using Rational = mpq_class;

// num/den in canonical form. The two-argument mpq_class constructor does not
// canonicalize, and GMP comparisons assume canonical operands.
inline Rational frac(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "a", "-a", "a/b" (any sign placement GMP accepts after canonicalization).
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// Canonical "a/b" form; integers print without a denominator.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// floor(sqrt(x)) for x >= 0.
Integer isqrt(const Integer& x);

// Exact integer n-th root when x is a perfect n-th power.
std::optional<Integer> exact_root(const Integer& x, unsigned long n);

Integer pow(const Integer& base, unsigned long exponent);
Rational pow(const Rational& base, long exponent);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

// Canonical representative of x mod m in [0, m).
Integer mod(const Integer& x, const Integer& m);

// Inverse of a modulo m, if it exists; canonical representative.
std::optional<Integer> inverse_mod(const Integer& a, const Integer& m);

// Prime factorization by trial division; throws DomainError when a cofactor
// larger than the trial bound is not provably prime.
std::vector<std::pair<Integer, unsigned long>> factorize(Integer x);

// Product of the distinct primes dividing |x| (1 for |x| <= 1).
Integer radical(const Integer& x);

// x = k^2 * s with s squarefree (sign kept on s).
Integer squarefree_part(const Integer& x);

// Best rational approximation of x with denominator <= bound (continued
// fractions, including the semiconvergent step).
Rational best_approximation(const Rational& x, const Integer& bound);

bool is_prime(const Integer& p);

}  // namespace supnorm
