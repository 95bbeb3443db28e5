#include "supnorm/congruence.hpp"

namespace supnorm {

namespace {

bool divisible_by(const IntVector& v, const Integer& p) {
  for (const auto& x : v)
    if (mod(x, p) != 0) return false;
  return true;
}

Rational q_inner(const IntVector& x, const RationalSymMatrix& q, const IntVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += Rational(x[i] * y[j]) * q(i, j);
  return s;
}

}  // namespace

ScalarWitness scalar_congruence(const IntVector& x, const IntVector& y, const Integer& p, unsigned long rho) {
  if (x.size() != y.size() || x.empty()) throw DomainError("vectors must have equal positive length");
  if (!is_prime(p) || rho == 0) throw DomainError("need a prime p and rho >= 1");
  const Integer m = pow(p, rho);
  if (divisible_by(x, p) || divisible_by(y, p)) throw PreconditionFailed("vector completely divisible by p");
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (mod(x[i] * y[j] - x[j] * y[i], m) != 0) throw PreconditionFailed("2x2 minor not divisible by p^rho");
  std::size_t k = 0;
  while (mod(x[k], p) == 0) ++k;
  const Integer a = mod(y[k] * *inverse_mod(x[k], m), m);
  return {a, p, rho};
}

Integer bilinear(const IntVector& x, const IntegerMatrix& A, const IntVector& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * A(i, j) * y[j];
  return s;
}

bool inner_congruence_holds(const IntVector& x, const IntVector& y, const IntegerMatrix& A, const Integer& p,
                            unsigned long rho, const Integer& a, const Integer& abar) {
  const Integer m2 = pow(p, 2 * rho);
  return mod(2 * bilinear(x, A, y) - a * bilinear(x, A, x) - abar * bilinear(y, A, y), m2) == 0;
}

bool verify_inner_congruence(const IntVector& x, const IntVector& y, const IntegerMatrix& A, const Integer& p,
                             unsigned long rho) {
  if (!is_symmetric(to_rational(A))) throw DomainError("A must be symmetric");
  const auto w = scalar_congruence(x, y, p, rho);
  const Integer m = w.modulus(), m2 = m * m;
  bool result = false;
  for (int lift = 0; lift < 2; ++lift) {
    const Integer a = w.a + lift * m;
    const bool r = inner_congruence_holds(x, y, A, p, rho, a, *inverse_mod(a, m2));
    if (lift == 0)
      result = r;
    else if (r != result)
      throw ConsistencyError("inner congruence depends on the lift of a");
  }
  return result;
}

Interval min_pairwise_angle(const std::vector<IntVector>& vectors, const RationalSymMatrix& q, mpfr_prec_t prec) {
  if (vectors.size() < 2) throw DomainError("need at least two vectors");
  std::vector<Rational> norms;
  for (const auto& v : vectors) {
    norms.push_back(q_inner(v, q, v));
    if (norms.back() == 0) throw DomainError("zero vector in angle computation");
  }
  std::optional<Interval> best;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const Rational c = q_inner(vectors[i], q, vectors[j]);
      const Rational ratio = c * c / (norms[i] * norms[j]);
      Interval cosine = Interval::point(ratio, prec).sqrt();
      if (c < 0) cosine = -cosine;
      Interval angle = cosine.acos();
      if (ratio == 1) angle = c > 0 ? Interval::point(Rational(0), prec) : Interval::pi(prec);
      if (!best || angle.lower() < best->lower()) best = angle;
    }
  return *best;
}

Rational angle_packing_constant(std::size_t n) { return Rational(2) * Rational(pow(Integer(4), n)); }

}  // namespace supnorm
