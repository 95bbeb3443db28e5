#pragma once

#include <vector>

#include "supnorm/interval.hpp"
#include "supnorm/matrix_core.hpp"

namespace supnorm {

struct ScalarWitness {
  Integer a;  // canonical representative in [1, p^rho - 1]
  Integer p;
  unsigned long rho = 1;
  Integer modulus() const { return pow(p, rho); }
};

// The unique unit a with y = a x (mod p^rho). Throws PreconditionFailed when a
// 2x2 minor is nonzero mod p^rho or a vector is divisible by p.
ScalarWitness scalar_congruence(const IntVector& x, const IntVector& y, const Integer& p, unsigned long rho);

// 2 x^T A y = a x^T A x + abar y^T A y (mod p^{2 rho}) where a is a lift of the
// witness and abar its inverse mod p^{2 rho}. Evaluated for the lifts a and
// a + p^rho; disagreement raises ConsistencyError.
bool verify_inner_congruence(const IntVector& x, const IntVector& y, const IntegerMatrix& A, const Integer& p,
                             unsigned long rho);

// Same congruence for caller-chosen a and abar.
bool inner_congruence_holds(const IntVector& x, const IntVector& y, const IntegerMatrix& A, const Integer& p,
                            unsigned long rho, const Integer& a, const Integer& abar);

Integer bilinear(const IntVector& x, const IntegerMatrix& A, const IntVector& y);

// Enclosure of the least angle between two of the vectors in the Q inner product.
Interval min_pairwise_angle(const std::vector<IntVector>& vectors, const RationalSymMatrix& q,
                            mpfr_prec_t prec = kStartPrecision);

// Fitted constant C(n) with |A| <= C(n) alpha^{-(n-1)} for sets with pairwise angle >= alpha.
Rational angle_packing_constant(std::size_t n);

}  // namespace supnorm
