#pragma once

// Brute-force reference implementations. They share no code path with the
// library routines they check and are only linked into tests and `verify`.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "supnorm/matrix.hpp"
#include "supnorm/numeric.hpp"

namespace supnorm::oracle {

// Laplace expansion along the first row.
Integer cofactor_determinant(const IntegerMatrix& m);

// gcd of every j x j minor, enumerating row and column subsets.
Integer minor_gcd(const IntegerMatrix& m, std::size_t j);

// All y in [-bound, bound]^n with y^T Q y == target, sorted.
std::vector<IntVector> box_norm_vectors(const RationalMatrix& q, const Rational& target, long bound);

// Every y in [-bound, bound]^n grouped by y^T Q y, each group sorted.
std::map<Rational, std::vector<IntVector>> box_norm_table(const RationalMatrix& q, long bound);

// The set S(Q, a, b, infinity) for integral t = (a b^{n-1})^{2/n}: every
// n-tuple of columns from the box search, filtered by the full matrix
// identity and the determinantal divisors via minor_gcd. Sorted.
std::vector<IntegerMatrix> naive_solution_set(const RationalMatrix& q, const Integer& a, const Integer& b, long bound);

// Same set by the n^2-fold nested loop over all entries in [-bound, bound].
std::vector<IntegerMatrix> nested_loop_solution_set(const RationalMatrix& q, const Integer& a, const Integer& b,
                                                    long bound);

// Same set, assembling columns one at a time and discarding partial tuples
// whose Gram entries already disagree. Box search in 64-bit arithmetic on
// den(Q) * Q; bound[i] limits coordinate i.
std::vector<IntegerMatrix> pruned_solution_set(const RationalMatrix& q, const Integer& a, const Integer& b,
                                               const std::vector<long>& bound);

// Squares modulo an odd prime by enumeration.
bool is_square_mod(const Integer& a, long p);

bool trial_division_prime(long n);

// Sum of log p over prime powers p^k in [lo, hi] with p^k = a (mod m).
double vonmangoldt_direct(long lo, long hi, long m, long a);

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi);
IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps);

}  // namespace supnorm::oracle
