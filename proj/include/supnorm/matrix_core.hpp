#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "supnorm/matrix.hpp"
#include "supnorm/numeric.hpp"

namespace supnorm {

inline constexpr std::size_t kDefaultMaxDimension = 8;

// gamma = U * D * V with U, V unimodular and D diagonal, d1 | d2 | ... >= 0.
struct SmithForm {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;

  std::vector<Integer> diagonal() const;
};

// Pivot: smallest nonzero |entry| of the active block, ties broken row-major.
SmithForm smith_normal_form(const IntegerMatrix& gamma);

// Delta_j(gamma), 1 <= j <= min(rows, cols): gcd of all j x j minors.
Integer determinantal_divisor(const IntegerMatrix& gamma, std::size_t j);
std::vector<Integer> determinantal_divisors(const IntegerMatrix& gamma);

Integer determinant(const IntegerMatrix& m);
Rational determinant(const RationalMatrix& m);

// Smallest positive r with r*Q integral.
Integer denominator(const RationalMatrix& q);

bool is_symmetric(const RationalMatrix& q);
// Sylvester's criterion on exact leading principal minors.
bool is_positive_definite(const RationalMatrix& q);

// Symmetric positive definite rational matrix with cached integralization.
class RationalSymMatrix {
 public:
  static RationalSymMatrix make(RationalMatrix entries, std::size_t max_dimension = kDefaultMaxDimension);
  static RationalSymMatrix identity(std::size_t n);

  std::size_t n() const { return entries_.rows(); }
  const RationalMatrix& entries() const { return entries_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Integer& den() const { return den_; }
  // den(Q) * Q
  const IntegerMatrix& integral() const { return integral_; }

  friend bool operator==(const RationalSymMatrix& a, const RationalSymMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  RationalSymMatrix() = default;
  RationalMatrix entries_;
  Integer den_;
  IntegerMatrix integral_;
};

enum class MinorMode {
  Principal,    // det of rows = cols = {i, j}
  AllPositive,  // every 2x2 minor of Q~ that is positive
};

std::set<Integer> minor_set(const RationalSymMatrix& q, MinorMode mode = MinorMode::Principal);

// True iff a is a quadratic non-residue modulo the prime p (never for p = 2).
bool is_quadratic_nonresidue(const Integer& a, const Integer& p);

bool is_q_good(const Integer& p, const RationalSymMatrix& q, MinorMode mode = MinorMode::Principal);

// Nested boxes of symmetric matrices intersected with Pos_n. The outer box is
// open, the inner one closed and strictly inside.
class Region {
 public:
  Region(RationalMatrix outer_lo, RationalMatrix outer_hi, RationalMatrix inner_lo, RationalMatrix inner_hi);

  // Box of the given half-width around center; inner box shrunk by
  // margin_fraction of the outer width on each side.
  static Region around(const RationalMatrix& center, const Rational& half_width,
                       const Rational& margin_fraction = Rational(1, 16));

  std::size_t n() const { return outer_lo_.rows(); }
  bool contains(const RationalMatrix& q) const;
  bool contains_inner(const RationalMatrix& q) const;

  const RationalMatrix& outer_lo() const { return outer_lo_; }
  const RationalMatrix& outer_hi() const { return outer_hi_; }
  const RationalMatrix& inner_lo() const { return inner_lo_; }
  const RationalMatrix& inner_hi() const { return inner_hi_; }

 private:
  RationalMatrix outer_lo_, outer_hi_, inner_lo_, inner_hi_;
};

}  // namespace supnorm
