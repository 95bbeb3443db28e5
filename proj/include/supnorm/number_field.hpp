#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "supnorm/interval.hpp"
#include "supnorm/matrix.hpp"
#include "supnorm/numeric.hpp"

namespace supnorm {

inline constexpr std::size_t kMaxFieldDimension = 4096;

// K = Q(theta_1, ..., theta_s) with theta_i the real positive n-th root of a
// positive rational r_i. Internally theta_i = phi_i / scale_i where phi_i is
// the n-th root of the integer r_i * scale_i^n, scale_i the denominator of r_i.
// Elements are coordinate vectors over the monomials prod phi_i^{e_i},
// 0 <= e_i < n. The radicands must be multiplicatively independent modulo
// n-th powers, so the monomials form a basis and dim K = n^s.
class RadicalFieldSpec {
 public:
  static std::shared_ptr<const RadicalFieldSpec> make(unsigned n, std::vector<Rational> radicands);
  static std::shared_ptr<const RadicalFieldSpec> rationals();

  unsigned degree() const { return n_; }
  std::size_t generators() const { return radicands_.size(); }
  std::size_t dimension() const { return dim_; }
  const std::vector<Rational>& radicands() const { return radicands_; }
  const std::vector<Integer>& integral_radicands() const { return integral_; }
  const std::vector<Integer>& scales() const { return scales_; }

  // Exponent digits of basis monomial k (base n, generator 0 least significant).
  const std::vector<unsigned>& exponents(std::size_t k) const { return digits_[k]; }
  std::size_t index_of(const std::vector<unsigned>& e) const;

  // Number of complex embeddings of K, equal to dim K.
  std::size_t embeddings() const { return dim_; }
  // Upper bound n^s * phi(n) for the degree of the Galois closure.
  Integer galois_degree_bound() const;

  // Interval for phi_i under embedding k: zeta^{k_i} * (r_i scale_i^n)^{1/n}.
  ComplexInterval generator_image(std::size_t i, std::size_t embedding, mpfr_prec_t prec) const;

  bool operator==(const RadicalFieldSpec& o) const { return n_ == o.n_ && radicands_ == o.radicands_; }

 private:
  unsigned n_ = 1;
  std::size_t dim_ = 1;
  std::vector<Rational> radicands_;
  std::vector<Integer> integral_;
  std::vector<Integer> scales_;
  std::vector<std::vector<unsigned>> digits_;
};

using FieldSpecPtr = std::shared_ptr<const RadicalFieldSpec>;

class FieldElement {
 public:
  explicit FieldElement(FieldSpecPtr spec);
  FieldElement(FieldSpecPtr spec, const Rational& q);
  FieldElement(FieldSpecPtr spec, std::vector<Rational> coefficients);

  // theta_i itself, the positive n-th root of the i-th radicand.
  static FieldElement generator(FieldSpecPtr spec, std::size_t i);
  // phi^e for a basis exponent vector (integral monomial).
  static FieldElement monomial(FieldSpecPtr spec, const std::vector<unsigned>& e);

  const FieldSpecPtr& spec() const { return spec_; }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  // Nonzero coefficient count is at most one.
  bool is_monomial() const;
  Rational rational_value() const;
  // All coordinates integral: then the element is an algebraic integer.
  bool has_integral_coordinates() const;
  Integer coordinate_denominator() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const Rational& q, const FieldElement& a);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  FieldElement inverse() const;
  // Matrix of multiplication by this element on the monomial basis.
  RationalMatrix multiplication_matrix() const;
  // Product of all conjugates.
  Rational norm() const;

  ComplexInterval embed(std::size_t embedding, mpfr_prec_t prec) const;
  // Image under the real embedding theta_i -> positive real root.
  Interval real_value(mpfr_prec_t prec) const;
  // Sign in the real embedding, decided symbolically for zero and by
  // adaptive precision otherwise.
  int real_sign() const;

 private:
  void check_same(const FieldElement& o) const;
  FieldSpecPtr spec_;
  std::vector<Rational> c_;
};

// |sigma(x)| for every embedding sigma.
std::vector<Interval> conjugate_moduli(const FieldElement& x, mpfr_prec_t prec = kStartPrecision);

struct FieldFraction {
  FieldElement num;
  FieldElement den;
};

// Canonical fraction: den is the coordinate denominator, num has integral coordinates.
FieldFraction canonical_fraction(const FieldElement& x);

struct WellBalancedCertificate {
  Rational alpha;
  Rational A;
  FieldFraction fraction;
  std::vector<Interval> num_moduli;
  std::vector<Interval> den_moduli;
  bool valid = false;
};

// alpha >= 1, A >= 2. Zero is always well-balanced as 0/1.
WellBalancedCertificate is_well_balanced(const FieldFraction& f, const Rational& alpha, const Rational& A);
WellBalancedCertificate is_well_balanced(const FieldElement& x, const Rational& alpha, const Rational& A);

// Least integer alpha >= 1 for which the canonical fraction is well-balanced.
Integer well_balanced_exponent(const FieldElement& x, const Rational& A);

using KVector = std::vector<FieldElement>;

FieldElement inner(const KVector& u, const KVector& v);
KVector scale(const FieldElement& c, const KVector& v);
KVector add(const KVector& u, const KVector& v);

// Rank of the rows over K.
std::size_t rank(std::vector<KVector> rows);

std::vector<KVector> gram_schmidt(const std::vector<KVector>& vectors);

struct DistanceResult {
  Interval distance;
  Interval max_pairing;
};

// Distance from v to H, where the generators span the orthogonal complement of H.
DistanceResult distance_to_subspace(const std::vector<Rational>& v, const std::vector<KVector>& complement,
                                    mpfr_prec_t prec = kStartPrecision);

struct KernelBasis {
  std::vector<KVector> vectors;
  // vectors[i] vanishes on every free column except free_columns[i].
  std::vector<std::size_t> free_columns;
  std::vector<std::vector<WellBalancedCertificate>> certificates;
  Rational A;
};

// Basis of {y : b_j . y = 0 for all rows b_j} with algebraic-integer entries.
// Pivots are taken from the last column backwards, so the free coordinates are
// the leading ones. Throws ZeroKernel when the kernel is trivial.
KernelBasis kernel_basis_bounded(const std::vector<KVector>& rows, std::size_t m, FieldSpecPtr spec);

}  // namespace supnorm
