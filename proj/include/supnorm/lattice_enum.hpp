#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "supnorm/interval.hpp"
#include "supnorm/matrix_core.hpp"
#include "supnorm/number_field.hpp"

namespace supnorm {

// The real number coeff * radicand^{1/root} with radicand >= 1 a positive
// integer that is not a perfect root-th power (root == 1 means rational).
class RadicalScalar {
 public:
  RadicalScalar() = default;
  RadicalScalar(const Rational& q) : coeff_(q) {}  // NOLINT(google-explicit-constructor)
  // coeff * x^{1/k}, simplified to rational when possible.
  static RadicalScalar root(const Rational& coeff, const Integer& x, unsigned long k);
  // x^e for a positive integer x and rational exponent e.
  static RadicalScalar power(const Integer& x, const Rational& e);

  bool is_rational() const { return root_ == 1; }
  const Rational& coeff() const { return coeff_; }
  const Integer& radicand() const { return radicand_; }
  unsigned long root_index() const { return root_; }
  Rational rational_value() const;

  RadicalScalar operator*(const Rational& q) const;
  Interval enclose(mpfr_prec_t prec) const;
  // Rational r >= value.
  Rational upper_bound() const;
  std::string to_string() const;

 private:
  Rational coeff_ = 0;
  Integer radicand_ = 1;
  unsigned long root_ = 1;
};

// Certified |x - center| <= radius.
bool within(const Rational& x, const RadicalScalar& center, const RadicalScalar& radius);

struct CountingInstance {
  RationalSymMatrix q = RationalSymMatrix::identity(1);
  Integer a = 1;
  Integer b = 1;
  std::optional<Rational> M;  // empty means M = infinity
  Rational error_constant = 1;

  std::size_t n() const { return q.n(); }
  // a b^{n-1}.
  Integer base() const;
  // t = (a b^{n-1})^{2/n}.
  RadicalScalar target() const;
  // error_constant * (a b^{n-1})^{(2-M)/n}; zero when M is infinite.
  RadicalScalar tolerance() const;
  // t as an element of Q(t).
  FieldElement target_element() const;
  void validate() const;
};

struct EnumOptions {
  std::uint64_t budget = 100'000'000;
  bool prune = true;
  unsigned threads = 1;
  bool materialize = true;
};

struct EnumStats {
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;
  std::uint64_t pruned_pairwise = 0;
  std::uint64_t pruned_minor = 0;
  std::uint64_t rejected_delta1 = 0;
  std::uint64_t rejected_delta2 = 0;
  bool short_circuit = false;
};

struct SolutionSet {
  CountingInstance instance;
  std::vector<IntegerMatrix> matrices;
  std::uint64_t count = 0;
  EnumStats stats;
};

inline constexpr long kMaxEntry = 1L << 31;

// All y with |y^T Q y - target| <= tol, sorted. Fincke-Pohst search over the
// exact LDL^T form of Q; ResourceError when a coordinate range exceeds
// kMaxEntry or more than budget nodes are visited.
std::vector<IntVector> enum_norm_vectors(const RationalSymMatrix& q, const RadicalScalar& target,
                                         const RadicalScalar& tol, std::uint64_t budget = 100'000'000);

SolutionSet enum_S(const CountingInstance& instance, const EnumOptions& options = {});
std::uint64_t count_S(const CountingInstance& instance, const EnumOptions& options = {});

// Independent re-check of all three membership conditions. The divisor
// conditions go through the Smith form.
bool is_member(const CountingInstance& instance, const IntegerMatrix& gamma);

struct ColumnBound {
  std::uint64_t count = 0;
  double envelope = 0;
};

// Number of y with y^T Q y = m^2 against C * m^{n-2+eps}.
ColumnBound first_column_bound(const RationalSymMatrix& q, const Integer& m, const Rational& eps,
                               const Rational& C = 100);

}  // namespace supnorm
