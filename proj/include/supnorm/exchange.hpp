#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supnorm/lattice_enum.hpp"
#include "supnorm/number_field.hpp"

namespace supnorm {

using KMatrix = std::vector<KVector>;

// Sym_n coordinates: the entries Q_ij with i <= j in row-major order. The
// coordinate vector of Q is the coefficient vector in the basis E_ii,
// E_ij + E_ji.
std::size_t sym_dim(std::size_t n);
std::vector<std::pair<std::size_t, std::size_t>> sym_index(std::size_t n);
KVector sym_coordinates(const KMatrix& q);
KMatrix sym_matrix(const KVector& coords, std::size_t n);
KMatrix lift(const RationalMatrix& q, const FieldSpecPtr& spec);

// The pair (p^nu, q^nu) with counting target a = q^nu, b = p^nu.
struct PrimePair {
  Integer p = 1;
  Integer q = 1;
  unsigned nu = 1;
  Integer a() const { return pow(q, nu); }
  Integer b() const { return pow(p, nu); }
  // m = q^{2 nu} p^{2 nu (n-1)}, so that m^{1/n} is the target t.
  Integer m(std::size_t n) const;
  bool operator==(const PrimePair&) const = default;
};

// Q(p_1^{1/n}, ..., p_s^{1/n}) over the primes whose exponent in some m is
// not divisible by n; Q itself when there are none.
FieldSpecPtr ambient_field(std::size_t n, const std::vector<Integer>& ms);
// m^{1/n} inside such a field.
FieldElement radical_element(const FieldSpecPtr& spec, const Integer& m, std::size_t n);

struct TransferOperator {
  IntegerMatrix gamma;
  Integer m;
  FieldElement scalar;        // m^{1/n}
  std::vector<KVector> rows;  // matrix of Q -> gamma^T Q gamma - m^{1/n} Q in Sym_n coordinates
  KMatrix apply(const KMatrix& q) const;
};

TransferOperator transfer_operator(const IntegerMatrix& gamma, const Integer& m, FieldSpecPtr spec = nullptr);

// The subfield Q(generators) of an ambient prime-radical field.
struct FieldDescription {
  FieldSpecPtr ambient;
  std::vector<FieldElement> generators;
  std::vector<std::vector<unsigned>> exponent_group;  // monomial exponents spanning the subfield
  bool is_rational() const { return exponent_group.size() <= 1; }
  std::size_t degree() const { return exponent_group.size(); }
  bool contains(const FieldElement& x) const;
};

FieldDescription describe_subfield(const FieldSpecPtr& ambient, const std::vector<FieldElement>& generators);

struct RowLabel {
  std::size_t source = 0;  // index of the contributing pair
  std::size_t gamma = 0;   // index of gamma within its solution set
  std::size_t row = 0;     // row of the operator matrix
};

// Greedy rank extension in input order. Returns the indices of kept rows.
std::vector<std::size_t> select_generators(const std::vector<KVector>& rows);

struct SymSubspace {
  std::size_t n = 0;
  FieldSpecPtr spec;
  std::vector<KVector> generators;  // independent rows spanning the orthogonal complement
  std::vector<RowLabel> labels;
  KernelBasis basis;                // empty vectors when H = {0}
  std::size_t stacked_rows = 0;
  std::size_t dim() const { return basis.vectors.size(); }
};

struct KernelInput {
  IntegerMatrix gamma;
  Integer m;
  RowLabel label;
};

SymSubspace intersect_kernels(std::size_t n, const std::vector<KernelInput>& operators);

struct QPrime {
  KMatrix entries;
  std::optional<RationalMatrix> rational;
  Integer den = 0;            // den(Q') when rational
  std::string method;         // "projection" or "rounded"
  unsigned denominator_bits = 0;
};

inline constexpr unsigned kDefaultRoundingBits = 40;

// A point of H inside the region. The exact projection of the reference is
// tried first; for rational H the basis coefficients are then rounded with
// denominators 2^k, k = 0..max_bits. Throws NoPointFound.
QPrime find_Q_prime(const SymSubspace& h, const Region& region, const RationalSymMatrix& reference,
                    unsigned max_bits = kDefaultRoundingBits);

// Real-embedding positive definiteness and open-box membership over K.
bool region_contains(const Region& region, const KMatrix& q);

struct ExchangeOptions {
  std::optional<Region> region;  // default: Region::around(Q, 1/4)
  std::optional<Integer> L;      // when set, pairs are validated against [L, 2 L^D]
  unsigned D = 1;
  Rational error_constant = 1;
  EnumOptions enumeration;
  unsigned max_bits = kDefaultRoundingBits;
  bool reenumerate = true;
};

struct ExchangeResult {
  std::vector<PrimePair> pairs;
  std::vector<SolutionSet> solutions;
  SymSubspace h;
  std::vector<std::size_t> p_prime;  // indices into pairs
  FieldDescription k;
  QPrime q_prime;
  std::uint64_t verified = 0;        // enumerated gamma re-checked against Q'
  bool reenumerated = false;
};

ExchangeResult exchange_lemma(const RationalSymMatrix& q, const std::vector<PrimePair>& pairs,
                              const std::optional<Rational>& M, const ExchangeOptions& options = {});
// Same, with S(Q, a, b, M) already enumerated for every pair (in order).
ExchangeResult exchange_from_solutions(const RationalSymMatrix& q, const std::vector<PrimePair>& pairs,
                                       std::vector<SolutionSet> solutions, const ExchangeOptions& options = {});

// Image of x in a prime-radical field whose radicands include those of x's field.
FieldElement embed_into(const FieldElement& x, const FieldSpecPtr& target);
KVector embed_into(const KVector& v, const FieldSpecPtr& target);

// gamma in S(Q', a, b, infinity) for Q' over K, decided exactly.
bool is_exact_member(const KMatrix& q, const PrimePair& pair, const IntegerMatrix& gamma);

}  // namespace supnorm
