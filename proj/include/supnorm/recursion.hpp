#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supnorm/exchange.hpp"
#include "supnorm/primes.hpp"

namespace supnorm {

enum class PairCase { Case1, Case2, Case3 };

// Case3 when p = q, Case2 when p != q and n | 2 nu, Case1 otherwise.
PairCase classify_pair(const Integer& p, const Integer& q, unsigned nu, std::size_t n);
std::string to_string(PairCase c);

// base^exp, or nullopt once the result would exceed max_bits.
std::optional<Integer> bounded_pow(const Integer& base, const Integer& exp, std::size_t max_bits = 4096);

// Nominal window [base^lo_exp, 2 base^hi_exp], searched only up to prime_cap.
struct Window {
  Integer base;
  Integer lo_exp;
  Integer hi_exp;
  std::optional<Integer> lo;  // nominal endpoints when representable
  std::optional<Integer> hi;
  std::uint64_t search_lo = 0;
  std::uint64_t search_hi = 0;  // search_hi < search_lo means nothing is searched
  bool clamped = false;
  bool empty() const { return search_hi < search_lo; }
};

Window make_window(const Integer& base, const Integer& lo_exp, const Integer& hi_exp, std::uint64_t prime_cap);

struct RecursionParams {
  Integer L = 3;
  unsigned D1 = 1;
  unsigned D2 = 1;
  std::optional<Rational> M;      // nullopt is M = infinity
  Rational c1 = 1;                // constant in the M condition
  std::vector<unsigned> nus;      // empty: all of 1..n
  std::uint64_t prime_cap = 50;   // desk-scale clamp for every window
  Integer level = 1;              // N, only through coprimality
  Rational error_constant = 1;
  Rational envelope_constant = 100;
  std::optional<Region> region;
  EnumOptions enumeration;
  unsigned max_bits = kDefaultRoundingBits;
  MinorMode minor_mode = MinorMode::Principal;
};

struct ChainLevel {
  std::size_t j = 0;
  Window window;            // I_j, or I*_j for the inner chain
  std::optional<Window> fresh;  // the inner chain's tilde I*_j
  std::vector<PrimePair> pairs;
  std::vector<std::uint64_t> good_primes;  // inner chain: primes passing the Q*_{j-1} filter
  std::optional<RationalSymMatrix> filter;  // the Q*_{j-1} used for that filter
  ExchangeResult exchange;
};

struct Chain {
  std::vector<ChainLevel> levels;
  std::size_t stable = 0;  // index i (or k) with H_i = H_{i+1}
  std::vector<std::size_t> dims;
  const ChainLevel& stable_level() const { return levels[stable]; }
};

// Enumerations are shared across levels through this cache.
using SolutionCache = std::map<std::tuple<Integer, Integer, unsigned>, SolutionSet>;

Chain outer_chain(const RationalSymMatrix& q, const RecursionParams& params, SolutionCache* cache = nullptr);
// Inner chain at the scale base^scale_exp (the outer scale L^{(D1 D2)^{i+1}}).
Chain inner_chain(const RationalSymMatrix& q, const Integer& scale_exp, const RecursionParams& params,
                  SolutionCache* cache = nullptr);

// H_{j+1} inside H_j, decided exactly after embedding into a common field.
bool subspace_contained(const SymSubspace& inner, const SymSubspace& outer);

struct PairBound {
  PrimePair pair;
  PairCase kase = PairCase::Case1;
  std::string backing;       // "irrationality", "empty-envelope", "count1-envelope" or "unverified"
  std::optional<std::uint64_t> count;      // |S(Q, a, b, M)|
  std::optional<std::uint64_t> reference;  // |S(Q_ref, a, b, infinity)| for the exchanged matrix
  double envelope = 0;       // 0 for Case1
  bool verified = false;
  std::string note;
};

struct RecursionCertificate {
  RecursionParams params;
  std::size_t n = 0;
  bool cond_n = false;
  bool cond_d = false;
  bool nested = false;       // every I*_j inside I_{i+1} minus I_i, decided on exponents
  Chain outer;
  Chain inner;
  std::size_t i = 0;
  std::size_t k = 0;
  Integer scale_exp;         // log_L of the scale L^{(D1 D2)^{i+1}}
  Window final_window;
  std::vector<Integer> D;    // minors whose negatives must be non-residues
  std::vector<Integer> Q;    // numbers the primes must be coprime to
  Integer residue_modulus;
  std::vector<std::uint64_t> primes;
  std::vector<PairBound> pairs;
  bool sound() const;        // every pair verified
};

RecursionCertificate proposition_driver(const RationalSymMatrix& q, const RecursionParams& params);

// Envelope values with eps = 1/2 and constant C.
double count1_envelope(std::size_t n, const Integer& den, const Integer& p, unsigned nu, const Rational& C);
double empty_envelope(std::size_t n, const Integer& p, const Integer& q, unsigned nu, const Rational& C);

}  // namespace supnorm
