#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "supnorm/interval.hpp"
#include "supnorm/matrix_core.hpp"

namespace supnorm {

// Deterministic Miller-Rabin for n < 2^64.
bool is_prime_u64(std::uint64_t n);

// Primes in [lo, hi] by a segmented sieve.
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

inline constexpr std::uint64_t kMaxListedModulus = 10'000'000;

// Congruence description of the Q-good primes: p is good iff gcd(p, m) = 1
// and kronecker(-4 s_d, p) = -1 for the squarefree part s_d of every d in the
// minor set. Every prime dividing m is bad.
class ResidueSystem {
 public:
  static ResidueSystem build(const RationalSymMatrix& q, MinorMode mode = MinorMode::Principal);

  const Integer& modulus() const { return m_; }
  const std::vector<Integer>& squarefree_parts() const { return parts_; }
  const RationalSymMatrix& provenance() const { return q_; }
  bool contains(const Integer& c) const;
  // Allowed classes in [0, m), or nullopt when m exceeds kMaxListedModulus.
  std::optional<std::vector<std::uint64_t>> allowed() const;

 private:
  RationalSymMatrix q_ = RationalSymMatrix::identity(1);
  Integer m_ = 1;
  std::vector<Integer> parts_;
};

inline ResidueSystem residue_system(const RationalSymMatrix& q, MinorMode mode = MinorMode::Principal) {
  return ResidueSystem::build(q, mode);
}

// Sum of Lambda(n) over integers n in [x, 2x] with n = a (mod m).
Interval vonmangoldt_ap_sum(const Rational& x, std::uint64_t m, std::uint64_t a);

// Primes in [lo, hi] accepted by the system and coprime to N, sorted.
std::vector<std::uint64_t> good_prime_set(const ResidueSystem& system, std::uint64_t lo, std::uint64_t hi,
                                          const Integer& coprime_to = 1);

}  // namespace supnorm
