#include "supnorm/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace supnorm {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  for (; e; e >>= 1) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
  }
  return r;
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<std::uint64_t>(lo, 2);
  if (hi > (1ULL << 40)) throw ResourceError("sieve window beyond 2^40");
  const auto base = small_primes(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1);
  constexpr std::uint64_t kSegment = 1 << 18;
  for (std::uint64_t start = lo; start <= hi; start += kSegment) {
    const std::uint64_t end = std::min(hi, start + kSegment - 1);
    std::vector<bool> composite(end - start + 1, false);
    for (std::uint64_t p : base) {
      if (p * p > end) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t j = first; j <= end; j += p) composite[j - start] = true;
    }
    for (std::uint64_t k = start; k <= end; ++k)
      if (!composite[k - start]) out.push_back(k);
    if (end == hi) break;
  }
  return out;
}

ResidueSystem ResidueSystem::build(const RationalSymMatrix& q, MinorMode mode) {
  ResidueSystem rs;
  rs.q_ = q;
  Integer m = 4;
  for (const auto& d : minor_set(q, mode)) {
    const Integer s = squarefree_part(d);
    rs.parts_.push_back(s);
    m = lcm(m, 4 * s);
    m = lcm(m, radical(d));
  }
  const auto& t = q.integral();
  for (std::size_t i = 0; i < q.n(); ++i) m = lcm(m, radical(t(i, i)));
  rs.m_ = m;
  return rs;
}

bool ResidueSystem::contains(const Integer& c) const {
  const Integer r = mod(c, m_);
  if (gcd(r, m_) != 1) return false;
  for (const auto& s : parts_) {
    const Integer disc = -4 * s;
    if (mpz_kronecker(disc.get_mpz_t(), r.get_mpz_t()) != -1) return false;
  }
  return true;
}

std::optional<std::vector<std::uint64_t>> ResidueSystem::allowed() const {
  if (m_ > kMaxListedModulus) return std::nullopt;
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 1; c < m_.get_ui(); ++c)
    if (contains(c)) out.push_back(c);
  return out;
}

Interval vonmangoldt_ap_sum(const Rational& x, std::uint64_t m, std::uint64_t a) {
  if (x < 2) throw DomainError("x must be at least 2");
  if (m == 0) throw DomainError("modulus must be positive");
  if (std::gcd(a % m, m) != 1) throw DomainError("residue must be coprime to the modulus");
  const Integer lo = ceil(x), hi = floor(2 * x);
  if (!hi.fits_ulong_p() || hi > Integer(1) << 40) throw ResourceError("window too large");
  const std::uint64_t l = lo.get_ui(), h = hi.get_ui();
  // Sum of log p over hits equals log of the product of the p.
  Integer product = 1;
  for (std::uint64_t p : primes_in(2, h)) {
    for (u128 pk = p; pk <= h; pk *= p)
      if (pk >= l && static_cast<std::uint64_t>(pk) % m == a % m) product *= p;
  }
  return Interval::point(Rational(product), kStartPrecision).log();
}

std::vector<std::uint64_t> good_prime_set(const ResidueSystem& system, std::uint64_t lo, std::uint64_t hi,
                                          const Integer& coprime_to) {
  if (lo < 2) throw DomainError("window must start at 2 or above");
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_in(lo, hi)) {
    const Integer pz(static_cast<unsigned long>(p));
    if (system.contains(pz) && mpz_divisible_p(coprime_to.get_mpz_t(), pz.get_mpz_t()) == 0) out.push_back(p);
  }
  return out;
}

}  // namespace supnorm
