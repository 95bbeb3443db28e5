#include <cmath>
#include <random>

#include "doctest.h"
#include "supnorm/congruence.hpp"

using namespace supnorm;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("scalar congruence") {
  CHECK(scalar_congruence(iv({1, 2}), iv({3, 1}), 5, 1).a == 3);
  CHECK(scalar_congruence(iv({4, 7, 1}), iv({4, 7, 1}), 3, 2).a == 1);
  CHECK_THROWS_AS(scalar_congruence(iv({1, 0}), iv({0, 1}), 5, 1), PreconditionFailed);
  CHECK_THROWS_AS(scalar_congruence(iv({5, 10}), iv({1, 2}), 5, 1), PreconditionFailed);
  CHECK_THROWS_AS(scalar_congruence(iv({1, 2}), iv({1, 2}), 4, 1), DomainError);
}

TEST_CASE("scalar witness is unique") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> d(-40, 40);
  for (long p : {3L, 5L, 7L})
    for (unsigned long rho : {1ul, 2ul}) {
      const Integer m = pow(Integer(p), rho);
      for (int it = 0; it < 20; ++it) {
        IntVector x = iv({d(rng), d(rng), d(rng)});
        if (mod(x[0], Integer(p)) == 0) x[0] += 1;
        const Integer a0 = 1 + mod(Integer(d(rng)), m - 1);
        if (mod(a0, Integer(p)) == 0) continue;
        IntVector y(3);
        for (int i = 0; i < 3; ++i) y[i] = a0 * x[i] + m * d(rng);
        const auto w = scalar_congruence(x, y, p, rho);
        int hits = 0;
        for (Integer a = 1; a < m; ++a) {
          if (mod(a, Integer(p)) == 0) continue;
          bool ok = true;
          for (int i = 0; i < 3; ++i) ok = ok && mod(y[i] - a * x[i], m) == 0;
          if (ok) {
            ++hits;
            CHECK(a == w.a);
          }
        }
        CHECK(hits == 1);
      }
    }
}

TEST_CASE("inner product congruence") {
  const auto id2 = IntegerMatrix::identity(2);
  CHECK(verify_inner_congruence(iv({1, 2}), iv({3, 1}), id2, 5, 1));
  CHECK(inner_congruence_holds(iv({1, 2}), iv({3, 1}), id2, 5, 1, 3, 2));
  CHECK(verify_inner_congruence(iv({2, 3}), iv({2, 3}), IntegerMatrix::from_rows({{3, 1}, {1, 4}}), 7, 2));
  // With an inverse that is only correct mod p^rho the identity can fail.
  CHECK_FALSE(inner_congruence_holds(iv({1, 0}), iv({1, 0}), id2, 5, 1, 1, 6));
  CHECK_THROWS_AS(verify_inner_congruence(iv({1, 0}), iv({0, 1}), id2, 5, 1), PreconditionFailed);
}

TEST_CASE("inner congruence on constructed pairs") {
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<long> d(-30, 30);
  const long primes[] = {2, 3, 5, 7, 11, 13};
  int checked = 0;
  while (checked < 1000) {
    const long p = primes[rng() % 6];
    const unsigned long rho = 1 + rng() % 3;
    const Integer m = pow(Integer(p), rho);
    const std::size_t n = 2 + rng() % 3;
    IntVector x(n), b(n), y(n);
    for (auto& v : x) v = d(rng);
    for (auto& v : b) v = d(rng);
    if (mod(x[0], Integer(p)) == 0) x[0] += 1;
    Integer a = d(rng);
    if (mod(a, Integer(p)) == 0) a += 1;
    for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + m * b[i];
    IntegerMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) A(i, j) = A(j, i) = d(rng);
    CHECK(verify_inner_congruence(x, y, A, p, rho));
    ++checked;
  }
}

TEST_CASE("collinear columns with norms divisible by p^{2 nu} are orthogonal mod p^{2 nu}") {
  // Search small vectors for Q = I in dimension 4 with |x|^2 = |y|^2 = 0 mod 25.
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> d(-12, 12);
  const Integer p = 5, m = 5, m2 = 25;
  const auto id = IntegerMatrix::identity(4);
  int found = 0;
  for (int it = 0; it < 200000 && found < 50; ++it) {
    IntVector x = iv({d(rng), d(rng), d(rng), d(rng)});
    if (mod(x[0], p) == 0 || mod(bilinear(x, id, x), m2) != 0) continue;
    const Integer a = 1 + rng() % 4;
    IntVector y(4);
    for (int i = 0; i < 4; ++i) y[i] = a * x[i] + m * d(rng);
    if (mod(bilinear(y, id, y), m2) != 0) continue;
    ++found;
    CHECK(mod(bilinear(x, id, y), m2) == 0);
  }
  CHECK(found >= 10);
}

TEST_CASE("minimum pairwise angle") {
  const auto id = RationalSymMatrix::identity(2);
  const auto right = min_pairwise_angle({iv({1, 0}), iv({0, 1})}, id);
  CHECK(right.lower() <= M_PI / 2);
  CHECK(right.upper() >= M_PI / 2);
  CHECK(right.width() < 1e-30);
  CHECK(min_pairwise_angle({iv({1, 0}), iv({1, 0})}, id).upper() == 0.0);
  CHECK(min_pairwise_angle({iv({1, 0}), iv({2, 0}), iv({0, 1})}, id).upper() == 0.0);
  CHECK_THROWS_AS(min_pairwise_angle({iv({1, 0}), iv({0, 0})}, id), DomainError);

  // Packing bound on random antipodal-free sets.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-6, 6);
  const auto q3 = RationalSymMatrix::make(RationalMatrix::from_rows({{2, 1, 0}, {1, 2, 1}, {0, 1, 3}}));
  for (int it = 0; it < 20; ++it) {
    std::vector<IntVector> vs;
    while (vs.size() < 12) {
      IntVector v = iv({d(rng), d(rng), d(rng)});
      if (v == iv({0, 0, 0})) continue;
      IntVector neg = v;
      for (auto& x : neg) x = -x;
      if (std::find(vs.begin(), vs.end(), neg) != vs.end() || std::find(vs.begin(), vs.end(), v) != vs.end())
        continue;
      vs.push_back(v);
    }
    const auto angle = min_pairwise_angle(vs, q3);
    if (angle.lower() <= 0) continue;
    const double bound = angle_packing_constant(3).get_d() * std::pow(angle.lower(), -2.0);
    CHECK(static_cast<double>(vs.size()) <= bound);
  }
}
