#include "doctest.h"
#include "supnorm/recursion.hpp"

#include <cmath>

using namespace supnorm;

namespace {

RationalSymMatrix sym(std::vector<std::vector<Rational>> rows) {
  return RationalSymMatrix::make(RationalMatrix::from_rows(rows));
}

RecursionParams params(long L, unsigned D1, unsigned D2, std::vector<unsigned> nus, std::uint64_t cap) {
  RecursionParams p;
  p.L = L;
  p.D1 = D1;
  p.D2 = D2;
  p.nus = std::move(nus);
  p.prime_cap = cap;
  return p;
}

void check_chain(const Chain& c, std::size_t n) {
  const std::size_t N = sym_dim(n);
  REQUIRE(!c.levels.empty());
  CHECK(c.levels.size() <= N + 1);
  CHECK(c.stable < N);
  CHECK(c.stable + 2 == c.levels.size());
  for (std::size_t j = 1; j < c.dims.size(); ++j) {
    CHECK(c.dims[j] <= c.dims[j - 1]);
    CHECK(subspace_contained(c.levels[j].exchange.h, c.levels[j - 1].exchange.h));
  }
  CHECK(c.dims[c.stable] == c.dims[c.stable + 1]);
}

}  // namespace

TEST_CASE("classify_pair") {
  CHECK(classify_pair(3, 5, 1, 3) == PairCase::Case1);
  CHECK(classify_pair(3, 5, 3, 3) == PairCase::Case2);
  CHECK(classify_pair(3, 5, 1, 2) == PairCase::Case2);
  for (unsigned nu = 1; nu <= 3; ++nu) CHECK(classify_pair(3, 3, nu, 3) == PairCase::Case3);
  CHECK_THROWS_AS(classify_pair(3, 5, 4, 3), DomainError);
}

TEST_CASE("windows") {
  const auto w = make_window(3, 1, 2, 1000);
  CHECK(*w.lo == 3);
  CHECK(*w.hi == 18);
  CHECK(w.search_lo == 3);
  CHECK(w.search_hi == 18);
  CHECK_FALSE(w.clamped);
  const auto c = make_window(3, 1, 10, 50);
  CHECK(c.clamped);
  CHECK(c.search_hi == 50);
  const auto e = make_window(3, 4, 4, 50);
  CHECK(e.empty());
  const auto huge = make_window(3, 1, Integer(1) << 40, 50);
  CHECK_FALSE(huge.hi);
  CHECK(huge.clamped);
}

TEST_CASE("outer chain with no pairs stabilizes at once") {
  const auto c = outer_chain(RationalSymMatrix::identity(2), params(3, 1, 1, {}, 2));
  check_chain(c, 2);
  CHECK(c.stable == 0);
  CHECK(c.dims[0] == 3);
  CHECK(c.dims[1] == 3);
}

TEST_CASE("outer chain toy n = 2") {
  const auto q = RationalSymMatrix::identity(2);
  const auto c = outer_chain(q, params(3, 1, 1, {}, 50));
  check_chain(c, 2);
  const auto& lvl = c.stable_level();
  CHECK(lvl.pairs.size() == 8);
  // I lies in H_i: every generator annihilates the coordinates of I.
  const auto spec = lvl.exchange.h.spec;
  const KVector eye = sym_coordinates(lift(q.entries(), spec));
  for (const auto& g : lvl.exchange.h.generators) CHECK(inner(g, eye).is_zero());
  CHECK(lvl.exchange.q_prime.rational);
}

TEST_CASE("outer chain over a generic matrix") {
  const auto q = sym({{2, 1}, {1, 3}});
  const auto c = outer_chain(q, params(3, 2, 2, {1}, 30));
  check_chain(c, 2);
}

TEST_CASE("inner chain toy n = 2 uses Q*-good primes") {
  const auto q = RationalSymMatrix::identity(2);
  const auto p = params(3, 1, 1, {1}, 50);
  const auto c = inner_chain(q, 1, p);
  check_chain(c, 2);
  for (const auto& lvl : c.levels) {
    CHECK(lvl.exchange.k.is_rational());
    REQUIRE(lvl.exchange.q_prime.rational);
    CHECK(lvl.exchange.q_prime.den >= 1);
    for (const auto& pr : lvl.pairs) CHECK(classify_pair(pr.p, pr.q, pr.nu, 2) != PairCase::Case1);
    if (lvl.j == 0) continue;
    REQUIRE(lvl.filter);
    const auto system = residue_system(*lvl.filter);
    for (auto g : lvl.good_primes) CHECK(system.contains(Integer(static_cast<unsigned long>(g))));
    CHECK(lvl.good_primes == good_prime_set(system, lvl.fresh->search_lo, lvl.fresh->search_hi));
  }
}

TEST_CASE("inner chain with no pairs") {
  const auto c = inner_chain(RationalSymMatrix::identity(3), 1, params(3, 1, 1, {1}, 2));
  check_chain(c, 3);
  CHECK(c.stable == 0);
}

TEST_CASE("envelopes") {
  CHECK(count1_envelope(3, 1, 5, 1, 100) == doctest::Approx(100 * std::pow(5.0, 1.5)));
  CHECK(count1_envelope(3, 2, 5, 1, 1) == doctest::Approx(4 * std::pow(5.0, 1.5)));
  CHECK(empty_envelope(2, 3, 3, 1, 1) == doctest::Approx(2 * std::pow(3.0, 0.5)));
}

TEST_CASE("driver n = 3, nu = 1: Case1 pairs have zero counts") {
  const auto q = RationalSymMatrix::identity(3);
  const auto cert = proposition_driver(q, params(47, 1, 1, {1}, 100));
  check_chain(cert.outer, 3);
  check_chain(cert.inner, 3);
  CHECK(cert.i < 6);
  CHECK(cert.k < 6);
  CHECK(cert.D.size() <= 81);
  CHECK(cert.Q.size() <= 3);
  std::size_t case1 = 0;
  for (const auto& b : cert.pairs) {
    if (b.kase != PairCase::Case1) continue;
    ++case1;
    CHECK(b.backing == "irrationality");
    CHECK(*b.count == 0);
    CHECK(b.verified);
  }
  CHECK(case1 >= 20);
  CHECK(cert.sound());
}

TEST_CASE("driver n = 3, nu = 3, Case2 against the envelope") {
  const auto q = RationalSymMatrix::identity(3);
  auto p = params(3, 1, 1, {3}, 8);
  const auto cert = proposition_driver(q, p);
  bool saw_case2 = false;
  for (const auto& b : cert.pairs) {
    if (b.kase == PairCase::Case2) saw_case2 = true;
    CHECK(b.verified);
  }
  CHECK_FALSE(saw_case2);  // only 3 is I-good in [3, 6]
  const auto direct = count_S([&] {
    CountingInstance c;
    c.q = q;
    c.a = 7 * 7 * 7;
    c.b = 3 * 3 * 3;
    return c;
  }());
  CHECK(static_cast<double>(direct) <= empty_envelope(3, 3, 7, 3, 100));
}

TEST_CASE("driver n = 3, p = q = 5: Case3 against the envelope") {
  const auto q = RationalSymMatrix::identity(3);
  const auto cert = proposition_driver(q, params(5, 1, 1, {1}, 10));
  // Only primes = 3 mod 4 survive the Q*-good filter for Q = I.
  for (const auto& b : cert.pairs) {
    CHECK(b.verified);
    if (b.kase == PairCase::Case3) CHECK(*b.count <= b.envelope);
  }
  CountingInstance c;
  c.q = q;
  c.a = 5;
  c.b = 5;
  const auto count = count_S(c);
  CHECK(count > 0);
  CHECK(static_cast<double>(count) <= count1_envelope(3, 1, 5, 1, 100));
}

TEST_CASE("certificate flags") {
  auto p = params(3, 2, 1, {1}, 20);
  p.M = Rational(1);
  const auto cert = proposition_driver(RationalSymMatrix::identity(2), p);
  CHECK_FALSE(cert.cond_d);
  CHECK_FALSE(cert.cond_n);
}
