#include <random>

#include "doctest.h"
#include "supnorm/matrix_core.hpp"
#include "supnorm/oracles.hpp"

using namespace supnorm;

namespace {

IntegerMatrix im(std::vector<std::vector<long>> rows) {
  IntegerMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

RationalMatrix rm(std::vector<std::vector<std::string>> rows) {
  RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = parse_rational(rows[i][j]);
  return m;
}

void check_smith(const IntegerMatrix& g) {
  const auto s = smith_normal_form(g);
  CHECK(s.U * s.D * s.V == g);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  const auto d = s.diagonal();
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size() && d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
    if (d[i] == 0 && i + 1 < d.size()) CHECK(d[i + 1] == 0);
  }
}

}  // namespace

TEST_CASE("smith form of identity and diagonal matrices") {
  const auto id = IntegerMatrix::identity(3);
  const auto s = smith_normal_form(id);
  CHECK(s.U == id);
  CHECK(s.D == id);
  CHECK(s.V == id);

  const auto d = smith_normal_form(im({{2, 0}, {0, 6}}));
  CHECK(d.D == im({{2, 0}, {0, 6}}));
  CHECK(smith_normal_form(im({{6, 0}, {0, 4}})).D == im({{2, 0}, {0, 12}}));
}

TEST_CASE("smith form factors random matrices, product of divisors equals |det|") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 60; ++it) {
    const auto g = oracle::random_matrix(rng, 4, -20, 20);
    check_smith(g);
    Integer prod = 1;
    for (const auto& x : smith_normal_form(g).diagonal()) prod *= x;
    CHECK(prod == abs(oracle::cofactor_determinant(g)));
  }
  check_smith(im({{0, 0}, {0, 0}}));
  check_smith(im({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}}));
  check_smith(im({{4, 6, 8}, {2, 2, 2}}));
}

TEST_CASE("determinantal divisors") {
  CHECK(determinantal_divisor(IntegerMatrix::identity(4), 3) == 1);
  CHECK(determinantal_divisor(im({{1, 0}, {0, 7}}), 2) == 7);
  const auto w = im({{3, -4, 0}, {4, 3, 0}, {0, 0, 5}});
  CHECK(determinantal_divisors(w) == std::vector<Integer>{1, 5, 125});
  CHECK_THROWS_AS(determinantal_divisor(w, 0), DomainError);
  CHECK_THROWS_AS(determinantal_divisor(w, 4), DomainError);
  CHECK(determinantal_divisor(im({{1, 2}, {2, 4}}), 2) == 0);
}

TEST_CASE("determinantal divisors agree with the minor-gcd oracle") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 80; ++it) {
    const std::size_t n = 3 + it % 2;
    const auto g = oracle::random_matrix(rng, n, -20, 20);
    const auto d = determinantal_divisors(g);
    for (std::size_t j = 1; j <= n; ++j) CHECK(d[j - 1] == oracle::minor_gcd(g, j));
  }
}

TEST_CASE("elementary divisor chain and unimodular invariance") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 40; ++it) {
    const auto g = oracle::random_matrix(rng, 4, -9, 9);
    const auto d = determinantal_divisors(g);
    for (std::size_t j = 0; j + 1 < d.size(); ++j)
      if (d[j] != 0) CHECK(d[j + 1] % d[j] == 0);
    for (std::size_t j = 0; j + 2 < d.size(); ++j)
      if (d[j + 1] != 0) CHECK(Integer(d[j] * d[j + 2]) % Integer(d[j + 1] * d[j + 1]) == 0);
    if (determinant(g) != 0) CHECK(d.back() == abs(determinant(g)));
    const auto u = oracle::random_unimodular(rng, 4, 12);
    const auto v = oracle::random_unimodular(rng, 4, 12);
    CHECK(determinantal_divisors(u * g * v) == d);
  }
}

TEST_CASE("denominator") {
  CHECK(denominator(rm({{"1", "2"}, {"2", "5"}})) == 1);
  CHECK(denominator(rm({{"1", "1/2"}, {"1/2", "1"}})) == 2);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-100, 100), den(1, 50);
  for (int it = 0; it < 50; ++it) {
    RationalMatrix q(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        q(i, j) = Rational(num(rng), den(rng));
        q(i, j).canonicalize();
      }
    const Integer d = denominator(q);
    auto integral = [&](const Rational& s) {
      for (const auto& x : q.flat())
        if (Rational(x * s).get_den() != 1) return false;
      return true;
    };
    CHECK(integral(Rational(d)));
    for (const auto& [p, e] : factorize(d)) CHECK_FALSE(integral(Rational(d / p)));
  }
}

TEST_CASE("positive definite symmetric matrices") {
  CHECK_THROWS_AS(RationalSymMatrix::make(rm({{"1", "2"}, {"2", "1"}})), DomainError);
  CHECK_THROWS_AS(RationalSymMatrix::make(rm({{"1", "0"}, {"1", "1"}})), DomainError);
  CHECK_THROWS_AS(RationalSymMatrix::make(RationalMatrix::identity(9)), DomainError);
  const auto q = RationalSymMatrix::make(rm({{"1", "1/2"}, {"1/2", "1"}}));
  CHECK(q.den() == 2);
  CHECK(q.integral() == im({{2, 1}, {1, 2}}));
}

TEST_CASE("minor set") {
  CHECK(minor_set(RationalSymMatrix::identity(3)) == std::set<Integer>{1});
  CHECK(minor_set(RationalSymMatrix::make(rm({{"2", "1"}, {"1", "3"}}))) == std::set<Integer>{5});
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> off(-3, 3), diag(10, 20);
  for (int it = 0; it < 30; ++it) {
    RationalMatrix q(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      q(i, i) = diag(rng);
      for (std::size_t j = i + 1; j < 3; ++j) q(i, j) = q(j, i) = off(rng);
    }
    for (const auto& d : minor_set(RationalSymMatrix::make(q))) CHECK(d > 0);
  }
  // The widened set also contains off-diagonal minors.
  const auto q = RationalSymMatrix::make(rm({{"3", "1", "0"}, {"1", "3", "1"}, {"0", "1", "3"}}));
  CHECK(minor_set(q, MinorMode::AllPositive).size() > minor_set(q).size());
}

TEST_CASE("Q-good primes") {
  const auto i2 = RationalSymMatrix::identity(2);
  CHECK(is_q_good(7, i2));
  CHECK_FALSE(is_q_good(5, i2));
  CHECK_FALSE(is_q_good(2, RationalSymMatrix::make(rm({{"2", "1"}, {"1", "2"}}))));
  // For Q = I goodness is exactly p = 3 (mod 4).
  for (long p = 2; p < 2000; ++p) {
    if (!oracle::trial_division_prime(p)) continue;
    CHECK(is_q_good(p, RationalSymMatrix::identity(3)) == (p % 4 == 3));
  }
  // Legendre symbol against enumerated squares.
  for (long p : {3L, 5L, 7L, 11L, 13L, 97L})
    for (long a = -30; a < 30; ++a)
      if (a % p != 0) CHECK(is_quadratic_nonresidue(a, p) == !oracle::is_square_mod(a, p));
}

TEST_CASE("regions") {
  const auto id = RationalMatrix::identity(2);
  const auto r = Region::around(id, Rational(1, 4));
  CHECK(r.contains(id));
  CHECK(r.contains_inner(id));
  auto off = id;
  off(0, 0) = Rational(5, 4);
  CHECK_FALSE(r.contains(off));
  off(0, 0) = Rational(49, 40);
  CHECK(r.contains(off));
  CHECK_FALSE(r.contains_inner(off));
  CHECK_THROWS_AS(Region(id, id, id, id), DomainError);
}
