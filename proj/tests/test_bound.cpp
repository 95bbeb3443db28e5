#include "doctest.h"
#include "supnorm/bound.hpp"

#include <cmath>
#include <random>

using namespace supnorm;

namespace {

SpectralParameters mu(std::vector<Rational> v) { return {std::move(v)}; }

}  // namespace

TEST_CASE("laplace eigenvalue") {
  CHECK(laplace_eigenvalue(mu({0, 0})) == Rational(1, 4));
  CHECK(laplace_eigenvalue(mu({0, 0, 0})) == 1);
  CHECK(laplace_eigenvalue(mu({3, -3})) == Rational(37, 4));
  CHECK_THROWS_AS(laplace_eigenvalue(mu({1, 0})), DomainError);
}

TEST_CASE("laplace eigenvalue is comparable to 1 + |mu|^2") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-100, 100);
  for (std::size_t n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Rational> v(n);
      Rational s = 0;
      for (std::size_t j = 0; j + 1 < n; ++j) {
        v[j] = Rational(d(rng), 7);
        s += v[j];
      }
      v[n - 1] = -s;
      Rational norm2 = 0;
      for (const auto& x : v) norm2 += x * x;
      if (norm2 > 10000) continue;
      const Rational ratio = laplace_eigenvalue(mu(v)) / (1 + norm2);
      CHECK(ratio >= Rational(1, 24));
      CHECK(ratio <= 2);
    }
}

TEST_CASE("c-function normalization") {
  CHECK(c_function_norm({Rational(5, 2), Rational(-5, 2)}) == 6);
  CHECK(c_function_norm({1, 1, 1, 1}) == 1);
  CHECK(c_function_norm({1, 0, -1}) == 12);
}

TEST_CASE("convexity exponent") {
  CHECK(convexity_exponent(2) == Rational(1, 4));
  CHECK(convexity_exponent(3) == Rational(3, 4));
  CHECK(convexity_exponent(4) == Rational(3, 2));
  CHECK_THROWS_AS(convexity_exponent(1), DomainError);
}

TEST_CASE("basic estimate degenerate evaluation") {
  // |P| = 1, L0 = 1, unit counts: terms 1, (1/|c|^2)^{-1/2}, n.
  const double lc = std::log(10.0);
  const auto r = basic_estimate(2, lc, 1.0, 2, 1, {{1, 3, 3, 1}, {2, 3, 3, 1}});
  CHECK(r.terms[0].log_value == doctest::Approx(0));
  CHECK(r.terms[1].log_value == doctest::Approx(-lc));
  CHECK(r.terms[2].log_value == doctest::Approx(std::log(2.0)));
  CHECK(r.log_total == doctest::Approx(2 * lc + std::log(1 + 0.1 + 2)));
  CHECK(r.dominant == 2);
  CHECK_THROWS_AS(basic_estimate(2, lc, 1.0, 2, 0, {}), DomainError);
}

TEST_CASE("basic estimate with zero counts isolates the first two terms") {
  const auto r = basic_estimate(3, 100, 7, 4, 1000000, {});
  CHECK(std::isinf(r.terms[2].log_value));
  CHECK(r.dominant != 2);
}

TEST_CASE("basic estimate is monotone in the counts") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 50);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<CountEntry> c;
    for (unsigned nu = 1; nu <= 3; ++nu) c.push_back({nu, 5, 7, u(rng)});
    const double before = basic_estimate(3, 20, 11, 3, 5, c).log_total;
    c[trial % 3].count += u(rng) + 1;
    CHECK(basic_estimate(3, 20, 11, 3, 5, c).log_total >= before);
  }
}

TEST_CASE("counting term with the proposition bound") {
  // Counts p^{nu(n-2+eps) + c6/D1} over primes in [L0, 2 L0]; the folded
  // exponent of the counting term is max_nu (-nu (1 - eps) + c6/D1) in L0,
  // up to the factor 2^{nu(n-2+eps) + c6/D1} n.
  const std::size_t n = 3;
  const double L0 = 1000, eps = 0.5, c6_over_D1 = 0.25;
  const std::vector<long> primes{1009, 1013, 1019, 1021, 1031};
  std::vector<CountEntry> c;
  for (unsigned nu = 1; nu <= n; ++nu)
    for (long p : primes)
      for (long q : primes)
        c.push_back({nu, p, q, std::pow(static_cast<double>(p), nu * (n - 2 + eps) + c6_over_D1)});
  const auto r = basic_estimate(n, 50, L0, 3, primes.size(), c);
  const double folded = (-(1 - eps) + c6_over_D1) * std::log(L0);
  CHECK(r.terms[2].log_value <= folded + std::log(3.0) + (n * (n - 2 + eps) + c6_over_D1) * std::log(2.0));
  CHECK(r.terms[2].log_value >= folded - 1e-9);
}

TEST_CASE("delta calculator at minimal legal parameters") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto d = delta_calculator(n);
    CHECK(d.delta > 0);
    CHECK(d.gain == d.loss);
    CHECK(d.delta_F * 2 == d.delta);
  }
  ConstantsConfig k;
  k.c9 = 1;
  const auto d = delta_calculator(2, k);
  CHECK(d.D1 == 1);
  CHECK(d.M == 1);
  // Closed form with E = 1: 1 / (n(n-1) (1 + 2 n^3 + M)).
  CHECK(d.delta == Rational(1, 2 * (1 + 16 + 1)));
}

TEST_CASE("delta decreases to zero as M grows") {
  ConstantsConfig k;
  k.c9 = 1;
  Rational last = delta_calculator(3, k, 1, 1, 1).delta;
  for (long M : {10L, 1000L, 100000L, 10000000L}) {
    const Rational d = delta_calculator(3, k, 1, 1, M).delta;
    CHECK(d < last);
    last = d;
  }
  CHECK(last < Rational(1, 1000000));
}

TEST_CASE("delta calculator rejects infeasible parameters") {
  ConstantsConfig k;
  CHECK_THROWS_AS(delta_calculator(2, k, 2, 2, 1000), DomainError);      // D2 < D1^3
  CHECK_THROWS_AS(delta_calculator(2, k, 2, 8, 10), DomainError);        // M too small
  CHECK_NOTHROW(delta_calculator(2, k, 2, 8, Rational(8 * 4096 * 8)));   // M = D1^3 D2^4
}

TEST_CASE("stronger bound exponents") {
  const auto m = mu({Rational(7, 2), Rational(-7, 2)});
  const auto e = stronger_bound_exponents(m, Rational(1, 100));
  REQUIRE(e.size() == 1);
  CHECK(e[0].base == 8);
  CHECK(e[0].value == doctest::Approx(std::pow(8.0, 0.49)));
  CHECK(stronger_bound(m, Rational(1, 2)) == doctest::Approx(1));
  const auto m3 = mu({1, 0, -1});
  const double lhs = stronger_bound(m3, Rational(1, 10));
  CHECK(lhs == doctest::Approx(std::pow(c_function_norm(m3.mu).get_d(), (1 - 0.2) / 2)));
}
