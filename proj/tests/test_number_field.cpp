#include <random>

#include "doctest.h"
#include "supnorm/number_field.hpp"

using namespace supnorm;

namespace {

FieldElement random_element(std::mt19937_64& rng, const FieldSpecPtr& spec, bool integral) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  std::vector<Rational> c(spec->dimension());
  for (auto& q : c) {
    q = integral ? Rational(num(rng)) : Rational(num(rng), den(rng));
    q.canonicalize();
  }
  return FieldElement(spec, c);
}

FieldElement q(const FieldSpecPtr& spec, long a, long b = 1) { return FieldElement(spec, frac(a, b)); }

}  // namespace

TEST_CASE("field construction") {
  CHECK(RadicalFieldSpec::make(3, {2})->dimension() == 3);
  CHECK(RadicalFieldSpec::make(2, {2, 3})->dimension() == 4);
  CHECK(RadicalFieldSpec::make(3, {2})->galois_degree_bound() == 6);
  CHECK_THROWS_AS(RadicalFieldSpec::make(2, {4}), DomainError);
  CHECK_THROWS_AS(RadicalFieldSpec::make(4, {4}), DomainError);
  CHECK_THROWS_AS(RadicalFieldSpec::make(2, {2, 8}), DomainError);
  CHECK_THROWS_AS(RadicalFieldSpec::make(2, {2, 3, 6}), DomainError);
  CHECK_THROWS_AS(RadicalFieldSpec::make(3, {-2}), DomainError);
  CHECK_NOTHROW(RadicalFieldSpec::make(3, {Rational(1, 2)}));
}

TEST_CASE("defining relation and telescoping inverse") {
  for (unsigned n : {2u, 3u, 5u}) {
    const auto k = RadicalFieldSpec::make(n, {2});
    const auto t = FieldElement::generator(k, 0);
    FieldElement p = q(k, 1);
    for (unsigned i = 1; i < n; ++i) p *= t;
    CHECK(t * p == q(k, 2));
  }
  const auto k = RadicalFieldSpec::make(3, {2});
  const auto t = FieldElement::generator(k, 0);
  const auto one_plus = q(k, 1) + t;
  // (1 + t)(1 - t + t^2) = 1 + t^3 = 3.
  CHECK(one_plus * (q(k, 1) - t + t * t) == q(k, 3));
  CHECK(one_plus * one_plus.inverse() == q(k, 1));
  CHECK(one_plus.inverse() == Rational(1, 3) * (q(k, 1) - t + t * t));
  CHECK_THROWS_AS(FieldElement(k).inverse(), DivisionByZero);
}

TEST_CASE("rational radicand generator") {
  const auto k = RadicalFieldSpec::make(3, {Rational(1, 2)});
  const auto t = FieldElement::generator(k, 0);
  CHECK(t * t * t == q(k, 1, 2));
}

TEST_CASE("exactness on random elements") {
  std::mt19937_64 rng(1);
  for (const auto& k : {RadicalFieldSpec::make(3, {2}), RadicalFieldSpec::make(2, {2, 3}),
                        RadicalFieldSpec::make(3, {5, 7})}) {
    for (int it = 0; it < 10; ++it) {
      const auto x = random_element(rng, k, false), y = random_element(rng, k, false);
      CHECK((x + y) - y == x);
      CHECK(x * y == y * x);
      if (!x.is_zero()) CHECK(x * x.inverse() == q(k, 1));
      if (!y.is_zero()) CHECK((x / y) * y == x);
    }
  }
}

TEST_CASE("norm and conjugate moduli") {
  const auto k = RadicalFieldSpec::make(3, {2});
  const auto t = FieldElement::generator(k, 0);
  for (const auto& m : conjugate_moduli(q(k, 2))) CHECK(m.contains(Rational(2)));
  for (const auto& m : conjugate_moduli(t)) {
    CHECK(m.lower() <= 1.2599210498948732);
    CHECK(m.upper() >= 1.2599210498948731);
    CHECK(m.width() < 1e-30);
  }
  CHECK(t.norm() == 2);
  // N(1 + t) = 1 + 2 = 3 for x^3 - 2.
  CHECK((q(k, 1) + t).norm() == 3);

  std::mt19937_64 rng(4);
  for (const auto& f : {RadicalFieldSpec::make(3, {2}), RadicalFieldSpec::make(2, {3, 5})}) {
    for (int it = 0; it < 10; ++it) {
      const auto x = random_element(rng, f, true);
      if (x.is_zero()) continue;
      Interval prod = Interval::point(Rational(1), kStartPrecision);
      for (const auto& m : conjugate_moduli(x)) prod = prod * m;
      CHECK(prod.contains(abs(x.norm())));
      CHECK(prod.upper() >= 1.0);
    }
  }
}

TEST_CASE("embedding intervals nest under refinement") {
  const auto k = RadicalFieldSpec::make(3, {2, 3});
  std::mt19937_64 rng(2);
  const auto x = random_element(rng, k, false);
  for (std::size_t e = 0; e < k->embeddings(); ++e) {
    const auto lo = x.embed(e, 128), hi = x.embed(e, 512);
    CHECK(lo.re.contains(hi.re));
    CHECK(lo.im.contains(hi.im));
    CHECK(hi.re.width() <= lo.re.width());
  }
  CHECK((q(k, 1) - FieldElement::generator(k, 0)).real_sign() == -1);
}

TEST_CASE("well-balanced elements") {
  const auto k = RadicalFieldSpec::make(3, {2});
  const auto t = FieldElement::generator(k, 0);
  CHECK(is_well_balanced(FieldElement(k), 1, 2).valid);
  CHECK(is_well_balanced(FieldElement(k), 7, 100).valid);
  CHECK(is_well_balanced(q(k, 2), 1, 2).valid);
  CHECK_FALSE(is_well_balanced(q(k, 5), 2, 2).valid);
  CHECK(is_well_balanced(q(k, 4), 2, 2).valid);
  CHECK(is_well_balanced(t, 1, 2).valid);
  CHECK_FALSE(is_well_balanced(q(k, 1, 5), 2, 2).valid);
  CHECK_THROWS_AS(is_well_balanced(t, Rational(1, 2), 2), DomainError);
  CHECK_THROWS_AS(is_well_balanced(t, 1, 1), DomainError);
  CHECK(well_balanced_exponent(q(k, 5), 2) == 3);
}

TEST_CASE("well-balanced closure laws") {
  std::mt19937_64 rng(8);
  const auto k = RadicalFieldSpec::make(3, {2});
  const Rational A = 2;
  const Rational deg(k->galois_degree_bound());
  for (int it = 0; it < 15; ++it) {
    const auto a = random_element(rng, k, true), b = random_element(rng, k, true);
    const auto c = random_element(rng, k, true), d = random_element(rng, k, true);
    if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero()) continue;
    Rational alpha = 1;
    for (const auto& x : {a, b, c, d}) alpha = std::max(alpha, Rational(well_balanced_exponent(x, A)));
    const FieldFraction x{a, b}, y{c, d};
    REQUIRE(is_well_balanced(x, alpha, A).valid);
    REQUIRE(is_well_balanced(y, alpha, A).valid);
    CHECK(is_well_balanced(FieldFraction{-a, b}, alpha, A).valid);
    CHECK(is_well_balanced(FieldFraction{b, a}, alpha, A).valid);
    CHECK(is_well_balanced(FieldFraction{a * c, b * d}, 2 * alpha, A).valid);
    const auto sum = a * d + b * c;
    if (!sum.is_zero()) CHECK(is_well_balanced(FieldFraction{sum, b * d}, (2 * alpha + 1) * deg, A).valid);
  }
}

TEST_CASE("gram-schmidt") {
  const auto qf = RadicalFieldSpec::rationals();
  auto vec = [&](std::vector<Rational> v) {
    KVector out;
    for (auto& x : v) out.emplace_back(qf, x);
    return out;
  };
  const auto e = gram_schmidt({vec({1, 0}), vec({0, 1})});
  CHECK(e[0] == vec({1, 0}));
  CHECK(e[1] == vec({0, 1}));
  const auto g = gram_schmidt({vec({1, 1}), vec({1, 0})});
  CHECK(g[1] == vec({Rational(1, 2), Rational(-1, 2)}));
  CHECK_THROWS_AS(gram_schmidt({vec({1, 1}), vec({2, 2})}), DomainError);

  const auto k = RadicalFieldSpec::make(3, {2});
  const auto t = FieldElement::generator(k, 0);
  const auto h = gram_schmidt({{q(k, 1), t}, {t, q(k, 1)}});
  CHECK(inner(h[0], h[1]).is_zero());
}

TEST_CASE("distance to subspace") {
  const auto qf = RadicalFieldSpec::rationals();
  const std::vector<KVector> perp{{FieldElement(qf, 1), FieldElement(qf, -1)}};
  const auto on = distance_to_subspace({1, 1}, perp);
  CHECK(on.distance.contains(Rational(0)));
  CHECK(on.distance.width() == 0.0);
  const auto off = distance_to_subspace({1, 0}, perp);
  CHECK(off.distance.lower() <= 0.70710678118654758);
  CHECK(off.distance.upper() >= 0.70710678118654746);
  CHECK(off.max_pairing.contains(Rational(1)));

  // The distance is controlled by the largest pairing.
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> dist(-20, 20);
  const auto k = RadicalFieldSpec::make(2, {2});
  const auto t = FieldElement::generator(k, 0);
  const std::vector<KVector> gens{{q(k, 1), t, q(k, 0)}, {q(k, 0), q(k, 1), -t}};
  for (int it = 0; it < 20; ++it) {
    const auto r = distance_to_subspace({dist(rng), dist(rng), dist(rng)}, gens);
    CHECK(r.distance.upper() <= 10.0 * r.max_pairing.upper() + 1e-30);
  }
}

TEST_CASE("bounded kernel basis") {
  const auto qf = RadicalFieldSpec::rationals();
  const auto zero = kernel_basis_bounded({}, 3, qf);
  REQUIRE(zero.vectors.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(zero.vectors[i][j] == FieldElement(qf, i == j ? 1 : 0));

  const auto one = kernel_basis_bounded({{FieldElement(qf, 1), FieldElement(qf, -1)}}, 2, qf);
  REQUIRE(one.vectors.size() == 1);
  CHECK(one.vectors[0][0] == FieldElement(qf, 1));
  CHECK(one.vectors[0][1] == FieldElement(qf, 1));

  const auto k = RadicalFieldSpec::make(3, {2});
  const auto t = FieldElement::generator(k, 0);
  const auto kt = kernel_basis_bounded({{t, q(k, -1)}}, 2, k);
  REQUIRE(kt.vectors.size() == 1);
  CHECK(kt.vectors[0][0] == q(k, 1));
  CHECK(kt.vectors[0][1] == t);
  CHECK(inner({t, q(k, -1)}, kt.vectors[0]).is_zero());
  for (const auto& c : kt.certificates[0]) CHECK(c.valid);

  CHECK_THROWS_AS(kernel_basis_bounded({{q(k, 1), q(k, 0)}, {q(k, 0), t}}, 2, k), ZeroKernel);

  std::mt19937_64 rng(12);
  for (int it = 0; it < 10; ++it) {
    std::vector<KVector> rows(2);
    for (auto& row : rows)
      for (int j = 0; j < 4; ++j) row.push_back(random_element(rng, k, false));
    const auto kb = kernel_basis_bounded(rows, 4, k);
    CHECK(kb.vectors.size() == 4 - rank(rows));
    for (const auto& v : kb.vectors) {
      for (const auto& row : rows) CHECK(inner(row, v).is_zero());
      for (const auto& x : v) CHECK(x.has_integral_coordinates());
    }
    for (const auto& cs : kb.certificates)
      for (const auto& c : cs) CHECK(c.valid);
  }
}
