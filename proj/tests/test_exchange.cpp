#include "doctest.h"
#include "supnorm/exchange.hpp"

#include <random>

using namespace supnorm;

namespace {

RationalSymMatrix sym(std::vector<std::vector<Rational>> rows) {
  return RationalSymMatrix::make(RationalMatrix::from_rows(rows));
}

IntegerMatrix imat(std::vector<std::vector<Integer>> rows) { return IntegerMatrix::from_rows(rows); }

bool all_zero(const std::vector<KVector>& rows) {
  for (const auto& r : rows)
    for (const auto& x : r)
      if (!x.is_zero()) return false;
  return true;
}

KVector unit(std::size_t N, std::size_t k, const FieldSpecPtr& spec) {
  KVector v(N, FieldElement(spec));
  v[k] = FieldElement(spec, Rational(1));
  return v;
}

}  // namespace

TEST_CASE("sym coordinates round trip") {
  const auto spec = RadicalFieldSpec::rationals();
  const auto q = lift(sym({{2, 1, 0}, {1, 3, Rational(1, 2)}, {0, Rational(1, 2), 5}}).entries(), spec);
  const auto c = sym_coordinates(q);
  CHECK(c.size() == 6);
  CHECK(c[4].rational_value() == Rational(1, 2));
  CHECK(sym_matrix(c, 3) == q);
}

TEST_CASE("transfer operator trivial cases") {
  for (std::size_t n : {2, 3}) {
    CHECK(all_zero(transfer_operator(IntegerMatrix::identity(n), 1).rows));
    Integer p = 3;
    IntegerMatrix g = IntegerMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = p;
    CHECK(all_zero(transfer_operator(g, pow(p, 2 * n)).rows));
  }
}

TEST_CASE("transfer operator diag(1,2), m = 16") {
  const auto op = transfer_operator(imat({{1, 0}, {0, 2}}), 16);
  CHECK(op.scalar.rational_value() == 4);
  CHECK(op.rows[0][0].rational_value() == -3);
  CHECK(op.rows[1][1].rational_value() == -2);
  CHECK(op.rows[2][2].is_zero());
  const auto h = intersect_kernels(2, {{imat({{1, 0}, {0, 2}}), 16, {}}});
  REQUIRE(h.dim() == 1);
  CHECK(h.basis.vectors[0] == unit(3, 2, h.spec));
}

TEST_CASE("transfer operator matches direct evaluation over an irrational field") {
  const IntegerMatrix g = imat({{1, 2, 0}, {0, 1, 1}, {3, 0, 1}});
  const Integer m = 2 * 2 * 3;  // m^{1/3} irrational
  const auto op = transfer_operator(g, m);
  CHECK(op.scalar.spec()->generators() == 2);
  const auto spec = op.scalar.spec();
  const auto q = lift(sym({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}).entries(), spec);
  const auto direct = op.apply(q);
  const auto coords = sym_coordinates(q);
  const auto image = sym_coordinates(direct);
  for (std::size_t r = 0; r < 6; ++r) CHECK(inner(op.rows[r], coords) == image[r]);
}

TEST_CASE("empty and zero intersections give Sym_n") {
  for (std::size_t n : {2, 3, 4}) {
    CHECK(intersect_kernels(n, {}).dim() == sym_dim(n));
    CHECK(intersect_kernels(n, {{IntegerMatrix::identity(n), 1, {}}}).dim() == sym_dim(n));
  }
}

TEST_CASE("ambient field and radicals") {
  CHECK(ambient_field(3, {Integer(5 * 5 * 5 * 5 * 5 * 5)})->generators() == 0);
  const auto spec = ambient_field(3, {Integer(4), Integer(9 * 5)});
  CHECK(spec->generators() == 3);
  const auto x = radical_element(spec, 16, 3);
  CHECK(x.is_monomial());
  CHECK(x * x * x == FieldElement(spec, Rational(16)));
  CHECK_THROWS_AS(radical_element(RadicalFieldSpec::rationals(), 7, 2), DomainError);
}

TEST_CASE("subfield description") {
  const auto spec = ambient_field(2, {Integer(2), Integer(3)});
  const auto k = describe_subfield(spec, {radical_element(spec, 6, 2)});
  CHECK(k.degree() == 2);
  CHECK(k.contains(radical_element(spec, 24, 2)));
  CHECK_FALSE(k.contains(radical_element(spec, 2, 2)));
  CHECK(describe_subfield(spec, {}).is_rational());
}

TEST_CASE("select_generators is greedy in input order") {
  const auto spec = RadicalFieldSpec::rationals();
  auto r = [&](std::vector<long> v) {
    KVector out;
    for (long x : v) out.emplace_back(spec, Rational(x));
    return out;
  };
  CHECK(select_generators({r({0, 0}), r({1, 1}), r({2, 2}), r({1, 0}), r({0, 1})}) == std::vector<std::size_t>{1, 3});
  CHECK(select_generators({}).empty());
}

TEST_CASE("find_Q_prime") {
  const auto q = sym({{Rational(101, 100), Rational(1, 50)}, {Rational(1, 50), Rational(99, 100)}});
  const auto region = Region::around(q.entries(), Rational(1, 4));

  SUBCASE("H = Sym_n returns Q") {
    const auto qp = find_Q_prime(intersect_kernels(2, {}), region, q);
    REQUIRE(qp.rational);
    CHECK(*qp.rational == q.entries());
    CHECK(qp.den == 100);
  }
  SUBCASE("H = span(I) gives a rational multiple of I") {
    // Signed permutations of the plane fix exactly the multiples of I.
    std::vector<KernelInput> ops{{imat({{0, 1}, {1, 0}}), 1, {}}, {imat({{1, 0}, {0, -1}}), 1, {}}};
    const auto h = intersect_kernels(2, ops);
    REQUIRE(h.dim() == 1);
    const auto qp = find_Q_prime(h, region, q);
    REQUIRE(qp.rational);
    CHECK((*qp.rational)(0, 1) == 0);
    CHECK((*qp.rational)(0, 0) == (*qp.rational)(1, 1));
    CHECK(abs((*qp.rational)(0, 0) - 1) < Rational(1, 8));
  }
  SUBCASE("H = span(E22) has no positive definite point") {
    const auto h = intersect_kernels(2, {{imat({{1, 0}, {0, 2}}), 16, {}}});
    CHECK_THROWS_AS(find_Q_prime(h, region, q), NoPointFound);
  }
}

TEST_CASE("exchange with every S empty returns Q") {
  const auto q = sym({{1, 0}, {0, 1}});
  const auto res = exchange_lemma(q, {{3, 5, 1}}, std::nullopt);
  CHECK(res.solutions[0].count == 0);
  CHECK(res.h.dim() == 3);
  CHECK(res.k.is_rational());
  CHECK(*res.q_prime.rational == q.entries());
}

TEST_CASE("exchange toy n = 2, trivial pair") {
  const auto q = RationalSymMatrix::identity(2);
  const auto res = exchange_lemma(q, {{1, 1, 1}}, std::nullopt);
  CHECK(res.solutions[0].count == 8);
  CHECK(res.h.dim() == 1);
  CHECK(res.verified == 8);
  CHECK(res.reenumerated);
  CHECK(*res.q_prime.rational == q.entries());
}

TEST_CASE("exchange n = 3, p = q = 5") {
  const auto q = RationalSymMatrix::identity(3);
  const auto res = exchange_lemma(q, {{5, 5, 1}}, std::nullopt);
  CHECK(res.solutions[0].count > 0);
  CHECK(res.k.is_rational());
  CHECK(res.h.generators.size() <= 6);
  CHECK(res.p_prime.size() <= 6);
  CHECK(res.verified == res.solutions[0].count);
  for (const auto& v : res.h.basis.vectors)
    for (const auto& row : res.h.generators) CHECK(inner(row, v).is_zero());
  CHECK(res.h.dim() + res.h.generators.size() == 6);
}

TEST_CASE("exchange randomized Q near I") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 4; ++trial) {
    const Rational e(d(rng), 64);
    const Rational f(d(rng), 64);
    const auto q = sym({{1 + e, f}, {f, 1 - e}});
    const auto res = exchange_lemma(q, {{1, 1, 1}, {3, 3, 1}}, std::nullopt);
    CHECK(res.verified == res.solutions[0].count + res.solutions[1].count);
    CHECK(res.h.dim() + res.h.generators.size() == 3);
  }
}

TEST_CASE("adding pairs never increases dim H") {
  const auto q = sym({{2, 1, 0}, {1, 2, 0}, {0, 0, 2}});
  std::vector<PrimePair> all{{1, 1, 1}, {3, 3, 1}, {2, 2, 1}};
  std::size_t last = sym_dim(3);
  std::vector<PrimePair> prefix;
  for (const auto& p : all) {
    prefix.push_back(p);
    ExchangeOptions o;
    o.reenumerate = false;
    try {
      const auto res = exchange_lemma(q, prefix, std::nullopt, o);
      CHECK(res.h.dim() <= last);
      last = res.h.dim();
    } catch (const NoPointFound&) {
      const auto sub = exchange_lemma(q, {}, std::nullopt, o);
      CHECK(sub.h.dim() == sym_dim(3));
    }
  }
}

TEST_CASE("pair window validation") {
  ExchangeOptions o;
  o.L = 3;
  o.D = 1;
  CHECK_THROWS_AS(exchange_lemma(RationalSymMatrix::identity(2), {{2, 3, 1}}, std::nullopt, o), DomainError);
  CHECK_NOTHROW(exchange_lemma(RationalSymMatrix::identity(2), {{3, 5, 1}}, std::nullopt, o));
}

TEST_CASE("embedding into a larger prime-radical field") {
  const auto small = RadicalFieldSpec::make(3, {2});
  const auto big = RadicalFieldSpec::make(3, {2, 3});
  const auto t = FieldElement::generator(small, 0);
  const auto x = t * t + FieldElement(small, Rational(5));
  const auto e = embed_into(x, big);
  CHECK(e.spec() == big);
  const auto tb = FieldElement::generator(big, 0);
  CHECK(e == tb * tb + FieldElement(big, Rational(5)));
  CHECK(embed_into(t, big) * embed_into(t, big) * embed_into(t, big) == FieldElement(big, Rational(2)));
  CHECK_THROWS_AS(embed_into(FieldElement::generator(big, 1), small), DomainError);
}
