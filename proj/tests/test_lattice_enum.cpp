#include "doctest.h"
#include "supnorm/lattice_enum.hpp"
#include "supnorm/oracles.hpp"

using namespace supnorm;

namespace {

RationalSymMatrix sym(std::vector<std::vector<Rational>> rows) {
  return RationalSymMatrix::make(RationalMatrix::from_rows(rows));
}

CountingInstance inst(const RationalSymMatrix& q, long a, long b, std::optional<Rational> M = std::nullopt) {
  CountingInstance c;
  c.q = q;
  c.a = a;
  c.b = b;
  c.M = M;
  return c;
}

// Every gamma with entries in [-bound, bound] accepted by is_member.
std::vector<IntegerMatrix> member_box(const CountingInstance& c, long bound) {
  const std::size_t n = c.n();
  std::vector<IntegerMatrix> out;
  std::vector<long> idx(n * n, -bound);
  IntegerMatrix g(n, n);
  for (;;) {
    for (std::size_t k = 0; k < n * n; ++k) g(k / n, k % n) = idx[k];
    if (is_member(c, g)) out.push_back(g);
    std::size_t k = 0;
    while (k < n * n && idx[k] == bound) idx[k++] = -bound;
    if (k == n * n) break;
    ++idx[k];
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

const RationalSymMatrix kQ2 = sym({{2, 1}, {1, 3}});
const RationalSymMatrix kQ3 = sym({{2, 1, 0}, {1, 2, 1}, {0, 1, 3}});

}  // namespace

TEST_CASE("norm vectors") {
  const auto i2 = RationalSymMatrix::identity(2);
  CHECK(enum_norm_vectors(i2, Rational(25), Rational(0)).size() == 12);
  CHECK(enum_norm_vectors(i2, Rational(1), Rational(0)).size() == 4);
  CHECK(enum_norm_vectors(i2, Rational(3), Rational(0)).empty());
  CHECK(enum_norm_vectors(RationalSymMatrix::identity(3), Rational(25), Rational(0)).size() == 30);
  CHECK_THROWS_AS(enum_norm_vectors(i2, Rational(0), Rational(0)), DomainError);
  CHECK_THROWS_AS(enum_norm_vectors(i2, Rational(10000), Rational(0), 10), ResourceError);
  const auto half = sym({{1, Rational(1, 2)}, {Rational(1, 2), 1}});
  for (long t = 1; t <= 30; ++t) {
    CHECK(enum_norm_vectors(kQ2, Rational(t), Rational(0)) == oracle::box_norm_vectors(kQ2.entries(), t, 6));
    CHECK(enum_norm_vectors(half, frac(t, 2), Rational(0)) ==
          oracle::box_norm_vectors(half.entries(), frac(t, 2), 8));
    CHECK(enum_norm_vectors(kQ3, Rational(t), Rational(0)) == oracle::box_norm_vectors(kQ3.entries(), t, 5));
  }
  // Tolerance windows, rational and irrational.
  CHECK(enum_norm_vectors(i2, Rational(2), Rational(1)).size() == 8);
  CHECK(enum_norm_vectors(i2, RadicalScalar::root(1, 2, 2), Rational(1, 2)).size() == 4);
}

TEST_CASE("radical scalars") {
  CHECK(RadicalScalar::root(1, 27, 3).is_rational());
  CHECK(RadicalScalar::root(1, 27, 3).rational_value() == 3);
  CHECK_FALSE(RadicalScalar::root(1, 4, 3).is_rational());
  CHECK(RadicalScalar::power(8, Rational(-1, 3)).rational_value() == Rational(1, 2));
  const auto r = RadicalScalar::power(2, Rational(-1, 2));
  CHECK(r.enclose(128).contains(Rational(7071, 10000)) == false);
  CHECK(r.enclose(128).lower() < 0.70710679);
  CHECK(r.enclose(128).upper() > 0.70710678);
  CHECK(within(Rational(1), RadicalScalar::root(1, 2, 2), Rational(1, 2)));
  CHECK_FALSE(within(Rational(1), RadicalScalar::root(1, 2, 2), Rational(2, 5)));
}

TEST_CASE("small instances") {
  const auto i2 = RationalSymMatrix::identity(2);
  const auto s = enum_S(inst(i2, 1, 1));
  CHECK(s.matrices.size() == 8);
  for (const auto& g : s.matrices) {
    CHECK(abs(determinant(g)) == 1);
    CHECK(g.transpose() * g == IntegerMatrix::identity(2));
  }
  CHECK(count_S(inst(i2, 1, 1)) == 8);
  CHECK(count_S(inst(i2, 3, 5)) == 0);
  CHECK(count_S(inst(i2, 7, 7)) == 0);

  const auto i3 = RationalSymMatrix::identity(3);
  const auto s3 = enum_S(inst(i3, 5, 5));
  CHECK(s3.matrices == oracle::naive_solution_set(i3.entries(), 5, 5, 5));
  CHECK(s3.count == s3.matrices.size());
  CHECK(s3.count > 0);
  CHECK(count_S(inst(i3, 5, 5)) == s3.count);
}

TEST_CASE("irrationality short-circuit") {
  const auto s = enum_S(inst(RationalSymMatrix::identity(3), 2, 1));
  CHECK(s.stats.short_circuit);
  CHECK(s.count == 0);
  CHECK(s.stats.nodes == 0);
  CHECK_FALSE(enum_S(inst(RationalSymMatrix::identity(3), 5, 5)).stats.short_circuit);
  const auto t = inst(RationalSymMatrix::identity(3), 2, 1).target_element();
  CHECK(t * t * t == FieldElement(t.spec(), Rational(4)));
}

TEST_CASE("oracle equivalence, n = 2 nested loops") {
  for (const auto& q : {RationalSymMatrix::identity(2), kQ2, sym({{1, 0}, {0, 2}})})
    for (long b : {1, 2, 3, 5, 7, 9, 10, 13}) {
      const auto c = inst(q, 1, b);
      CHECK(enum_S(c).matrices == oracle::nested_loop_solution_set(q.entries(), 1, b, 6));
    }
  CHECK(enum_S(inst(kQ2, 2, 3)).matrices == oracle::nested_loop_solution_set(kQ2.entries(), 2, 3, 5));
}

TEST_CASE("oracle equivalence, n = 3 column triples") {
  const auto i3 = RationalSymMatrix::identity(3);
  for (const auto& [q, a, b, bound] : std::vector<std::tuple<RationalSymMatrix, long, long, long>>{
           {i3, 1, 1, 1}, {i3, 2, 2, 2}, {i3, 3, 3, 3}, {i3, 1, 8, 4}, {kQ3, 1, 1, 2}, {kQ3, 2, 2, 3}, {kQ3, 3, 3, 4}}) {
    const auto s = enum_S(inst(q, a, b));
    CHECK(s.matrices == oracle::naive_solution_set(q.entries(), a, b, bound));
  }
}

TEST_CASE("pruning, threads and determinism do not change the set") {
  const auto i3 = RationalSymMatrix::identity(3);
  for (const auto& c : {inst(i3, 5, 5), inst(kQ3, 3, 3), inst(kQ2, 1, 13)}) {
    const auto base = enum_S(c);
    EnumOptions off;
    off.prune = false;
    const auto unpruned = enum_S(c, off);
    CHECK(unpruned.matrices == base.matrices);
    CHECK(unpruned.stats.nodes >= base.stats.nodes);
    EnumOptions par;
    par.threads = 3;
    const auto threaded = enum_S(c, par);
    CHECK(threaded.matrices == base.matrices);
    CHECK(threaded.stats.nodes == base.stats.nodes);
    const auto again = enum_S(c);
    CHECK(again.matrices == base.matrices);
    CHECK(again.stats.nodes == base.stats.nodes);
    for (const auto& g : base.matrices) CHECK(is_member(c, g));
  }
}

TEST_CASE("budget") {
  EnumOptions o;
  o.budget = 20;
  CHECK_THROWS_AS(enum_S(inst(RationalSymMatrix::identity(3), 5, 5), o), ResourceError);
}

TEST_CASE("finite M against a membership box search") {
  const auto i2 = RationalSymMatrix::identity(2);
  // tol = 1 with rational t = 2.
  const auto c1 = inst(i2, 1, 2, Rational(2));
  CHECK(c1.tolerance().rational_value() == 1);
  CHECK(enum_S(c1).matrices == member_box(c1, 2));
  CHECK_FALSE(enum_S(c1).matrices.empty());
  // tol = sqrt(2).
  const auto c2 = inst(i2, 1, 2, Rational(1));
  CHECK_FALSE(c2.tolerance().is_rational());
  CHECK(enum_S(c2).matrices == member_box(c2, 2));
  // Irrational t = 4^{1/3} with tol = 1.
  const auto c3 = inst(RationalSymMatrix::identity(3), 2, 1, Rational(2));
  CHECK_FALSE(c3.target().is_rational());
  const auto s3 = enum_S(c3);
  CHECK(s3.matrices == member_box(c3, 1));
  CHECK(s3.count > 0);
}

TEST_CASE("first column bound") {
  const auto r = first_column_bound(RationalSymMatrix::identity(3), 5, Rational(1, 2));
  CHECK(r.count == 30);
  CHECK(static_cast<double>(r.count) <= r.envelope);
  CHECK(first_column_bound(RationalSymMatrix::identity(2), 1, Rational(1, 2)).count == 4);
  for (long m = 1; m <= 40; ++m) {
    const auto fc = first_column_bound(kQ2, m, Rational(1, 2));
    CHECK(fc.count == oracle::box_norm_vectors(kQ2.entries(), Rational(m * m), m).size());
    CHECK(static_cast<double>(fc.count) <= fc.envelope);
  }
}
