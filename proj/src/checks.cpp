#include "supnorm/checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "supnorm/bound.hpp"
#include "supnorm/congruence.hpp"
#include "supnorm/json_io.hpp"
#include "supnorm/oracles.hpp"
#include "supnorm/recursion.hpp"

namespace supnorm::checks {

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Counts trials and keeps the first failure message.
class Tally {
 public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++trials_;
    if (ok) return;
    ++failures_;
    if (first_.empty()) first_ = what();
  }
  std::uint64_t trials() const { return trials_; }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << "; " << (trials_ - failures_) << "/" << trials_ << " agree";
    if (failures_) s << "; first failure: " << first_;
    return {failures_ == 0 && trials_ > 0, s.str()};
  }

 private:
  std::uint64_t trials_ = 0;
  std::uint64_t failures_ = 0;
  std::string first_;
};

RationalSymMatrix sym(std::vector<std::vector<Rational>> rows) {
  return RationalSymMatrix::make(RationalMatrix::from_rows(rows));
}

CountingInstance instance(const RationalSymMatrix& q, const Integer& a, const Integer& b) {
  CountingInstance c;
  c.q = q;
  c.a = a;
  c.b = b;
  return c;
}

std::string join(const std::vector<Integer>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + "]";
}

// |y_i| <= sqrt(value * (Q^{-1})_ii) whenever y^T Q y = value.
std::vector<long> coordinate_bounds(const RationalSymMatrix& q, const Rational& value) {
  const std::size_t n = q.n();
  const Rational det = determinant(q.entries());
  std::vector<long> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalMatrix minor(n - 1, n - 1);
    for (std::size_t r = 0, rr = 0; r < n; ++r) {
      if (r == i) continue;
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c == i) continue;
        minor(rr, cc++) = q(r, c);
      }
      ++rr;
    }
    const Rational inv_ii = n == 1 ? Rational(1) / det : determinant(minor) / det;
    out[i] = isqrt(floor(value * inv_ii) + 1).get_si() + 1;
  }
  return out;
}

// Largest column target t Q_jj over j, for box bounds covering every column.
std::vector<long> solution_bounds(const RationalSymMatrix& q, const Integer& t) {
  Rational m = 0;
  for (std::size_t j = 0; j < q.n(); ++j) m = std::max(m, Rational(Rational(t) * q(j, j)));
  return coordinate_bounds(q, m);
}

Outcome check_detdiv(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally t;
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + k % 3;
    const auto g = oracle::random_matrix(rng, n, -20, 20);
    const auto d = determinantal_divisors(g);
    for (std::size_t j = 1; j <= n; ++j) {
      const Integer o = oracle::minor_gcd(g, j);
      t.check(d[j - 1] == o, [&] { return "matrix " + std::to_string(k) + ", j = " + std::to_string(j); });
    }
  }
  return t.outcome("500 matrices, n in {2,3,4}");
}

Outcome check_inner(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto primes = primes_in(2, 97);
  std::uniform_int_distribution<long> d(-50, 50);
  Tally t;
  for (int k = 0; k < 1000; ++k) {
    const Integer p = static_cast<unsigned long>(primes[rng() % primes.size()]);
    const unsigned long rho = 1 + rng() % 3;
    const Integer m = pow(p, rho);
    const std::size_t n = 2 + rng() % 3;
    IntVector x(n), y(n);
    for (auto& v : x) v = d(rng);
    if (mod(x[0], p) == 0) x[0] += 1;
    Integer a = mod(Integer(d(rng)), m);
    if (mod(a, p) == 0) a += 1;
    for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + m * d(rng);
    IntegerMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) A(i, j) = A(j, i) = d(rng);
    // verify_inner_congruence evaluates both lifts a and a + p^rho.
    bool ok = false;
    try {
      ok = verify_inner_congruence(x, y, A, p, rho);
    } catch (const Error&) {
      ok = false;
    }
    t.check(ok, [&] { return "case " + std::to_string(k) + " p = " + to_string(p); });
  }
  return t.outcome("1000 constructed cases, p <= 97, rho <= 3, two lifts each");
}

Outcome check_count_envelope(std::uint64_t) {
  Tally t;
  std::uint64_t max_count = 0;
  for (const auto& q : {RationalSymMatrix::identity(2), RationalSymMatrix::identity(3), sym({{2, 1}, {1, 3}})}) {
    const auto bounds = coordinate_bounds(q, 1600);
    long bound = *std::max_element(bounds.begin(), bounds.end());
    const auto table = oracle::box_norm_table(q.entries(), bound);
    for (long m = 1; m <= 40; ++m) {
      const Rational target(m * m);
      const auto lib = enum_norm_vectors(q, target, Rational(0));
      const auto it = table.find(target);
      const auto& ref = it == table.end() ? std::vector<IntVector>{} : it->second;
      const auto cb = first_column_bound(q, m, Rational(1, 2), 100);
      const double env = 100 * std::pow(static_cast<double>(m), static_cast<double>(q.n()) - 1.5);
      max_count = std::max<std::uint64_t>(max_count, lib.size());
      t.check(lib == ref && cb.count == lib.size() && static_cast<double>(cb.count) <= env, [&] {
        return "n = " + std::to_string(q.n()) + ", m = " + std::to_string(m) + ": " + std::to_string(lib.size()) +
               " vs oracle " + std::to_string(ref.size());
      });
    }
  }
  return t.outcome("3 forms, m <= 40, largest count " + std::to_string(max_count));
}

RationalSymMatrix near_identity(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-2, 2);
  for (;;) {
    RationalMatrix m = RationalMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const Rational e = frac(d(rng), 64);
        m(i, j) += e;
        if (i != j) m(j, i) = m(i, j);
      }
    if (is_positive_definite(m)) return RationalSymMatrix::make(m);
  }
}

Outcome check_case1(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ExchangeOptions o;
  o.reenumerate = false;
  const auto ex = exchange_lemma(near_identity(rng, 3), {{1, 1, 1}}, std::nullopt, o);
  if (!ex.q_prime.rational) return {false, "toy exchange produced an irrational Q'"};
  const auto q = RationalSymMatrix::make(*ex.q_prime.rational);
  const auto primes = primes_in(3, 60);
  std::vector<std::pair<Integer, Integer>> pairs;
  while (pairs.size() < 20) {
    const Integer p = static_cast<unsigned long>(primes[rng() % primes.size()]);
    const Integer r = static_cast<unsigned long>(primes[rng() % primes.size()]);
    if (p == r || std::find(pairs.begin(), pairs.end(), std::make_pair(p, r)) != pairs.end()) continue;
    pairs.emplace_back(p, r);
  }
  Tally t;
  for (const auto& [p, r] : pairs) {
    const auto c = instance(q, r, p);
    const auto s = enum_S(c);
    // Second certificate: the pruned column search for every diagonal target is empty.
    bool empty_columns = true;
    for (std::size_t j = 0; j < 3; ++j)
      empty_columns = empty_columns && enum_norm_vectors(q, c.target() * q(j, j), Rational(0)).empty();
    t.check(s.count == 0 && s.stats.short_circuit && empty_columns,
            [&] { return "(p, q) = (" + to_string(p) + ", " + to_string(r) + ")"; });
  }
  return t.outcome("Q' with den " + to_string(q.den()) + " from a toy exchange, 20 pairs p != q");
}

Outcome check_empty(std::uint64_t) {
  const auto q = RationalSymMatrix::identity(3);
  Tally t;
  std::ostringstream counts;
  for (const auto& [p, r] : std::vector<std::pair<long, long>>{{3, 7}, {7, 3}, {3, 11}}) {
    const bool good = is_q_good(p, q) && is_q_good(r, q) && p % 4 == 3 && r % 4 == 3;
    const auto c = instance(q, pow(Integer(r), 3), pow(Integer(p), 3));
    const auto lib = enum_S(c).matrices;
    const Integer target = pow(Integer(r), 2) * pow(Integer(p), 4);
    const auto ref = oracle::pruned_solution_set(q.entries(), c.a, c.b, solution_bounds(q, target));
    const double env = empty_envelope(3, p, r, 3, 1);
    counts << " (" << p << "," << r << "): " << lib.size();
    t.check(good && lib == ref && static_cast<double>(lib.size()) <= env, [&] {
      return "(" + std::to_string(p) + ", " + std::to_string(r) + "): " + std::to_string(lib.size()) + " vs oracle " +
             std::to_string(ref.size());
    });
  }
  return t.outcome("nu = 3, Q = I, counts" + counts.str());
}

Outcome check_count1(std::uint64_t) {
  const auto i3 = RationalSymMatrix::identity(3);
  const auto half = sym({{1, Rational(1, 2), 0}, {Rational(1, 2), 1, 0}, {0, 0, 1}});
  Tally t;
  std::ostringstream counts;
  std::uint64_t witness_count = 0;
  for (const auto& q : {i3, half})
    for (long p : {3L, 5L}) {
      const auto c = instance(q, p, p);
      const auto lib = enum_S(c).matrices;
      const auto ref = oracle::pruned_solution_set(q.entries(), p, p, solution_bounds(q, Integer(p * p)));
      const double env = count1_envelope(3, q.den(), p, 1, 100);
      if (q == i3 && p == 5) witness_count = lib.size();
      counts << " (den " << q.den().get_si() << ", p " << p << "): " << lib.size();
      t.check(lib == ref && static_cast<double>(lib.size()) <= env, [&] {
        return "den " + to_string(q.den()) + ", p = " + std::to_string(p) + ": " + std::to_string(lib.size()) +
               " vs oracle " + std::to_string(ref.size());
      });
    }
  const auto w = IntegerMatrix::from_rows(std::vector<std::vector<Integer>>{{3, -4, 0}, {4, 3, 0}, {0, 0, 5}});
  const bool member = is_member(instance(i3, 5, 5), w);
  t.check(witness_count > 0, [] { return std::string("count for p = 5, Q = I is zero"); });
  return t.outcome("counts" + counts.str() + "; witness with divisors " + join(determinantal_divisors(w)) +
                   (member ? " is a member" : " is removed by the divisor filter"));
}

Outcome check_exchange(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally t;
  std::uint64_t checked = 0;
  for (int run = 0; run < 10; ++run) {
    const std::size_t n = 2 + run % 2;
    const long L = 2 + static_cast<long>(rng() % 4);
    const auto window = primes_in(L, 2 * L);
    std::vector<PrimePair> pairs;
    const std::size_t count = 1 + rng() % 2;
    for (std::size_t k = 0; k < count; ++k) {
      const unsigned long p = window[rng() % window.size()];
      const unsigned long r = rng() % 2 ? p : window[rng() % window.size()];
      pairs.push_back({p, r, 1});
    }
    const auto q = rng() % 2 ? RationalSymMatrix::identity(n) : near_identity(rng, n);
    ExchangeOptions o;
    o.L = L;
    o.D = 1;
    try {
      const auto res = exchange_lemma(q, pairs, std::nullopt, o);
      std::uint64_t violations = 0, members = 0;
      for (std::size_t i = 0; i < res.pairs.size(); ++i)
        for (const auto& g : res.solutions[i].matrices) {
          ++members;
          if (!is_exact_member(res.q_prime.entries, res.pairs[i], g)) ++violations;
        }
      checked += members;
      t.check(violations == 0 && res.verified == members, [&] {
        return "run " + std::to_string(run) + ": " + std::to_string(violations) + " violations";
      });
    } catch (const Error& e) {
      t.check(false, [&] { return "run " + std::to_string(run) + ": " + e.what(); });
    }
  }
  return t.outcome("10 runs, n in {2,3}, L <= 5, " + std::to_string(checked) + " gamma re-checked against Q'");
}

FieldElement random_integral(std::mt19937_64& rng, const FieldSpecPtr& spec) {
  std::uniform_int_distribution<long> num(-9, 9);
  for (;;) {
    std::vector<Rational> c(spec->dimension());
    for (auto& x : c) x = num(rng);
    FieldElement e(spec, c);
    if (!e.is_zero()) return e;
  }
}

Outcome check_number_field(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally t;
  const Rational A = 2;
  for (const auto& k : {RadicalFieldSpec::make(3, {2}), RadicalFieldSpec::make(3, {2, 3})}) {
    const Rational deg(k->galois_degree_bound());
    std::vector<FieldElement> pool;
    for (int i = 0; i < 200; ++i) pool.push_back(random_integral(rng, k));
    for (std::size_t i = 0; i + 3 < pool.size(); i += 4) {
      const auto &a = pool[i], &b = pool[i + 1], &c = pool[i + 2], &d = pool[i + 3];
      Rational alpha = 1;
      for (const auto* x : {&a, &b, &c, &d}) alpha = std::max(alpha, Rational(well_balanced_exponent(*x, A)));
      const bool base = is_well_balanced(FieldFraction{a, b}, alpha, A).valid &&
                        is_well_balanced(FieldFraction{c, d}, alpha, A).valid;
      const bool prod = is_well_balanced(FieldFraction{a * c, b * d}, 2 * alpha, A).valid;
      const auto sum = a * d + b * c;
      const bool add = sum.is_zero() || is_well_balanced(FieldFraction{sum, b * d}, (2 * alpha + 1) * deg, A).valid;
      t.check(base && prod && add, [&] { return "closure, field of dimension " + std::to_string(k->dimension()); });
    }
    for (int it = 0; it < 5; ++it) {
      std::vector<KVector> rows(2);
      for (auto& row : rows)
        for (int j = 0; j < 4; ++j) row.push_back(random_integral(rng, k));
      const auto kb = kernel_basis_bounded(rows, 4, k);
      bool ok = kb.vectors.size() == 4 - rank(rows);
      for (const auto& v : kb.vectors)
        for (const auto& row : rows) ok = ok && inner(row, v).is_zero();
      t.check(ok, [] { return std::string("kernel basis does not annihilate"); });
    }
    for (int it = 0; it < 5; ++it) {
      std::uniform_int_distribution<long> d(-20, 20);
      std::vector<KVector> gens(2);
      for (auto& g : gens)
        for (int j = 0; j < 3; ++j) g.push_back(random_integral(rng, k));
      const std::vector<Rational> v{d(rng), d(rng), d(rng)};
      const auto lo = distance_to_subspace(v, gens, 128), hi = distance_to_subspace(v, gens, 256);
      t.check(lo.distance.contains(hi.distance) && hi.distance.width() <= lo.distance.width(),
              [] { return std::string("distance intervals at 128 and 256 bits are not nested"); });
    }
  }
  return t.outcome("Q(2^(1/3)) and Q(2^(1/3), 3^(1/3)), 200 elements each");
}

Outcome check_residues(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> off(-4, 4), diag(5, 14), den(1, 12);
  const auto primes = primes_in(2, 10000);
  Tally t;
  int forms = 0;
  while (forms < 20) {
    const std::size_t n = 2 + forms % 3;
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = frac(diag(rng), den(rng));
      for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = frac(off(rng), den(rng));
    }
    if (!is_positive_definite(m)) continue;
    ++forms;
    const auto q = RationalSymMatrix::make(m);
    const auto rs = residue_system(q);
    std::uint64_t mismatches = 0;
    for (auto p : primes)
      if (rs.contains(p) != is_q_good(p, q)) ++mismatches;
    t.check(mismatches == 0, [&] { return "form " + std::to_string(forms) + ": " + std::to_string(mismatches); });
  }
  const auto id = residue_system(RationalSymMatrix::identity(2));
  bool ok = id.modulus() == 4 && id.allowed() && *id.allowed() == std::vector<std::uint64_t>{3};
  for (auto p : primes) ok = ok && id.contains(p) == (p % 4 == 3);
  t.check(ok, [] { return std::string("Q' = I does not give p = 3 mod 4"); });
  return t.outcome("20 forms with den <= 12, primes <= 10^4, plus Q' = I");
}

Outcome check_linnik(std::uint64_t) {
  Tally t;
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 1; m <= 25; ++m) {
    const std::uint64_t x = std::max<std::uint64_t>(m * m * m, 10000);
    for (std::uint64_t a = 0; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      const auto s = vonmangoldt_ap_sum(Rational(static_cast<unsigned long>(x)), m, a);
      const double ratio = s.lower() / (static_cast<double>(x) / std::pow(static_cast<double>(m), 1.5));
      worst = std::min(worst, ratio);
      t.check(ratio >= 0.1, [&] { return "m = " + std::to_string(m) + ", a = " + std::to_string(a); });
    }
  }
  std::ostringstream s;
  s << "empirical, ineffective constant; m <= 25, smallest ratio " << worst;
  return t.outcome(s.str());
}

Outcome check_recursion(std::uint64_t) {
  Tally t;
  struct Toy {
    std::size_t n;
    long L;
    std::vector<unsigned> nus;
    std::uint64_t cap;
  };
  for (const auto& toy : {Toy{2, 3, {1, 2}, 20}, Toy{3, 5, {1}, 10}}) {
    RecursionParams p;
    p.L = toy.L;
    p.nus = toy.nus;
    p.prime_cap = toy.cap;
    const auto q = RationalSymMatrix::identity(toy.n);
    const auto cert = proposition_driver(q, p);
    const auto again = proposition_driver(q, p);
    const std::string label = "n = " + std::to_string(toy.n);
    t.check(io::to_json(cert).dump() == io::to_json(again).dump(),
            [&] { return label + ": certificate differs between runs"; });
    for (const Chain* c : {&cert.outer, &cert.inner}) {
      for (std::size_t j = 1; j < c->levels.size(); ++j)
        t.check(subspace_contained(c->levels[j].exchange.h, c->levels[j - 1].exchange.h),
                [&] { return label + ": H_" + std::to_string(j) + " not contained in its predecessor"; });
      t.check(c->stable < sym_dim(toy.n), [&] { return label + ": stabilization index too large"; });
    }
  }
  return t.outcome("toy drivers n = 2 and n = 3");
}

Outcome check_delta(std::uint64_t) {
  Tally t;
  std::string smallest;
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto d = delta_calculator(n);
    t.check(d.delta > 0 && d.gain == d.loss && d.eta > 0, [&] { return "n = " + std::to_string(n); });
    if (n == 8) smallest = "delta(8) has " + std::to_string(mpz_sizeinbase(d.delta.get_den().get_mpz_t(), 10)) +
                           "-digit denominator";
  }
  return t.outcome("n = 2..8 at minimal legal parameters; " + smallest);
}

Outcome check_spectral(std::uint64_t) {
  Tally t;
  t.check(laplace_eigenvalue(SpectralParameters{{0, 0}}) == Rational(1, 4),
          [] { return std::string("eigenvalue at mu = 0"); });
  t.check(convexity_exponent(2) == Rational(1, 4), [] { return std::string("convexity exponent"); });
  return t.outcome("lambda(mu = 0) = 1/4, exponent n(n-1)/8 = 1/4 for n = 2");
}

using Runner = Outcome (*)(std::uint64_t);

struct Entry {
  CheckInfo info;
  Runner run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {{1, "determinantal divisors vs minor gcd", "matrix_core", 10}, check_detdiv},
      {{2, "inner congruence on constructed pairs", "congruence", 5}, check_inner},
      {{3, "norm vector counts and envelope", "lattice_enum", 30}, check_count_envelope},
      {{4, "irrational target gives empty sets", "lattice_enum", 60}, check_case1},
      {{5, "nu = 3 counts vs pruned oracle and envelope", "lattice_enum", 600}, check_empty},
      {{6, "p = q counts vs oracle and envelope", "lattice_enum", 300}, check_count1},
      {{7, "exchange containment", "exchange", 300}, check_exchange},
      {{8, "number field closure, kernels, precision", "number_field", 60}, check_number_field},
      {{9, "residue systems vs direct goodness", "primes", 30}, check_residues},
      {{10, "primes in progressions (empirical)", "primes", 60}, check_linnik},
      {{11, "recursion chains and reproducibility", "recursion", 600}, check_recursion},
      {{12, "delta positivity", "bound", 1}, check_delta},
      {{13, "spectral formulas", "bound", 1}, check_spectral},
  };
  return e;
}

}  // namespace

const std::vector<CheckInfo>& catalog() {
  static const std::vector<CheckInfo> c = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return c;
}

CheckResult run(int id, std::uint64_t seed) {
  for (const auto& e : entries()) {
    if (e.info.id != id) continue;
    CheckResult r;
    r.info = e.info;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto o = e.run(seed);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > e.info.time_limit) {
      r.passed = false;
      r.detail += "; exceeded the time limit";
    }
    return r;
  }
  throw DomainError("unknown check id " + std::to_string(id));
}

std::vector<CheckResult> run_all(const std::string& module, std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (const auto& e : entries())
    if (module.empty() || e.info.module == module) out.push_back(run(e.info.id, seed));
  return out;
}

}  // namespace supnorm::checks
