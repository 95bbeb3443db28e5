#include "supnorm/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

namespace supnorm::oracle {

Integer cofactor_determinant(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntegerMatrix sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        sub(i - 1, cc++) = m(i, j);
      }
    }
    Integer term = m(0, c) * cofactor_determinant(sub);
    if (c % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

namespace {

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

Rational quad_form(const RationalMatrix& q, const IntVector& x, const IntVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += Rational(x[i]) * q(i, j) * Rational(y[j]);
  return s;
}

std::optional<Integer> integral_target(std::size_t n, const Integer& a, const Integer& b) {
  Integer base = a * pow(b, n - 1);
  return exact_root(base * base, n);
}

bool matches(const RationalMatrix& q, const IntegerMatrix& g, const Integer& t, const Integer& b) {
  const std::size_t n = q.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (quad_form(q, g.column(i), g.column(j)) != Rational(t) * q(i, j)) return false;
  return minor_gcd(g, 1) == 1 && minor_gcd(g, 2) == b;
}

}  // namespace

Integer minor_gcd(const IntegerMatrix& m, std::size_t j) {
  std::vector<std::vector<std::size_t>> rs, cs;
  subsets(m.rows(), j, rs);
  subsets(m.cols(), j, cs);
  Integer g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      IntegerMatrix sub(j, j);
      for (std::size_t a = 0; a < j; ++a)
        for (std::size_t b = 0; b < j; ++b) sub(a, b) = m(r[a], c[b]);
      g = gcd(g, cofactor_determinant(sub));
    }
  return g;
}

std::vector<IntVector> box_norm_vectors(const RationalMatrix& q, const Rational& target, long bound) {
  const std::size_t n = q.rows();
  std::vector<IntVector> out;
  IntVector y(n);
  std::vector<long> idx(n, -bound);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) y[i] = idx[i];
    if (quad_form(q, y, y) == target) out.push_back(y);
    std::size_t k = 0;
    while (k < n && idx[k] == bound) idx[k++] = -bound;
    if (k == n) break;
    ++idx[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::map<Rational, std::vector<IntVector>> box_norm_table(const RationalMatrix& q, long bound) {
  const std::size_t n = q.rows();
  std::map<Rational, std::vector<IntVector>> out;
  IntVector y(n);
  std::vector<long> idx(n, -bound);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) y[i] = idx[i];
    out[quad_form(q, y, y)].push_back(y);
    std::size_t k = 0;
    while (k < n && idx[k] == bound) idx[k++] = -bound;
    if (k == n) break;
    ++idx[k];
  }
  for (auto& [v, ys] : out) std::sort(ys.begin(), ys.end());
  return out;
}

std::vector<IntegerMatrix> naive_solution_set(const RationalMatrix& q, const Integer& a, const Integer& b,
                                              long bound) {
  const std::size_t n = q.rows();
  auto t = integral_target(n, a, b);
  if (!t) return {};
  std::vector<std::vector<IntVector>> cands(n);
  for (std::size_t j = 0; j < n; ++j) cands[j] = box_norm_vectors(q, Rational(*t) * q(j, j), bound);
  std::vector<IntegerMatrix> out;
  IntegerMatrix g(n, n);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      if (matches(q, g, *t, b)) out.push_back(g);
      return;
    }
    for (const auto& c : cands[j]) {
      for (std::size_t i = 0; i < n; ++i) g(i, j) = c[i];
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<IntegerMatrix> nested_loop_solution_set(const RationalMatrix& q, const Integer& a, const Integer& b,
                                                    long bound) {
  const std::size_t n = q.rows();
  auto t = integral_target(n, a, b);
  if (!t) return {};
  std::vector<IntegerMatrix> out;
  std::vector<long> idx(n * n, -bound);
  IntegerMatrix g(n, n);
  for (;;) {
    for (std::size_t k = 0; k < n * n; ++k) g(k / n, k % n) = idx[k];
    if (matches(q, g, *t, b)) out.push_back(g);
    std::size_t k = 0;
    while (k < n * n && idx[k] == bound) idx[k++] = -bound;
    if (k == n * n) break;
    ++idx[k];
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<IntegerMatrix> pruned_solution_set(const RationalMatrix& q, const Integer& a, const Integer& b,
                                               const std::vector<long>& bound) {
  const std::size_t n = q.rows();
  auto t = integral_target(n, a, b);
  if (!t) return {};
  Integer den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) den = lcm(den, q(i, j).get_den());
  std::vector<std::vector<long>> w(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i][j] = Integer(q(i, j) * den).get_si();
  auto form = [&](const std::vector<long>& x, const std::vector<long>& y) {
    __int128 s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += static_cast<__int128>(x[i]) * w[i][j] * y[j];
    return s;
  };
  const __int128 tt = static_cast<__int128>(t->get_si());
  // Candidate j-th columns: x^T (den Q) x = t (den Q)_jj.
  std::vector<std::vector<std::vector<long>>> cands(n);
  std::vector<long> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = -bound[i];
  for (;;) {
    const __int128 v = form(y, y);
    for (std::size_t j = 0; j < n; ++j)
      if (v == tt * w[j][j]) cands[j].push_back(y);
    std::size_t k = 0;
    while (k < n && y[k] == bound[k]) {
      y[k] = -bound[k];
      ++k;
    }
    if (k == n) break;
    ++y[k];
  }
  std::vector<IntegerMatrix> out;
  std::vector<const std::vector<long>*> cols(n);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      IntegerMatrix g(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) g(r, c) = (*cols[c])[r];
      if (minor_gcd(g, 1) == 1 && (n < 2 || minor_gcd(g, 2) == b)) out.push_back(g);
      return;
    }
    for (const auto& c : cands[j]) {
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) ok = form(*cols[i], c) == tt * w[i][j];
      if (!ok) continue;
      cols[j] = &c;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

bool is_square_mod(const Integer& a, long p) {
  Integer r = mod(a, Integer(p));
  for (long x = 0; x < p; ++x)
    if (Integer(x) * x % p == r) return true;
  return false;
}

bool trial_division_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

double vonmangoldt_direct(long lo, long hi, long m, long a) {
  double s = 0;
  for (long k = std::max(lo, 2L); k <= hi; ++k) {
    if (((k - a) % m + m) % m != 0) continue;
    // k is a prime power iff its smallest prime factor exhausts it.
    long p = 2;
    while (p * p <= k && k % p != 0) ++p;
    if (p * p > k) p = k;
    long r = k;
    while (r % p == 0) r /= p;
    if (r == 1) s += std::log(static_cast<double>(p));
  }
  return s;
}

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    long c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
  }
  return u;
}

}  // namespace supnorm::oracle
