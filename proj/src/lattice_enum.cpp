#include "supnorm/lattice_enum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

namespace supnorm {

using i128 = __int128;

RadicalScalar RadicalScalar::root(const Rational& coeff, const Integer& x, unsigned long k) {
  if (x <= 0 || k == 0) throw DomainError("radical of a non-positive integer");
  RadicalScalar r;
  if (coeff == 0) return r;
  if (auto e = exact_root(x, k)) {
    r.coeff_ = coeff * Rational(*e);
    return r;
  }
  r.coeff_ = coeff;
  r.radicand_ = x;
  r.root_ = k;
  return r;
}

RadicalScalar RadicalScalar::power(const Integer& x, const Rational& e) {
  if (x <= 0) throw DomainError("power of a non-positive integer");
  const Integer u = abs(e.get_num()), v = e.get_den();
  if (!u.fits_ulong_p() || !v.fits_ulong_p() ||
      static_cast<double>(mpz_sizeinbase(x.get_mpz_t(), 2)) * u.get_d() * v.get_d() > 4e6)
    throw ResourceError("exponent too large for exact radical representation");
  const Integer c = pow(x, u.get_ui());
  if (e >= 0) return root(1, c, v.get_ui());
  return root(Rational(1) / Rational(c), pow(c, v.get_ui() - 1), v.get_ui());
}

Rational RadicalScalar::rational_value() const {
  if (!is_rational()) throw DomainError("radical scalar is irrational");
  return coeff_;
}

RadicalScalar RadicalScalar::operator*(const Rational& q) const {
  RadicalScalar r = *this;
  r.coeff_ *= q;
  if (r.coeff_ == 0) return RadicalScalar();
  return r;
}

Interval RadicalScalar::enclose(mpfr_prec_t prec) const {
  const Interval c = Interval::point(coeff_, prec);
  if (is_rational()) return c;
  return c * Interval::point(Rational(radicand_), prec).pow(frac(1, root_));
}

Rational RadicalScalar::upper_bound() const {
  if (is_rational()) return coeff_;
  return enclose(kStartPrecision).upper_rational();
}

std::string RadicalScalar::to_string() const {
  if (is_rational()) return supnorm::to_string(coeff_);
  return supnorm::to_string(coeff_) + "*" + supnorm::to_string(radicand_) + "^(1/" + std::to_string(root_) + ")";
}

bool within(const Rational& x, const RadicalScalar& center, const RadicalScalar& radius) {
  if (center.is_rational() && radius.is_rational())
    return abs(x - center.rational_value()) <= radius.rational_value();
  return certified_within(
      x, [&](mpfr_prec_t p) { return center.enclose(p); }, [&](mpfr_prec_t p) { return radius.enclose(p); });
}

Integer CountingInstance::base() const { return a * pow(b, n() - 1); }

RadicalScalar CountingInstance::target() const {
  const Integer x = base();
  return RadicalScalar::root(1, x * x, n());
}

RadicalScalar CountingInstance::tolerance() const {
  if (!M) return RadicalScalar();
  return RadicalScalar::power(base(), (2 - *M) / Rational(n())) * error_constant;
}

FieldElement CountingInstance::target_element() const {
  const RadicalScalar t = target();
  if (t.is_rational()) return FieldElement(RadicalFieldSpec::rationals(), t.rational_value());
  const Integer c = t.radicand();
  unsigned long g = 0;
  for (const auto& [p, e] : factorize(c)) g = std::gcd(g, e);
  const unsigned long d = std::gcd(g, static_cast<unsigned long>(n()));
  const auto spec = RadicalFieldSpec::make(static_cast<unsigned>(n() / d), {Rational(*exact_root(c, d))});
  return FieldElement::generator(spec, 0);
}

void CountingInstance::validate() const {
  if (n() < 2) throw DomainError("counting instances need n >= 2");
  if (a < 1 || b < 1) throw DomainError("a and b must be positive integers");
  if (M && *M <= 0) throw DomainError("M must be positive");
  if (error_constant <= 0) throw DomainError("error constant must be positive");
}

namespace {

// Fincke-Pohst coefficients: y^T Q y = sum_i d_i (y_i + sum_{j>i} mu_ij y_j)^2.
struct PohstForm {
  std::vector<Rational> d;
  RationalMatrix mu;
};

PohstForm pohst_form(const RationalSymMatrix& q) {
  const std::size_t n = q.n();
  RationalMatrix a = q.entries();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      a(j, i) = a(i, j);
      a(i, j) /= a(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) a(k, l) -= a(k, i) * a(i, l);
  }
  PohstForm f{std::vector<Rational>(n), RationalMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    f.d[i] = a(i, i);
    for (std::size_t j = i + 1; j < n; ++j) f.mu(i, j) = a(i, j);
  }
  return f;
}

// Integer range {y : (y + c)^2 <= x}; empty when lo > hi.
std::pair<Integer, Integer> integer_range(const Rational& c, const Rational& x) {
  if (x < 0) return {1, 0};
  const Integer s = isqrt(floor(x));
  auto fits = [&](const Integer& y) {
    const Rational u = Rational(y) + c;
    return u * u <= x;
  };
  Integer lo = floor(-c) - s - 1, hi = ceil(-c) + s + 1;
  while (lo <= hi && !fits(lo)) ++lo;
  while (hi >= lo && !fits(hi)) --hi;
  return {lo, hi};
}

Rational quadratic(const RationalSymMatrix& q, const IntVector& x, const IntVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += Rational(x[i] * y[j]) * q(i, j);
  return s;
}

// Floating-point descent with widened ranges and an exact test at each leaf.
// Used when the bound and the integral form fit comfortably in doubles.
std::optional<std::vector<IntVector>> enum_norm_vectors_fast(const RationalSymMatrix& q, const PohstForm& form,
                                                            const RadicalScalar& target, const RadicalScalar& tol,
                                                            const Rational& bound, std::uint64_t budget) {
  const std::size_t n = q.n();
  if (bound > Rational(Integer(1) << 50)) return std::nullopt;
  const IntegerMatrix qt = q.integral();
  std::vector<std::vector<long long>> qi(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (abs(qt(i, j)) >= Integer(1) << 40) return std::nullopt;
      qi[i][j] = qt(i, j).get_si();
    }
  const Integer den = q.den();
  std::vector<double> d(n);
  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = form.d[i].get_d();
    for (std::size_t j = i + 1; j < n; ++j) mu[i][j] = form.mu(i, j).get_d();
  }
  const double slack = 1e-9;
  const double t_d = target.upper_bound().get_d(), tol_d = tol.upper_bound().get_d();
  std::vector<long long> y(n, 0), hi(n, 0);
  std::vector<double> c(n, 0), remaining(n + 1, 0);
  remaining[n] = bound.get_d() * (1 + slack) + slack;
  std::vector<IntVector> out;
  std::uint64_t nodes = 0;

  auto open = [&](std::size_t i) {
    double ci = 0;
    for (std::size_t j = i + 1; j < n; ++j) ci += mu[i][j] * static_cast<double>(y[j]);
    c[i] = ci;
    double x = remaining[i + 1] / d[i];
    const double tolx = slack * (remaining[n] / d[i] + 1);
    if (x < -tolx) {
      y[i] = 1;
      hi[i] = 0;
      return;
    }
    const double r = std::sqrt(std::max(x, 0.0) * (1 + slack) + tolx);
    const double lo = std::ceil(-ci - r), h = std::floor(-ci + r);
    if (std::fabs(lo) > kMaxEntry || std::fabs(h) > kMaxEntry)
      throw ResourceError("norm-vector search box exceeds entry bound");
    y[i] = static_cast<long long>(lo);
    hi[i] = static_cast<long long>(h);
  };
  std::size_t level = n - 1;
  open(level);
  for (;;) {
    if (y[level] > hi[level]) {
      if (level == n - 1) break;
      ++level;
      ++y[level];
      continue;
    }
    if (++nodes > budget) throw ResourceError("norm-vector enumeration exceeded node budget");
    const double u = static_cast<double>(y[level]) + c[level];
    remaining[level] = remaining[level + 1] - d[level] * u * u;
    if (level == 0) {
      i128 v = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v += static_cast<i128>(qi[i][j]) * y[i] * y[j];
      const double vd = static_cast<double>(v) / den.get_d();
      if (std::fabs(vd - t_d) <= tol_d * (1 + slack) + 1e-6 * std::max(1.0, t_d)) {
        IntVector w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<long>(y[i]);
        Rational exact = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) exact += Rational(w[i] * w[j]) * q(i, j);
        if (within(exact, target, tol)) out.push_back(std::move(w));
      }
      ++y[0];
      continue;
    }
    --level;
    open(level);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<IntVector> enum_norm_vectors(const RationalSymMatrix& q, const RadicalScalar& target,
                                         const RadicalScalar& tol, std::uint64_t budget) {
  if (target.coeff() <= 0) throw DomainError("target must be positive");
  if (tol.coeff() < 0) throw DomainError("tolerance must be nonnegative");
  const std::size_t n = q.n();
  const auto form = pohst_form(q);
  const Rational bound = target.upper_bound() + tol.upper_bound();
  if (auto fast = enum_norm_vectors_fast(q, form, target, tol, bound, budget)) return *fast;
  std::vector<IntVector> out;
  IntVector y(n);
  std::vector<Rational> remaining(n + 1);
  std::vector<Integer> hi(n);
  remaining[n] = bound;
  std::uint64_t nodes = 0;

  // Iterative descent from coordinate n-1 to 0.
  std::size_t level = n;
  auto open = [&](std::size_t i) {
    Rational c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c += form.mu(i, j) * Rational(y[j]);
    auto [lo, h] = integer_range(c, remaining[i + 1] / form.d[i]);
    if (abs(lo) > kMaxEntry || abs(h) > kMaxEntry) throw ResourceError("norm-vector search box exceeds entry bound");
    y[i] = lo;
    hi[i] = h;
  };
  auto settle = [&](std::size_t i) {
    Rational c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c += form.mu(i, j) * Rational(y[j]);
    const Rational u = Rational(y[i]) + c;
    remaining[i] = remaining[i + 1] - form.d[i] * u * u;
  };
  level = n - 1;
  open(level);
  for (;;) {
    if (y[level] > hi[level]) {
      if (level == n - 1) break;
      ++level;
      ++y[level];
      continue;
    }
    if (++nodes > budget) throw ResourceError("norm-vector enumeration exceeded node budget");
    settle(level);
    if (level == 0) {
      if (within(quadratic(q, y, y), target, tol)) out.push_back(y);
      ++y[0];
      continue;
    }
    --level;
    open(level);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Search {
  const CountingInstance& inst;
  const EnumOptions& opt;
  std::size_t n;
  bool exact;
  i128 t = 0;
  long long bmod = 1;
  std::vector<std::vector<long long>> qt;  // den * Q
  Integer den;
  RadicalScalar target, tol;
  std::vector<std::size_t> order;                            // column assignment order
  std::vector<std::vector<std::vector<long long>>> cands;    // per original column
  std::atomic<std::uint64_t> nodes{0};

  i128 pair(const std::vector<long long>& x, const std::vector<long long>& y) const {
    i128 s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      i128 row = 0;
      for (std::size_t j = 0; j < n; ++j) row += static_cast<i128>(qt[i][j]) * y[j];
      s += row * x[i];
    }
    return s;
  }

  static Integer to_integer(i128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer r = static_cast<unsigned long>(u >> 64);
    r <<= 64;
    r += static_cast<unsigned long>(u & ~0UL);
    return neg ? Integer(-r) : r;
  }

  bool pairwise_ok(std::size_t ci, const std::vector<long long>& x, std::size_t cj,
                   const std::vector<long long>& y) const {
    const i128 v = pair(x, y);
    if (exact) return v == t * qt[ci][cj];
    return within(frac(to_integer(v), den), target * inst.q(ci, cj), tol);
  }

  bool minors_ok(const std::vector<long long>& x, const std::vector<long long>& y) const {
    if (bmod == 1) return true;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = r + 1; s < n; ++s) {
        const i128 m = static_cast<i128>(x[r]) * y[s] - static_cast<i128>(x[s]) * y[r];
        if (m % bmod != 0) return false;
      }
    return true;
  }

  // Direct gcd checks on a complete assignment.
  bool finish(const std::vector<const std::vector<long long>*>& cols, EnumStats& st) const {
    long long g1 = 0;
    for (const auto* c : cols)
      for (long long v : *c) g1 = std::gcd(g1, v);
    if (g1 != 1) {
      ++st.rejected_delta1;
      return false;
    }
    Integer g2 = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t s = r + 1; s < n; ++s)
            g2 = gcd(g2, to_integer(static_cast<i128>((*cols[i])[r]) * (*cols[j])[s] -
                                    static_cast<i128>((*cols[i])[s]) * (*cols[j])[r]));
    if (g2 != inst.b) {
      ++st.rejected_delta2;
      return false;
    }
    return true;
  }

  void run(std::size_t first_lo, std::size_t first_step, std::vector<IntegerMatrix>& out, std::uint64_t& count,
           EnumStats& st) {
    std::vector<const std::vector<long long>*> cols(n, nullptr);
    std::vector<std::size_t> idx(n, 0);
    std::size_t level = 0;
    idx[0] = first_lo;
    for (;;) {
      const std::size_t col = order[level];
      const auto& list = cands[col];
      const std::size_t step = level == 0 ? first_step : 1;
      if (idx[level] >= list.size()) {
        if (level == 0) break;
        --level;
        idx[level] += level == 0 ? first_step : 1;
        continue;
      }
      if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > opt.budget)
        throw ResourceError("enumeration exceeded node budget");
      ++st.nodes;
      const auto& v = list[idx[level]];
      bool ok = true;
      if (opt.prune) {
        for (std::size_t k = 0; k < level && ok; ++k) {
          if (!pairwise_ok(order[k], *cols[order[k]], col, v)) {
            ++st.pruned_pairwise;
            ok = false;
          } else if (!minors_ok(*cols[order[k]], v)) {
            ++st.pruned_minor;
            ok = false;
          }
        }
      }
      if (!ok) {
        idx[level] += step;
        continue;
      }
      cols[col] = &v;
      if (level + 1 < n) {
        ++level;
        idx[level] = 0;
        continue;
      }
      bool full = true;
      if (!opt.prune)
        for (std::size_t i = 0; i < n && full; ++i)
          for (std::size_t j = i + 1; j < n && full; ++j)
            full = pairwise_ok(i, *cols[i], j, *cols[j]) && minors_ok(*cols[i], *cols[j]);
      std::vector<const std::vector<long long>*> ordered(cols.begin(), cols.end());
      if (full && finish(ordered, st)) {
        ++count;
        if (opt.materialize) {
          IntegerMatrix g(n, n);
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) g(i, j) = static_cast<long>((*cols[j])[i]);
          out.push_back(std::move(g));
        }
      }
      idx[level] += step;
    }
  }
};

void merge_stats(EnumStats& into, const EnumStats& s) {
  into.nodes += s.nodes;
  into.pruned_pairwise += s.pruned_pairwise;
  into.pruned_minor += s.pruned_minor;
  into.rejected_delta1 += s.rejected_delta1;
  into.rejected_delta2 += s.rejected_delta2;
}

}  // namespace

bool is_member(const CountingInstance& instance, const IntegerMatrix& gamma) {
  const std::size_t n = instance.n();
  if (gamma.rows() != n || gamma.cols() != n) return false;
  const RadicalScalar t = instance.target(), tol = instance.tolerance();
  const RationalMatrix g = to_rational(gamma);
  const RationalMatrix lhs = g.transpose() * instance.q.entries() * g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!within(lhs(i, j), t * instance.q(i, j), tol)) return false;
  const auto smith = smith_normal_form(gamma).diagonal();
  return smith[0] == 1 && smith[0] * smith[1] == instance.b;
}

SolutionSet enum_S(const CountingInstance& instance, const EnumOptions& options) {
  instance.validate();
  SolutionSet result{instance, {}, 0, {}};
  const std::size_t n = instance.n();
  Search s{instance, options, n, !instance.M, 0, 1, {}, instance.q.den(), instance.target(), instance.tolerance(), {}, {}};
  if (s.exact && !s.target.is_rational()) {
    // y^T Q y is rational while t Q_jj is not.
    result.stats.short_circuit = true;
    return result;
  }
  if (!instance.b.fits_slong_p()) throw ResourceError("b exceeds the 64-bit fast path");
  s.bmod = instance.b.get_si();
  const IntegerMatrix qt = instance.q.integral();
  s.qt.assign(n, std::vector<long long>(n));
  Integer qmax = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!qt(i, j).fits_slong_p()) throw ResourceError("integral form entries exceed 64 bits");
      s.qt[i][j] = qt(i, j).get_si();
      qmax = std::max(qmax, Integer(abs(qt(i, j))));
    }
  if (s.exact) {
    const Integer t = s.target.rational_value().get_num();
    if (mpz_sizeinbase(t.get_mpz_t(), 2) > 60) throw ResourceError("target exceeds the 64-bit fast path");
    s.t = t.get_si();
  }

  s.cands.resize(n);
  Integer emax = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& v : enum_norm_vectors(instance.q, s.target * instance.q(j, j), s.tol, options.budget)) {
      std::vector<long long> w(n);
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = v[i].get_si();
        emax = std::max(emax, Integer(abs(v[i])));
      }
      s.cands[j].push_back(std::move(w));
    }
    result.stats.candidates += s.cands[j].size();
  }
  // Entries < 2^31 keep every product below 2^62; pairings need n^2 E^2 |Q~| < 2^126.
  if (Integer(n * n) * emax * emax * qmax >= Integer(1) << 120)
    throw ResourceError("pairing values may overflow 128-bit arithmetic");
  if (s.exact && Integer(abs(Integer(s.target.rational_value().get_num()))) * qmax >= Integer(1) << 120)
    throw ResourceError("target pairing may overflow 128-bit arithmetic");

  s.order.resize(n);
  for (std::size_t j = 0; j < n; ++j) s.order[j] = j;
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](std::size_t x, std::size_t y) { return s.cands[x].size() < s.cands[y].size(); });
  for (const auto& c : s.cands)
    if (c.empty()) return result;

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, s.cands[s.order[0]].size()));
  std::vector<std::vector<IntegerMatrix>> outs(threads);
  std::vector<std::uint64_t> counts(threads, 0);
  std::vector<EnumStats> stats(threads);
  if (threads == 1) {
    s.run(0, 1, outs[0], counts[0], stats[0]);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        try {
          s.run(w, threads, outs[w], counts[w], stats[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (unsigned w = 0; w < threads; ++w) {
    merge_stats(result.stats, stats[w]);
    result.count += counts[w];
    for (auto& m : outs[w]) result.matrices.push_back(std::move(m));
  }
  std::sort(result.matrices.begin(), result.matrices.end(), lex_less);
  for (const auto& g : result.matrices)
    if (!is_member(instance, g)) throw ConsistencyError("post-hoc verification rejected an enumerated matrix");
  return result;
}

std::uint64_t count_S(const CountingInstance& instance, const EnumOptions& options) {
  EnumOptions o = options;
  o.materialize = false;
  return enum_S(instance, o).count;
}

ColumnBound first_column_bound(const RationalSymMatrix& q, const Integer& m, const Rational& eps, const Rational& C) {
  if (m < 1) throw DomainError("m must be positive");
  ColumnBound r;
  r.count = enum_norm_vectors(q, Rational(m * m), Rational(0)).size();
  r.envelope = C.get_d() * std::pow(m.get_d(), static_cast<double>(q.n()) - 2 + eps.get_d());
  return r;
}

}  // namespace supnorm
