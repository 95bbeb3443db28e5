#include "supnorm/exchange.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace supnorm {

std::size_t sym_dim(std::size_t n) { return n * (n + 1) / 2; }

std::vector<std::pair<std::size_t, std::size_t>> sym_index(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.emplace_back(i, j);
  return out;
}

KVector sym_coordinates(const KMatrix& q) {
  KVector out;
  for (const auto& [i, j] : sym_index(q.size())) out.push_back(q[i][j]);
  return out;
}

KMatrix sym_matrix(const KVector& coords, std::size_t n) {
  if (coords.size() != sym_dim(n)) throw DomainError("coordinate vector has the wrong length");
  KMatrix q(n, KVector(n, FieldElement(coords[0].spec())));
  std::size_t k = 0;
  for (const auto& [i, j] : sym_index(n)) {
    q[i][j] = coords[k];
    q[j][i] = coords[k];
    ++k;
  }
  return q;
}

KMatrix lift(const RationalMatrix& q, const FieldSpecPtr& spec) {
  KMatrix out(q.rows(), KVector(q.cols(), FieldElement(spec)));
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) out[i][j] = FieldElement(spec, q(i, j));
  return out;
}

Integer PrimePair::m(std::size_t n) const {
  const Integer base = a() * pow(b(), n - 1);
  return base * base;
}

FieldSpecPtr ambient_field(std::size_t n, const std::vector<Integer>& ms) {
  std::set<Integer> primes;
  for (const auto& m : ms) {
    if (m < 1) throw DomainError("m must be positive");
    for (const auto& [p, e] : factorize(m))
      if (e % n != 0) primes.insert(p);
  }
  if (primes.empty()) return RadicalFieldSpec::rationals();
  std::vector<Rational> radicands;
  for (const auto& p : primes) radicands.emplace_back(p);
  return RadicalFieldSpec::make(static_cast<unsigned>(n), radicands);
}

FieldElement radical_element(const FieldSpecPtr& spec, const Integer& m, std::size_t n) {
  if (auto r = exact_root(m, n)) return FieldElement(spec, Rational(*r));
  if (spec->degree() != n) throw DomainError("field degree does not match the root index");
  Integer coeff = 1;
  std::vector<unsigned> e(spec->generators(), 0);
  for (const auto& [p, k] : factorize(m)) {
    coeff *= pow(p, k / n);
    if (k % n == 0) continue;
    const auto& rad = spec->integral_radicands();
    auto it = std::find(rad.begin(), rad.end(), p);
    if (it == rad.end() || spec->scales()[it - rad.begin()] != 1) throw DomainError("field lacks a required radical");
    e[it - rad.begin()] = static_cast<unsigned>(k % n);
  }
  return Rational(coeff) * FieldElement::monomial(spec, e);
}

namespace {

IntegerMatrix basis_matrix(std::size_t n, std::size_t k, std::size_t l) {
  IntegerMatrix s(n, n);
  s(k, l) = 1;
  s(l, k) = 1;
  return s;
}

}  // namespace

KMatrix TransferOperator::apply(const KMatrix& q) const {
  const std::size_t n = gamma.rows();
  const auto spec = scalar.spec();
  KMatrix out(n, KVector(n, FieldElement(spec)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FieldElement s(spec);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const Integer c = gamma(k, i) * gamma(l, j);
          if (c != 0) s += Rational(c) * q[k][l];
        }
      out[i][j] = s - scalar * q[i][j];
    }
  return out;
}

TransferOperator transfer_operator(const IntegerMatrix& gamma, const Integer& m, FieldSpecPtr spec) {
  if (!gamma.square()) throw DomainError("gamma must be square");
  if (m < 1) throw DomainError("m must be positive");
  const std::size_t n = gamma.rows(), N = sym_dim(n);
  if (!spec) spec = ambient_field(n, {m});
  TransferOperator op{gamma, m, radical_element(spec, m, n), {}};
  const auto idx = sym_index(n);
  op.rows.assign(N, KVector(N, FieldElement(spec)));
  const IntegerMatrix gt = gamma.transpose();
  for (std::size_t c = 0; c < N; ++c) {
    const IntegerMatrix img = gt * basis_matrix(n, idx[c].first, idx[c].second) * gamma;
    for (std::size_t r = 0; r < N; ++r) {
      op.rows[r][c] = FieldElement(spec, Rational(img(idx[r].first, idx[r].second)));
      if (r == c) op.rows[r][c] -= op.scalar;
    }
  }
  return op;
}

bool FieldDescription::contains(const FieldElement& x) const {
  const std::set<std::vector<unsigned>> group(exponent_group.begin(), exponent_group.end());
  const auto& c = x.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0 && !group.count(x.spec()->exponents(k))) return false;
  return true;
}

FieldDescription describe_subfield(const FieldSpecPtr& ambient, const std::vector<FieldElement>& generators) {
  FieldDescription d{ambient, generators, {}};
  const std::size_t s = ambient->generators();
  const unsigned n = ambient->degree();
  std::vector<std::vector<unsigned>> steps;
  for (const auto& g : generators) {
    if (g.is_zero() || !g.is_monomial()) throw DomainError("subfield generators must be nonzero monomials");
    std::size_t k = 0;
    while (g.coefficients()[k] == 0) ++k;
    steps.push_back(ambient->exponents(k));
  }
  std::set<std::vector<unsigned>> seen{std::vector<unsigned>(s, 0)};
  std::vector<std::vector<unsigned>> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& e : frontier)
      for (const auto& st : steps) {
        std::vector<unsigned> f(s);
        for (std::size_t i = 0; i < s; ++i) f[i] = (e[i] + st[i]) % n;
        if (seen.insert(f).second) next.push_back(f);
      }
    frontier = std::move(next);
  }
  d.exponent_group.assign(seen.begin(), seen.end());
  return d;
}

std::vector<std::size_t> select_generators(const std::vector<KVector>& rows) {
  std::vector<std::size_t> kept;
  std::vector<KVector> basis;
  std::vector<std::size_t> pivots;
  const std::size_t width = rows.empty() ? 0 : rows[0].size();
  for (std::size_t idx = 0; idx < rows.size() && basis.size() < width; ++idx) {
    KVector r = rows[idx];
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (!r[pivots[b]].is_zero()) r = add(r, scale(-r[pivots[b]], basis[b]));
    std::size_t p = 0;
    while (p < width && r[p].is_zero()) ++p;
    if (p == width) continue;
    basis.push_back(scale(r[p].inverse(), r));
    pivots.push_back(p);
    kept.push_back(idx);
  }
  return kept;
}

SymSubspace intersect_kernels(std::size_t n, const std::vector<KernelInput>& operators) {
  std::vector<Integer> ms;
  for (const auto& op : operators) ms.push_back(op.m);
  SymSubspace h;
  h.n = n;
  h.spec = ambient_field(n, ms);
  const std::size_t N = sym_dim(n);
  std::vector<KVector> rows;
  std::vector<RowLabel> labels;
  for (const auto& op : operators) {
    if (op.gamma.rows() != n) throw DomainError("operator dimension mismatch");
    const auto t = transfer_operator(op.gamma, op.m, h.spec);
    for (std::size_t r = 0; r < N; ++r) {
      rows.push_back(t.rows[r]);
      labels.push_back({op.label.source, op.label.gamma, r});
    }
  }
  h.stacked_rows = rows.size();
  for (std::size_t k : select_generators(rows)) {
    h.generators.push_back(rows[k]);
    h.labels.push_back(labels[k]);
  }
  try {
    h.basis = kernel_basis_bounded(h.generators, N, h.spec);
  } catch (const ZeroKernel&) {
    h.basis = KernelBasis{};
  }
  return h;
}

namespace {

std::optional<RationalMatrix> as_rational(const KMatrix& q) {
  RationalMatrix out(q.size(), q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (!q[i][j].is_rational()) return std::nullopt;
      out(i, j) = q[i][j].rational_value();
    }
  return out;
}

}  // namespace

bool region_contains(const Region& region, const KMatrix& q) {
  const std::size_t n = q.size();
  if (n != region.n()) return false;
  if (auto r = as_rational(q)) return region.contains(*r);
  const auto spec = q[0][0].spec();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if ((q[i][j] - FieldElement(spec, region.outer_lo()(i, j))).real_sign() <= 0) return false;
      if ((FieldElement(spec, region.outer_hi()(i, j)) - q[i][j]).real_sign() <= 0) return false;
    }
  // Positive pivots of symmetric elimination in the real embedding.
  KMatrix a = q;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k].real_sign() <= 0) return false;
    const FieldElement inv = a[k][k].inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      const FieldElement f = a[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

QPrime find_Q_prime(const SymSubspace& h, const Region& region, const RationalSymMatrix& reference, unsigned max_bits) {
  const std::size_t n = h.n;
  if (h.dim() == 0) throw NoPointFound("H is the zero subspace");
  const KVector ref = sym_coordinates(lift(reference.entries(), h.spec));
  KVector proj = ref;
  for (const auto& u : gram_schmidt(h.generators)) proj = add(proj, scale(-(inner(ref, u) / inner(u, u)), u));
  const KMatrix exact = sym_matrix(proj, n);
  const bool inside = region_contains(region, exact);
  QPrime out;
  out.entries = exact;
  out.rational = as_rational(exact);
  if (out.rational) out.den = denominator(*out.rational);
  if (inside && (!out.rational || mpz_sizeinbase(out.den.get_mpz_t(), 2) <= max_bits)) {
    out.method = "projection";
    return out;
  }
  bool rational_basis = true;
  for (const auto& v : h.basis.vectors)
    for (const auto& x : v) rational_basis = rational_basis && x.is_rational();
  if (rational_basis) {
    std::vector<Rational> coeff;
    for (std::size_t i = 0; i < h.dim(); ++i) {
      const std::size_t f = h.basis.free_columns[i];
      coeff.push_back(proj[f].rational_value() / h.basis.vectors[i][f].rational_value());
    }
    for (unsigned k = 0; k <= max_bits; ++k) {
      const Integer bound = pow(Integer(2), k);
      KVector point(sym_dim(n), FieldElement(h.spec));
      for (std::size_t i = 0; i < h.dim(); ++i)
        point = add(point, scale(FieldElement(h.spec, best_approximation(coeff[i], bound)), h.basis.vectors[i]));
      const KMatrix candidate = sym_matrix(point, n);
      const auto r = as_rational(candidate);
      if (region.contains(*r)) {
        QPrime q{candidate, r, denominator(*r), "rounded", k};
        return q;
      }
    }
  }
  if (inside) {
    out.method = "projection";
    return out;
  }
  throw NoPointFound("no point of H found inside the region");
}

bool is_exact_member(const KMatrix& q, const PrimePair& pair, const IntegerMatrix& gamma) {
  const std::size_t n = q.size();
  if (gamma.rows() != n || gamma.cols() != n) return false;
  const auto spec = q[0][0].spec();
  const FieldElement t = radical_element(spec, pair.m(n), n);
  const TransferOperator op{gamma, pair.m(n), t, {}};
  for (const auto& row : op.apply(q))
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  const auto d = smith_normal_form(gamma).diagonal();
  return d[0] == 1 && d[0] * d[1] == pair.b();
}

ExchangeResult exchange_lemma(const RationalSymMatrix& q, const std::vector<PrimePair>& pairs,
                              const std::optional<Rational>& M, const ExchangeOptions& options) {
  const std::size_t n = q.n();
  if (options.L) {
    const Integer hi = 2 * pow(*options.L, options.D);
    for (const auto& pr : pairs)
      if (pr.p < *options.L || pr.p > hi || pr.q < *options.L || pr.q > hi || pr.nu < 1 || pr.nu > n)
        throw DomainError("pair outside [L, 2 L^D] or nu outside [1, n]");
  }
  std::vector<SolutionSet> solutions;
  for (const auto& pr : pairs) {
    CountingInstance inst;
    inst.q = q;
    inst.a = pr.a();
    inst.b = pr.b();
    inst.M = M;
    inst.error_constant = options.error_constant;
    solutions.push_back(enum_S(inst, options.enumeration));
  }
  return exchange_from_solutions(q, pairs, std::move(solutions), options);
}

ExchangeResult exchange_from_solutions(const RationalSymMatrix& q, const std::vector<PrimePair>& pairs,
                                       std::vector<SolutionSet> solutions, const ExchangeOptions& options) {
  const std::size_t n = q.n();
  if (solutions.size() != pairs.size()) throw DomainError("one solution set per pair is required");
  const Region region = options.region ? *options.region : Region::around(q.entries(), Rational(1, 4));
  ExchangeResult res;
  res.pairs = pairs;
  res.solutions = std::move(solutions);
  std::vector<KernelInput> ops;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& sols = res.solutions[i].matrices;
    for (std::size_t g = 0; g < sols.size(); ++g) ops.push_back({sols[g], pairs[i].m(n), {i, g, 0}});
  }
  res.h = intersect_kernels(n, ops);

  std::set<std::size_t> contributing;
  for (const auto& l : res.h.labels) contributing.insert(l.source);
  res.p_prime.assign(contributing.begin(), contributing.end());
  std::vector<FieldElement> gens;
  for (std::size_t i : res.p_prime) gens.push_back(radical_element(res.h.spec, pairs[i].m(n), n));
  res.k = describe_subfield(res.h.spec, gens);
  for (const auto& row : res.h.generators)
    for (const auto& x : row)
      if (!res.k.contains(x)) throw ConsistencyError("generator entry outside the reported field K");

  res.q_prime = find_Q_prime(res.h, region, q, options.max_bits);
  for (const auto& row : res.q_prime.entries)
    for (const auto& x : row)
      if (!res.k.contains(x)) throw ConsistencyError("Q' has an entry outside K");

  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (const auto& g : res.solutions[i].matrices) {
      if (!is_exact_member(res.q_prime.entries, pairs[i], g))
        throw ConsistencyError("containment S(Q) in S(Q') violated");
      ++res.verified;
    }

  if (options.reenumerate && res.q_prime.rational) {
    const auto qp = RationalSymMatrix::make(*res.q_prime.rational);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (res.solutions[i].matrices.empty()) continue;
      CountingInstance inst;
      inst.q = qp;
      inst.a = pairs[i].a();
      inst.b = pairs[i].b();
      const auto again = enum_S(inst, options.enumeration);
      for (const auto& g : res.solutions[i].matrices)
        if (!std::binary_search(again.matrices.begin(), again.matrices.end(), g, lex_less))
          throw ConsistencyError("re-enumeration under Q' misses a matrix");
    }
    res.reenumerated = true;
  }
  return res;
}

FieldElement embed_into(const FieldElement& x, const FieldSpecPtr& target) {
  const auto& src = x.spec();
  if (src == target || *src == *target) return FieldElement(target, x.coefficients());
  if (src->generators() == 0) return FieldElement(target, x.coefficients()[0]);
  if (src->degree() != target->degree()) throw DomainError("fields have different root degrees");
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < src->generators(); ++i) {
    const auto& r = target->radicands();
    auto it = std::find(r.begin(), r.end(), src->radicands()[i]);
    if (it == r.end()) throw DomainError("target field lacks a radicand");
    where.push_back(static_cast<std::size_t>(it - r.begin()));
  }
  std::vector<Rational> c(target->dimension());
  for (std::size_t k = 0; k < x.coefficients().size(); ++k) {
    if (x.coefficients()[k] == 0) continue;
    std::vector<unsigned> e(target->generators(), 0);
    for (std::size_t i = 0; i < where.size(); ++i) e[where[i]] = src->exponents(k)[i];
    c[target->index_of(e)] = x.coefficients()[k];
  }
  return FieldElement(target, std::move(c));
}

KVector embed_into(const KVector& v, const FieldSpecPtr& target) {
  KVector out;
  for (const auto& x : v) out.push_back(embed_into(x, target));
  return out;
}

}  // namespace supnorm
