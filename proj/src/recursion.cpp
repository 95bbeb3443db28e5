#include "supnorm/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace supnorm {

PairCase classify_pair(const Integer& p, const Integer& q, unsigned nu, std::size_t n) {
  if (nu < 1 || nu > n) throw DomainError("nu must lie in [1, n]");
  if (p == q) return PairCase::Case3;
  if ((2 * nu) % n == 0) return PairCase::Case2;
  return PairCase::Case1;
}

std::string to_string(PairCase c) {
  switch (c) {
    case PairCase::Case1: return "Case1";
    case PairCase::Case2: return "Case2";
    case PairCase::Case3: return "Case3";
  }
  return "";
}

std::optional<Integer> bounded_pow(const Integer& base, const Integer& exp, std::size_t max_bits) {
  if (exp < 0) throw DomainError("negative exponent");
  if (base == 0 || base == 1) return exp == 0 ? Integer(1) : base;
  const double bits = exp.get_d() * std::log2(Integer(abs(base)).get_d());
  if (bits > static_cast<double>(max_bits)) return std::nullopt;
  return pow(base, exp.get_ui());
}

Window make_window(const Integer& base, const Integer& lo_exp, const Integer& hi_exp, std::uint64_t prime_cap) {
  Window w{base, lo_exp, hi_exp, bounded_pow(base, lo_exp), bounded_pow(base, hi_exp), 0, 0, false};
  if (w.hi) *w.hi *= 2;
  const Integer cap(static_cast<unsigned long>(prime_cap));
  w.search_lo = (w.lo && *w.lo <= cap) ? w.lo->get_ui() : prime_cap + 1;
  w.clamped = !w.hi || *w.hi > cap;
  w.search_hi = w.clamped ? prime_cap : w.hi->get_ui();
  return w;
}

namespace {

std::vector<unsigned> nu_range(const RecursionParams& params, std::size_t n) {
  if (!params.nus.empty()) {
    for (unsigned nu : params.nus)
      if (nu < 1 || nu > n) throw DomainError("nu must lie in [1, n]");
    return params.nus;
  }
  std::vector<unsigned> out;
  for (unsigned nu = 1; nu <= n; ++nu) out.push_back(nu);
  return out;
}

std::vector<std::uint64_t> window_primes(const Window& w) {
  if (w.empty()) return {};
  return primes_in(w.search_lo, w.search_hi);
}

// Pairs (p^nu, q^nu) over the primes, ordered by (p, q, nu).
std::vector<PrimePair> pairs_over(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& nus,
                                  std::size_t n, bool integral_only) {
  std::vector<PrimePair> out;
  for (auto p : primes)
    for (auto q : primes)
      for (unsigned nu : nus) {
        PrimePair pr{Integer(static_cast<unsigned long>(p)), Integer(static_cast<unsigned long>(q)), nu};
        if (integral_only && classify_pair(pr.p, pr.q, nu, n) == PairCase::Case1) continue;
        out.push_back(pr);
      }
  return out;
}

CountingInstance instance(const RationalSymMatrix& q, const PrimePair& pr, const std::optional<Rational>& M,
                          const RecursionParams& params) {
  CountingInstance inst;
  inst.q = q;
  inst.a = pr.a();
  inst.b = pr.b();
  inst.M = M;
  inst.error_constant = params.error_constant;
  return inst;
}

const SolutionSet& solutions_for(const RationalSymMatrix& q, const PrimePair& pr, const RecursionParams& params,
                                 SolutionCache& cache) {
  const auto key = std::make_tuple(pr.p, pr.q, pr.nu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enum_S(instance(q, pr, params.M, params), params.enumeration)).first;
  return it->second;
}

ExchangeResult run_level(const RationalSymMatrix& q, const std::vector<PrimePair>& pairs,
                         const RecursionParams& params, SolutionCache& cache) {
  std::vector<SolutionSet> sols;
  for (const auto& pr : pairs) sols.push_back(solutions_for(q, pr, params, cache));
  ExchangeOptions o;
  o.region = params.region;
  o.error_constant = params.error_constant;
  o.enumeration = params.enumeration;
  o.max_bits = params.max_bits;
  o.reenumerate = false;
  return exchange_from_solutions(q, pairs, std::move(sols), o);
}

// Appends a level and reports whether the chain has stabilized.
bool push_level(Chain& chain, ChainLevel level) {
  const std::size_t d = level.exchange.h.dim();
  if (!chain.levels.empty() && !subspace_contained(level.exchange.h, chain.levels.back().exchange.h))
    throw ConsistencyError("subspace chain is not nested");
  chain.levels.push_back(std::move(level));
  chain.dims.push_back(d);
  const std::size_t j = chain.levels.size() - 1;
  if (j >= 1 && chain.dims[j] == chain.dims[j - 1]) {
    chain.stable = j - 1;
    return true;
  }
  return false;
}

FieldSpecPtr common_field(const FieldSpecPtr& a, const FieldSpecPtr& b, std::size_t n) {
  if (b->generators() == 0) return a;
  if (a->generators() == 0) return b;
  std::set<Rational> r(a->radicands().begin(), a->radicands().end());
  r.insert(b->radicands().begin(), b->radicands().end());
  return RadicalFieldSpec::make(static_cast<unsigned>(n), std::vector<Rational>(r.begin(), r.end()));
}

Integer ipow(unsigned base, std::size_t e) { return pow(Integer(base), e); }

}  // namespace

bool subspace_contained(const SymSubspace& inner, const SymSubspace& outer) {
  if (inner.dim() == 0 || outer.generators.empty()) return true;
  const auto spec = common_field(inner.spec, outer.spec, inner.n);
  for (const auto& g : outer.generators) {
    const KVector ge = embed_into(g, spec);
    for (const auto& v : inner.basis.vectors)
      if (!supnorm::inner(ge, embed_into(v, spec)).is_zero()) return false;
  }
  return true;
}

Chain outer_chain(const RationalSymMatrix& q, const RecursionParams& params, SolutionCache* cache) {
  if (params.L <= 2) throw DomainError("L must exceed 2");
  if (params.D1 < 1 || params.D2 < 1) throw DomainError("D1, D2 must be at least 1");
  SolutionCache local;
  SolutionCache& c = cache ? *cache : local;
  const std::size_t n = q.n(), N = sym_dim(n);
  const auto nus = nu_range(params, n);
  Chain chain;
  for (std::size_t j = 0; j <= N; ++j) {
    ChainLevel level;
    level.j = j;
    level.window = make_window(params.L, 1, ipow(params.D1, j) * ipow(params.D2, j + 1), params.prime_cap);
    level.pairs = pairs_over(window_primes(level.window), nus, n, false);
    level.exchange = run_level(q, level.pairs, params, c);
    if (push_level(chain, std::move(level))) return chain;
  }
  throw ConsistencyError("outer chain failed to stabilize");
}

Chain inner_chain(const RationalSymMatrix& q, const Integer& scale_exp, const RecursionParams& params,
                  SolutionCache* cache) {
  SolutionCache local;
  SolutionCache& c = cache ? *cache : local;
  const std::size_t n = q.n(), N = sym_dim(n);
  const auto nus = nu_range(params, n);
  Chain chain;
  for (std::size_t j = 0; j <= N; ++j) {
    ChainLevel level;
    level.j = j;
    const Integer top = scale_exp * ipow(params.D1, j);
    level.window = make_window(params.L, scale_exp, top, params.prime_cap);
    if (j == 0) {
      level.pairs = pairs_over(window_primes(level.window), nus, n, true);
    } else {
      const auto& prev = chain.levels.back();
      if (!prev.exchange.q_prime.rational) throw ConsistencyError("inner chain matrix is not rational");
      const auto filter = RationalSymMatrix::make(*prev.exchange.q_prime.rational);
      level.fresh = make_window(params.L, top, top, params.prime_cap);
      for (auto p : window_primes(*level.fresh))
        if (is_q_good(Integer(static_cast<unsigned long>(p)), filter, params.minor_mode)) level.good_primes.push_back(p);
      level.filter = filter;
      level.pairs = prev.pairs;
      for (const auto& pr : pairs_over(level.good_primes, nus, n, true))
        if (std::find(level.pairs.begin(), level.pairs.end(), pr) == level.pairs.end()) level.pairs.push_back(pr);
    }
    level.exchange = run_level(q, level.pairs, params, c);
    if (!level.exchange.k.is_rational()) throw ConsistencyError("inner chain field is not Q");
    if (push_level(chain, std::move(level))) return chain;
  }
  throw ConsistencyError("inner chain failed to stabilize");
}

double count1_envelope(std::size_t n, const Integer& den, const Integer& p, unsigned nu, const Rational& C) {
  const double e = 0.5 * static_cast<double>((n - 1) * (n - 1));
  return C.get_d() * std::pow(den.get_d(), e) * std::pow(p.get_d(), nu * (static_cast<double>(n) - 1.5));
}

double empty_envelope(std::size_t n, const Integer& p, const Integer& q, unsigned nu, const Rational& C) {
  const double dn = static_cast<double>(n);
  const double ratio = std::pow(1 + q.get_d() / p.get_d(), nu * (dn - 1));
  const double base = std::pow(q.get_d(), 1 / dn) * std::pow(p.get_d(), (dn - 1) / dn);
  return C.get_d() * ratio * std::pow(base, nu * (dn - 1.5));
}

bool RecursionCertificate::sound() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairBound& b) { return b.verified; });
}

namespace {

std::optional<std::uint64_t> try_count(const CountingInstance& inst, const EnumOptions& options) {
  try {
    return enum_S(inst, options).count;
  } catch (const ResourceError&) {
    return std::nullopt;
  }
}

// Whether (q p^{n-1})^{2 nu / n} lies outside the field K.
bool target_outside(const FieldDescription& k, const PrimePair& pr, std::size_t n) {
  const Integer m = pr.m(n);
  const auto t_spec = ambient_field(n, {m});
  if (t_spec->generators() == 0) return false;
  const auto spec = common_field(k.ambient, t_spec, n);
  std::vector<FieldElement> gens;
  for (const auto& g : k.generators) gens.push_back(embed_into(g, spec));
  return !describe_subfield(spec, gens).contains(radical_element(spec, m, n));
}

}  // namespace

RecursionCertificate proposition_driver(const RationalSymMatrix& q, const RecursionParams& params) {
  RecursionCertificate cert;
  cert.params = params;
  const std::size_t n = q.n(), N = sym_dim(n);
  cert.n = n;
  cert.cond_n = !params.M || *params.M >= params.c1 * Rational(ipow(params.D1, N) * ipow(params.D2, N + 1));
  cert.cond_d = ipow(params.D2, 1) >= ipow(params.D1, N);

  SolutionCache cache;
  cert.outer = outer_chain(q, params, &cache);
  cert.i = cert.outer.stable;
  cert.scale_exp = ipow(params.D1 * params.D2, cert.i + 1);
  cert.inner = inner_chain(q, cert.scale_exp, params, &cache);
  cert.k = cert.inner.stable;

  const Integer e_i = ipow(params.D1, cert.i) * ipow(params.D2, cert.i + 1);
  const Integer e_next = ipow(params.D1, cert.i + 1) * ipow(params.D2, cert.i + 2);
  cert.nested = cert.scale_exp > e_i && cert.scale_exp * ipow(params.D1, N) <= e_next;

  const auto& qi = cert.outer.stable_level().exchange;
  const auto& qk = cert.inner.stable_level().exchange;
  if (!qk.q_prime.rational) throw ConsistencyError("inner chain matrix is not rational");
  const auto qstar = RationalSymMatrix::make(*qk.q_prime.rational);

  const Integer top = cert.scale_exp * ipow(params.D1, cert.k + 1);
  cert.final_window = make_window(params.L, top, top, params.prime_cap);
  const auto system = residue_system(qstar, params.minor_mode);
  const auto minors = minor_set(qstar, params.minor_mode);
  cert.D.assign(minors.begin(), minors.end());
  std::set<Integer> diag;
  for (std::size_t r = 0; r < n; ++r) diag.insert(qstar.integral()(r, r));
  cert.Q.assign(diag.begin(), diag.end());
  cert.residue_modulus = system.modulus();
  if (!cert.final_window.empty())
    cert.primes = good_prime_set(system, cert.final_window.search_lo, cert.final_window.search_hi, params.level);

  for (const auto& pr : pairs_over(cert.primes, nu_range(params, n), n, false)) {
    PairBound b;
    b.pair = pr;
    b.kase = classify_pair(pr.p, pr.q, pr.nu, n);
    b.count = try_count(instance(q, pr, params.M, params), params.enumeration);
    switch (b.kase) {
      case PairCase::Case1: {
        if (qi.q_prime.rational)
          b.reference = try_count(instance(RationalSymMatrix::make(*qi.q_prime.rational), pr, std::nullopt, params),
                                  params.enumeration);
        if (target_outside(qi.k, pr, n)) {
          b.backing = "irrationality";
          b.verified = b.count && *b.count == 0 && (!b.reference || *b.reference == 0);
        } else {
          b.backing = "unverified";
          b.note = "target lies in K_i";
        }
        break;
      }
      case PairCase::Case2:
      case PairCase::Case3: {
        b.envelope = b.kase == PairCase::Case2 ? empty_envelope(n, pr.p, pr.q, pr.nu, params.envelope_constant)
                                               : count1_envelope(n, qstar.den(), pr.p, pr.nu, params.envelope_constant);
        b.backing = b.kase == PairCase::Case2 ? "empty-envelope" : "count1-envelope";
        b.reference = try_count(instance(qstar, pr, std::nullopt, params), params.enumeration);
        const auto within = [&](const std::optional<std::uint64_t>& c) {
          return c && static_cast<double>(*c) <= b.envelope;
        };
        b.verified = within(b.count) && within(b.reference);
        if (!b.count || !b.reference) {
          b.backing = "unverified";
          b.note = "enumeration budget exhausted";
        }
        break;
      }
    }
    cert.pairs.push_back(std::move(b));
  }
  return cert;
}

}  // namespace supnorm
