#include "supnorm/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace supnorm {

void SpectralParameters::validate() const {
  if (mu.size() < 2) throw DomainError("need at least two spectral parameters");
  Rational s = 0;
  for (const auto& m : mu) s += m;
  if (s != 0) throw DomainError("spectral parameters must sum to zero");
}

Rational laplace_eigenvalue(const SpectralParameters& mu) {
  mu.validate();
  const long n = static_cast<long>(mu.n());
  Rational sq = 0;
  for (const auto& m : mu.mu) sq += m * m;
  return frac(n * n * n - n, 24) + sq / 2;
}

Rational c_function_norm(const std::vector<Rational>& lambda) {
  Rational p = 1;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    for (std::size_t k = j + 1; k < lambda.size(); ++k) p *= 1 + abs(lambda[j] - lambda[k]);
  return p;
}

Rational convexity_exponent(std::size_t n) {
  if (n < 2) throw DomainError("n must be at least 2");
  return frac(static_cast<long>(n * (n - 1)), 8);
}

void ConstantsConfig::validate() const {
  if (c1 <= 0 || c6 <= 0 || c9 <= 0 || eps <= 0) throw DomainError("constants must be positive");
  if (level < 1) throw DomainError("level must be positive");
}

namespace {

double log_sum_exp(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (std::isinf(m)) return m;
  double s = 0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

BoundReport basic_estimate(std::size_t n, double log_inv_c, double L0, const Rational& M, std::size_t primes,
                           const std::vector<CountEntry>& counts) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (primes == 0) throw DomainError("the prime set is empty");
  if (!(L0 > 0)) throw DomainError("L0 must be positive");
  if (log_inv_c < 0) throw DomainError("1/|c(mu)| must be at least 1");
  BoundReport r;
  r.n = n;
  r.log_inv_c = log_inv_c;
  r.L0 = L0;
  r.M = M;
  r.primes = primes;
  r.count_sums.assign(n, 0);
  for (const auto& c : counts) {
    if (c.nu < 1 || c.nu > n) throw DomainError("nu must lie in [1, n]");
    if (c.count < 0) throw DomainError("counts must be nonnegative");
    r.count_sums[c.nu - 1] += c.count;
  }
  const double P = static_cast<double>(primes), dn = static_cast<double>(n), logL = std::log(L0);
  const double t1 = -std::log(P);
  const double t2 = -2 * log_inv_c / (dn * (dn - 1)) + (dn * dn * dn + M.get_d() / 2) * logL;
  std::vector<double> parts;
  for (std::size_t nu = 1; nu <= n; ++nu) {
    const double s = r.count_sums[nu - 1];
    parts.push_back(s > 0 ? std::log(s) - 2 * std::log(P) - static_cast<double>(nu) * (dn - 1) * logL
                          : -std::numeric_limits<double>::infinity());
  }
  const double t3 = log_sum_exp(parts);
  r.terms = {{"inverse_primes", t1}, {"diagonal", t2}, {"counting", t3}};
  r.dominant = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (r.terms[i].log_value > r.terms[r.dominant].log_value) r.dominant = i;
  r.log_total = 2 * log_inv_c + log_sum_exp({t1, t2, t3});
  if (log_inv_c > 0) {
    r.exponent = r.log_total / log_inv_c;
    r.delta = (2 - *r.exponent) / 2;
  }
  return r;
}

DeltaResult delta_calculator(std::size_t n, const ConstantsConfig& k) {
  k.validate();
  const std::size_t N = n * (n + 1) / 2;
  const Integer c9 = ceil(k.c9);
  const unsigned D1 = static_cast<unsigned>(std::max<long>(1, c9.get_si()));
  const Integer D2 = pow(Integer(D1), N);
  const Rational M = k.c1 * Rational(pow(Integer(D1), N) * pow(D2, N + 1));
  return delta_calculator(n, k, D1, D2, M);
}

DeltaResult delta_calculator(std::size_t n, const ConstantsConfig& k, unsigned D1, const Integer& D2,
                             const Rational& M) {
  if (n < 2) throw DomainError("n must be at least 2");
  k.validate();
  const std::size_t N = n * (n + 1) / 2;
  if (D1 < 1 || D2 < 1) throw DomainError("D1, D2 must be at least 1");
  if (D2 < pow(Integer(D1), N)) throw DomainError("infeasible: D2 < D1^{n(n+1)/2}");
  if (M < k.c1 * Rational(pow(Integer(D1), N) * pow(D2, N + 1))) throw DomainError("infeasible: M below c1 D1^N D2^{N+1}");
  DeltaResult r;
  r.n = n;
  r.D1 = D1;
  r.D2 = D2;
  r.M = M;
  // E(i, k) = (D1 D2)^{i+1} D1^{k+1} is increasing in both indices.
  const Integer d12 = Integer(D1) * D2;
  r.e_min = Rational(d12 * D1);
  r.e_max = Rational(pow(d12, N) * pow(Integer(D1), N));
  r.worst_i = N - 1;
  r.worst_k = N - 1;
  const Rational nn = Rational(static_cast<long>(n * (n - 1)));
  const Rational slope = Rational(static_cast<long>(n * n * n)) + M / 2;
  // Crossover of eta e_min / 2 (increasing) and 1/(n(n-1)) - eta slope e_max (decreasing).
  r.eta = 1 / (nn * (r.e_min / 2 + slope * r.e_max));
  r.gain = r.eta * r.e_min / 2;
  r.loss = 1 / nn - r.eta * slope * r.e_max;
  if (r.gain != r.loss) throw ConsistencyError("crossover terms differ");
  r.delta = r.gain;
  if (r.delta <= 0) throw DomainError("infeasible: no positive eta gives a positive saving");
  r.delta_F = r.delta / 2;
  return r;
}

std::vector<PairExponent> stronger_bound_exponents(const SpectralParameters& mu, const Rational& delta) {
  mu.validate();
  std::vector<PairExponent> out;
  const Rational e = Rational(1, 2) - delta;
  for (std::size_t j = 0; j < mu.n(); ++j)
    for (std::size_t k = j + 1; k < mu.n(); ++k) {
      const Rational b = 1 + abs(mu.mu[j] - mu.mu[k]);
      out.push_back({j, k, b, e, std::pow(b.get_d(), e.get_d())});
    }
  return out;
}

double stronger_bound(const SpectralParameters& mu, const Rational& delta) {
  double v = 1;
  for (const auto& p : stronger_bound_exponents(mu, delta)) v *= p.value;
  return v;
}

}  // namespace supnorm
