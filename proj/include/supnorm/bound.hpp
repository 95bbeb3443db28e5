#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supnorm/errors.hpp"
#include "supnorm/numeric.hpp"

namespace supnorm {

// Spectral parameters mu with sum zero (tempered: all real).
struct SpectralParameters {
  std::vector<Rational> mu;
  std::size_t n() const { return mu.size(); }
  void validate() const;
};

Rational laplace_eigenvalue(const SpectralParameters& mu);

// prod_{j<k} (1 + |l_j - l_k|), taken as 1/|c(l)|^2.
Rational c_function_norm(const std::vector<Rational>& lambda);

// n(n-1)/8.
Rational convexity_exponent(std::size_t n);

struct ConstantsConfig {
  Rational c1 = 1;   // M >= c1 D1^{N} D2^{N+1}, N = n(n+1)/2
  Rational c6 = 1;
  Rational c9 = 3;   // D1 >= c9 >= 3 c6
  Rational eps = Rational(1, 2);
  Integer level = 1;
  void validate() const;
};

struct CountEntry {
  unsigned nu = 1;
  Integer p;
  Integer q;
  double count = 0;
};

struct BoundTerm {
  std::string name;
  double log_value = 0;  // natural log; -inf for a zero term
};

struct BoundReport {
  std::size_t n = 0;
  double log_inv_c = 0;      // log(1/|c(mu)|)
  double L0 = 0;
  Rational M;
  std::size_t primes = 0;    // |P|
  std::vector<double> count_sums;  // sum over p, q of the counts, per nu
  std::vector<BoundTerm> terms;    // the three bracketed terms
  double log_total = 0;            // log of (1/|c|^2) * (sum of terms)
  std::size_t dominant = 0;
  std::optional<double> exponent;  // |F|^2 << (1/|c|)^exponent, when 1/|c| > 1
  std::optional<double> delta;     // (2 - exponent) / 2, the saving on F
};

// The basic estimate with 1/|c(mu)| given through its natural log.
BoundReport basic_estimate(std::size_t n, double log_inv_c, double L0, const Rational& M, std::size_t primes,
                           const std::vector<CountEntry>& counts);

struct DeltaResult {
  std::size_t n = 0;
  unsigned D1 = 0;
  Integer D2;
  Rational M;
  Rational e_min;    // (D1 D2)^{i+1} D1^{k+1} over 0 <= i, k < n(n+1)/2
  Rational e_max;
  std::size_t worst_i = 0;  // index pair attaining e_max
  std::size_t worst_k = 0;
  Rational eta;      // crossover eta*
  Rational delta;    // saving on |F|^2 relative to 1/|c(mu)|
  Rational delta_F;  // delta / 2, the exponent saving for F
  Rational gain;     // eta* e_min / 2
  Rational loss;     // 1/(n(n-1)) - eta* (n^3 + M/2) e_max
};

// Minimal legal parameters: D1 = ceil(c9), D2 = D1^N, M = c1 D1^N D2^{N+1}.
DeltaResult delta_calculator(std::size_t n, const ConstantsConfig& k = {});
// Explicit parameters; DomainError when they violate the two conditions.
DeltaResult delta_calculator(std::size_t n, const ConstantsConfig& k, unsigned D1, const Integer& D2,
                             const Rational& M);

struct PairExponent {
  std::size_t j = 0;
  std::size_t k = 0;
  Rational base;       // 1 + |mu_j - mu_k|
  Rational exponent;   // 1/2 - delta
  double value = 0;
};

std::vector<PairExponent> stronger_bound_exponents(const SpectralParameters& mu, const Rational& delta);
double stronger_bound(const SpectralParameters& mu, const Rational& delta);

}  // namespace supnorm
