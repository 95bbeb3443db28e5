#include "supnorm/number_field.hpp"

#include <algorithm>
#include <map>

#include "supnorm/matrix_core.hpp"

namespace supnorm {

namespace {

Integer euler_phi(unsigned n) {
  Integer r = 1;
  for (const auto& [p, e] : factorize(Integer(n))) r *= pow(p, e - 1) * (p - 1);
  return r;
}

// Solves m y = rhs over Q; m must be invertible.
std::vector<Rational> solve(RationalMatrix m, std::vector<Rational> rhs) {
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw DivisionByZero("singular multiplication matrix");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      std::swap(rhs[p], rhs[c]);
    }
    const Rational inv = 1 / m(c, c);
    for (std::size_t j = c; j < n; ++j) m(c, j) *= inv;
    rhs[c] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
      rhs[i] -= f * rhs[c];
    }
  }
  return rhs;
}

// |x|^k <= bound (cmp < 0 means strictly less), all exact.
int compare_power(const Rational& base, unsigned long k, const Rational& bound) {
  const Rational lhs = pow(base, static_cast<long>(k));
  return lhs < bound ? -1 : (lhs == bound ? 0 : 1);
}

}  // namespace

std::shared_ptr<const RadicalFieldSpec> RadicalFieldSpec::make(unsigned n, std::vector<Rational> radicands) {
  if (n < 1) throw DomainError("field degree must be positive");
  if (n == 1 && !radicands.empty()) throw DomainError("first roots generate nothing");
  auto spec = std::make_shared<RadicalFieldSpec>();
  spec->n_ = n;
  std::size_t dim = 1;
  for (auto& r : radicands) {
    r.canonicalize();
    if (r <= 0) throw DomainError("radicands must be positive");
    if (dim > kMaxFieldDimension / n) throw DomainError("field dimension exceeds the supported maximum");
    dim *= n;
    spec->scales_.push_back(r.get_den());
    spec->integral_.push_back(r.get_num() * pow(Integer(r.get_den()), n - 1));
  }
  spec->radicands_ = std::move(radicands);
  spec->dim_ = dim;
  const std::size_t s = spec->radicands_.size();

  spec->digits_.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t rest = k;
    spec->digits_[k].resize(s);
    for (std::size_t i = 0; i < s; ++i) {
      spec->digits_[k][i] = static_cast<unsigned>(rest % n);
      rest /= n;
    }
  }

  // A nonzero exponent vector e with prod r_i^{e_i} an n-th power makes the
  // monomials dependent.
  std::map<Integer, std::vector<unsigned long>> valuations;
  for (std::size_t i = 0; i < s; ++i)
    for (const auto& [p, e] : factorize(spec->integral_[i])) {
      auto& v = valuations[p];
      v.resize(s, 0);
      v[i] = e % n;
    }
  for (std::size_t k = 1; k < dim; ++k) {
    bool power = true;
    for (const auto& [p, v] : valuations) {
      unsigned long sum = 0;
      for (std::size_t i = 0; i < s; ++i) sum += v[i] * spec->digits_[k][i];
      if (sum % n != 0) {
        power = false;
        break;
      }
    }
    if (power) throw DomainError("radicands are dependent modulo n-th powers");
  }
  return spec;
}

std::shared_ptr<const RadicalFieldSpec> RadicalFieldSpec::rationals() {
  static const auto q = make(1, {});
  return q;
}

std::size_t RadicalFieldSpec::index_of(const std::vector<unsigned>& e) const {
  std::size_t k = 0;
  for (std::size_t i = e.size(); i-- > 0;) k = k * n_ + e[i];
  return k;
}

Integer RadicalFieldSpec::galois_degree_bound() const { return Integer(static_cast<unsigned long>(dim_)) * euler_phi(n_); }

ComplexInterval RadicalFieldSpec::generator_image(std::size_t i, std::size_t embedding, mpfr_prec_t prec) const {
  const Interval modulus = Interval::point(Rational(integral_[i]), prec).pow(frac(1, n_));
  const unsigned k = digits_[embedding][i];
  if (k == 0) return {modulus, Interval::point(Rational(0), prec)};
  const Interval angle = Interval::pi(prec) * Interval::point(frac(2 * k, n_), prec);
  return {modulus * angle.cos(), modulus * angle.sin()};
}

FieldElement::FieldElement(FieldSpecPtr spec) : spec_(std::move(spec)), c_(spec_->dimension()) {}

FieldElement::FieldElement(FieldSpecPtr spec, const Rational& q) : FieldElement(std::move(spec)) {
  c_[0] = q;
  c_[0].canonicalize();
}

FieldElement::FieldElement(FieldSpecPtr spec, std::vector<Rational> coefficients)
    : spec_(std::move(spec)), c_(std::move(coefficients)) {
  if (c_.size() != spec_->dimension()) throw DomainError("coefficient vector has the wrong dimension");
  for (auto& q : c_) q.canonicalize();
}

FieldElement FieldElement::generator(FieldSpecPtr spec, std::size_t i) {
  if (i >= spec->generators()) throw DomainError("generator index out of range");
  std::vector<unsigned> e(spec->generators(), 0);
  e[i] = 1;
  FieldElement x(spec);
  x.c_[spec->index_of(e)] = Rational(1) / Rational(spec->scales()[i]);
  return x;
}

FieldElement FieldElement::monomial(FieldSpecPtr spec, const std::vector<unsigned>& e) {
  FieldElement x(spec);
  x.c_[spec->index_of(e)] = 1;
  return x;
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_monomial() const {
  return std::count_if(c_.begin(), c_.end(), [](const Rational& q) { return q != 0; }) <= 1;
}

Rational FieldElement::rational_value() const {
  if (!is_rational()) throw DomainError("element is not rational");
  return c_[0];
}

bool FieldElement::has_integral_coordinates() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

Integer FieldElement::coordinate_denominator() const {
  Integer d = 1;
  for (const auto& q : c_) d = lcm(d, q.get_den());
  return d;
}

void FieldElement::check_same(const FieldElement& o) const {
  if (spec_ != o.spec_ && !(*spec_ == *o.spec_)) throw DomainError("elements of different fields");
}

FieldElement FieldElement::operator-() const {
  FieldElement r(spec_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
  return r;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  FieldElement r(a.spec_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  FieldElement r(a.spec_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
  return r;
}

FieldElement operator*(const Rational& q, const FieldElement& a) {
  FieldElement r(a.spec_);
  if (q == 0) return r;
  for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = q * a.c_[i];
  return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  const auto& spec = *a.spec_;
  const std::size_t dim = spec.dimension(), s = spec.generators();
  const unsigned n = spec.degree();
  FieldElement r(a.spec_);
  std::vector<unsigned> e(s);
  for (std::size_t i = 0; i < dim; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (b.c_[j] == 0) continue;
      Integer factor = 1;
      for (std::size_t g = 0; g < s; ++g) {
        e[g] = spec.exponents(i)[g] + spec.exponents(j)[g];
        if (e[g] >= n) {
          e[g] -= n;
          factor *= spec.integral_radicands()[g];
        }
      }
      r.c_[spec.index_of(e)] += a.c_[i] * b.c_[j] * factor;
    }
  }
  return r;
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  return a.c_ == b.c_;
}

RationalMatrix FieldElement::multiplication_matrix() const {
  const std::size_t dim = spec_->dimension();
  RationalMatrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const FieldElement col = *this * monomial(spec_, spec_->exponents(j));
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = col.c_[i];
  }
  return m;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (is_rational()) return FieldElement(spec_, Rational(1) / c_[0]);
  std::vector<Rational> rhs(spec_->dimension());
  rhs[0] = 1;
  return FieldElement(spec_, solve(multiplication_matrix(), std::move(rhs)));
}

Rational FieldElement::norm() const { return determinant(multiplication_matrix()); }

ComplexInterval FieldElement::embed(std::size_t embedding, mpfr_prec_t prec) const {
  const auto& spec = *spec_;
  const std::size_t s = spec.generators();
  const unsigned n = spec.degree();
  const Interval zero = Interval::point(Rational(0), prec);
  // powers[g][e] = image of phi_g^e.
  std::vector<std::vector<ComplexInterval>> powers(s);
  for (std::size_t g = 0; g < s; ++g) {
    powers[g].push_back({Interval::point(Rational(1), prec), zero});
    const ComplexInterval z = spec.generator_image(g, embedding, prec);
    for (unsigned e = 1; e < n; ++e) powers[g].push_back(powers[g].back() * z);
  }
  ComplexInterval sum{zero, zero};
  for (std::size_t k = 0; k < spec.dimension(); ++k) {
    if (c_[k] == 0) continue;
    ComplexInterval term{Interval::point(c_[k], prec), zero};
    for (std::size_t g = 0; g < s; ++g)
      if (spec.exponents(k)[g] != 0) term = term * powers[g][spec.exponents(k)[g]];
    sum = sum + term;
  }
  return sum;
}

Interval FieldElement::real_value(mpfr_prec_t prec) const { return embed(0, prec).re; }

int FieldElement::real_sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(c_[0]);
  return with_adaptive_precision<int>([&](mpfr_prec_t prec) -> std::optional<int> {
    const Interval v = real_value(prec);
    if (v.certainly_positive()) return 1;
    if (v.certainly_negative()) return -1;
    return std::nullopt;
  });
}

std::vector<Interval> conjugate_moduli(const FieldElement& x, mpfr_prec_t prec) {
  std::vector<Interval> out;
  for (std::size_t k = 0; k < x.spec()->embeddings(); ++k) out.push_back(x.embed(k, prec).modulus());
  return out;
}

FieldFraction canonical_fraction(const FieldElement& x) {
  const Integer d = x.coordinate_denominator();
  return {Rational(d) * x, FieldElement(x.spec(), Rational(d))};
}

namespace {

// Checks A^{-alpha} <= |sigma(x)| <= A^alpha for every embedding.
bool within_bounds(const FieldElement& x, const Rational& alpha, const Rational& A) {
  if (x.is_zero()) return false;
  const auto& spec = *x.spec();
  if (x.is_monomial()) {
    // |sigma(c phi^e)|^{n v} = |c|^{n v} prod r_i^{e_i v}, compared with A^{+-u n}.
    std::size_t k = 0;
    while (x.coefficients()[k] == 0) ++k;
    const unsigned long u = alpha.get_num().get_ui(), v = alpha.get_den().get_ui(), n = spec.degree();
    Rational lhs = pow(abs(x.coefficients()[k]), static_cast<long>(n * v));
    for (std::size_t g = 0; g < spec.generators(); ++g)
      lhs *= Rational(pow(spec.integral_radicands()[g], spec.exponents(k)[g] * v));
    const Rational hi = pow(A, static_cast<long>(u * n));
    return compare_power(lhs, 1, hi) <= 0 && compare_power(lhs, 1, 1 / hi) >= 0;
  }
  return with_adaptive_precision<bool>([&](mpfr_prec_t prec) -> std::optional<bool> {
    const Interval hi = Interval::point(A, prec).pow(alpha);
    const Interval lo = Interval::point(Rational(1), prec) / hi;
    bool decided = true;
    for (const auto& m : conjugate_moduli(x, prec)) {
      if (m.certainly_less(lo) || hi.certainly_less(m)) return false;
      if (!(lo.certainly_less_equal(m) && m.certainly_less_equal(hi))) decided = false;
    }
    if (decided) return true;
    return std::nullopt;
  });
}

}  // namespace

WellBalancedCertificate is_well_balanced(const FieldFraction& f, const Rational& alpha, const Rational& A) {
  if (alpha < 1) throw DomainError("alpha must be at least 1");
  if (A < 2) throw DomainError("A must be at least 2");
  if (f.den.is_zero()) throw DivisionByZero("fraction with zero denominator");
  if (!f.num.has_integral_coordinates() || !f.den.has_integral_coordinates())
    throw DomainError("fraction parts must have integral coordinates");
  WellBalancedCertificate cert{alpha, A, f, conjugate_moduli(f.num), conjugate_moduli(f.den), false};
  if (f.num.is_zero()) {
    cert.valid = f.den.is_rational() && f.den.rational_value() == 1;
    return cert;
  }
  cert.valid = within_bounds(f.num, alpha, A) && within_bounds(f.den, alpha, A);
  return cert;
}

WellBalancedCertificate is_well_balanced(const FieldElement& x, const Rational& alpha, const Rational& A) {
  return is_well_balanced(canonical_fraction(x), alpha, A);
}

Integer well_balanced_exponent(const FieldElement& x, const Rational& A) {
  if (x.is_zero()) return 1;
  const auto f = canonical_fraction(x);
  const Interval log_a = Interval::point(A, kStartPrecision).log();
  Rational worst = 1;
  for (const auto* part : {&f.num, &f.den})
    for (const auto& m : conjugate_moduli(*part)) {
      const Interval l = (m.log() / log_a).abs();
      worst = std::max(worst, l.upper_rational());
    }
  return ceil(worst);
}

FieldElement inner(const KVector& u, const KVector& v) {
  if (u.size() != v.size() || u.empty()) throw DomainError("inner product of mismatched vectors");
  FieldElement s(u[0].spec());
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

KVector scale(const FieldElement& c, const KVector& v) {
  KVector r;
  for (const auto& x : v) r.push_back(c * x);
  return r;
}

KVector add(const KVector& u, const KVector& v) {
  KVector r;
  for (std::size_t i = 0; i < u.size(); ++i) r.push_back(u[i] + v[i]);
  return r;
}

namespace {

bool is_zero_vector(const KVector& v) {
  return std::all_of(v.begin(), v.end(), [](const FieldElement& x) { return x.is_zero(); });
}

std::vector<KVector> orthogonalize(const std::vector<KVector>& vectors, bool skip_dependent) {
  std::vector<KVector> out;
  std::vector<FieldElement> norms;
  for (const auto& u : vectors) {
    KVector w = u;
    for (std::size_t i = 0; i < out.size(); ++i) w = add(w, scale(-(inner(u, out[i]) / norms[i]), out[i]));
    if (is_zero_vector(w)) {
      if (skip_dependent) continue;
      throw DomainError("gram_schmidt input is linearly dependent");
    }
    norms.push_back(inner(w, w));
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

std::size_t rank(std::vector<KVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t m = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const FieldElement inv = rows[r][c].inverse();
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      rows[i] = add(rows[i], scale(-(rows[i][c] * inv), rows[r]));
    }
    ++r;
  }
  return r;
}

std::vector<KVector> gram_schmidt(const std::vector<KVector>& vectors) { return orthogonalize(vectors, false); }

DistanceResult distance_to_subspace(const std::vector<Rational>& v, const std::vector<KVector>& complement,
                                    mpfr_prec_t prec) {
  if (complement.empty()) throw DomainError("empty generator list");
  const auto spec = complement[0][0].spec();
  KVector kv;
  for (const auto& q : v) kv.emplace_back(spec, q);
  FieldElement d2(spec);
  for (const auto& u : orthogonalize(complement, true)) {
    const FieldElement p = inner(kv, u);
    d2 += p * p / inner(u, u);
  }
  DistanceResult r{Interval::point(Rational(0), prec), Interval::point(Rational(0), prec)};
  if (!d2.is_zero()) r.distance = d2.real_value(prec).sqrt();
  for (const auto& b : complement) r.max_pairing = max(r.max_pairing, inner(b, kv).real_value(prec).abs());
  return r;
}

KernelBasis kernel_basis_bounded(const std::vector<KVector>& input, std::size_t m, FieldSpecPtr spec) {
  std::vector<KVector> rows;
  for (const auto& row : input) {
    if (row.size() != m) throw DomainError("kernel row has the wrong length");
    rows.push_back(row);
  }
  std::vector<std::optional<std::size_t>> pivot_row(m);
  std::size_t r = 0;
  for (std::size_t c = m; c-- > 0 && r < rows.size();) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    rows[r] = scale(rows[r][c].inverse(), rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      rows[i] = add(rows[i], scale(-rows[i][c], rows[r]));
    }
    pivot_row[c] = r++;
  }
  if (r == m) throw ZeroKernel("kernel is trivial");

  KernelBasis out;
  out.A = 2;
  for (std::size_t f = 0; f < m; ++f) {
    if (pivot_row[f]) continue;
    KVector y(m, FieldElement(spec));
    y[f] = FieldElement(spec, Rational(1));
    for (std::size_t c = 0; c < m; ++c)
      if (pivot_row[c]) y[c] = -rows[*pivot_row[c]][f];
    Integer d = 1;
    for (const auto& x : y) d = lcm(d, x.coordinate_denominator());
    Integer g = 0;
    for (const auto& x : y)
      for (const auto& q : x.coefficients()) g = gcd(g, Integer(q.get_num() * (d / q.get_den())));
    const Rational factor = Rational(d) / Rational(g);
    std::vector<WellBalancedCertificate> certs;
    for (auto& x : y) {
      x = factor * x;
      certs.push_back(is_well_balanced(x, Rational(well_balanced_exponent(x, out.A)), out.A));
    }
    out.vectors.push_back(std::move(y));
    out.free_columns.push_back(f);
    out.certificates.push_back(std::move(certs));
  }
  return out;
}

}  // namespace supnorm
