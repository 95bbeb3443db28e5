#include "supnorm/interval.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace supnorm {

namespace {

mpfr_prec_t joint(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  set_prec(other.prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Interval::set_prec(mpfr_prec_t prec) {
  prec_ = prec;
  mpfr_set_prec(lo_, prec);
  mpfr_set_prec(hi_, prec);
}

Interval Interval::point(const Rational& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return mpfr_lessequal_p(lo_, inner.lo_) != 0 && mpfr_greaterequal_p(hi_, inner.hi_) != 0;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

Rational Interval::lower_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational Interval::upper_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = joint(a, b);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  bool first = true;
  for (mpfr_srcptr x : {a.lo(), a.hi()})
    for (mpfr_srcptr y : {b.lo(), b.hi()}) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DivisionByZero("interval division by an interval containing zero");
  const mpfr_prec_t prec = joint(a, b);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  bool first = true;
  for (mpfr_srcptr x : {a.lo(), a.hi()})
    for (mpfr_srcptr y : {b.lo(), b.hi()}) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  Interval r(prec_);
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::square() const {
  Interval a = abs();
  Interval r(prec_);
  mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_) < 0) throw DomainError("sqrt of a negative interval");
  Interval r(prec_);
  if (mpfr_sgn(lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw DomainError("log of a non-positive interval");
  Interval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

namespace {

// f is 1-Lipschitz: enclose f([lo, hi]) by f(mid) +- radius, clipped to [-1, 1].
template <class Fn>
Interval lipschitz_trig(const Interval& x, Fn fn) {
  const mpfr_prec_t prec = x.precision();
  mpfr_t mid, rad, t;
  mpfr_inits2(prec + 2, mid, rad, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_add(mid, x.lo(), x.hi(), MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  mpfr_sub(rad, x.hi(), mid, MPFR_RNDU);
  mpfr_sub(t, mid, x.lo(), MPFR_RNDU);
  mpfr_max(rad, rad, t, MPFR_RNDU);
  mpfr_t v;
  mpfr_init2(v, prec);
  fn(v, mid, MPFR_RNDD);
  mpfr_sub(v, v, rad, MPFR_RNDD);
  if (mpfr_cmp_si(v, -1) < 0) mpfr_set_si(v, -1, MPFR_RNDD);
  Rational lo_q;
  mpfr_get_q(lo_q.get_mpq_t(), v);
  fn(v, mid, MPFR_RNDU);
  mpfr_add(v, v, rad, MPFR_RNDU);
  if (mpfr_cmp_si(v, 1) > 0) mpfr_set_si(v, 1, MPFR_RNDU);
  Rational hi_q;
  mpfr_get_q(hi_q.get_mpq_t(), v);
  mpfr_clears(mid, rad, t, v, static_cast<mpfr_ptr>(nullptr));
  return Interval::hull(Interval::point(lo_q, prec), Interval::point(hi_q, prec));
}

}  // namespace

Interval Interval::cos() const {
  return lipschitz_trig(*this, [](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) { mpfr_cos(out, in, rnd); });
}

Interval Interval::sin() const {
  return lipschitz_trig(*this, [](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) { mpfr_sin(out, in, rnd); });
}

Interval Interval::acos() const {
  if (mpfr_cmp_si(lo_, 1) > 0 || mpfr_cmp_si(hi_, -1) < 0) throw DomainError("acos argument outside [-1, 1]");
  Interval r(prec_);
  mpfr_t clipped;
  mpfr_init2(clipped, prec_);
  // acos is decreasing.
  mpfr_set(clipped, hi_, MPFR_RNDU);
  if (mpfr_cmp_si(clipped, 1) > 0) mpfr_set_si(clipped, 1, MPFR_RNDU);
  mpfr_acos(r.lo_, clipped, MPFR_RNDD);
  mpfr_set(clipped, lo_, MPFR_RNDD);
  if (mpfr_cmp_si(clipped, -1) < 0) mpfr_set_si(clipped, -1, MPFR_RNDD);
  mpfr_acos(r.hi_, clipped, MPFR_RNDU);
  mpfr_clear(clipped);
  return r;
}

Interval Interval::pow(const Rational& e) const {
  if (e == 0) return point(Rational(1), prec_);
  return (log() * point(e, prec_)).exp();
}

std::string Interval::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  std::string out = "[";
  mpfr_snprintf(buf.data(), buf.size(), "%.*RDe", digits, lo_);
  out += buf.data();
  out += ", ";
  mpfr_snprintf(buf.data(), buf.size(), "%.*RUe", digits, hi_);
  out += buf.data();
  out += "]";
  return out;
}

bool certified_within(const Rational& x, const std::function<Interval(mpfr_prec_t)>& center,
                      const std::function<Interval(mpfr_prec_t)>& radius) {
  return with_adaptive_precision<bool>([&](mpfr_prec_t prec) -> std::optional<bool> {
    const Interval dist = (Interval::point(x, prec) - center(prec)).abs();
    const Interval r = radius(prec);
    if (dist.certainly_less_equal(r)) return true;
    if (r.certainly_less(dist)) return false;
    return std::nullopt;
  });
}

}  // namespace supnorm
