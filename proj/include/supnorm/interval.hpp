#pragma once

#include <mpfr.h>

#include <functional>
#include <optional>
#include <string>

#include "supnorm/errors.hpp"
#include "supnorm/numeric.hpp"

namespace supnorm {

inline constexpr mpfr_prec_t kStartPrecision = 128;
inline constexpr mpfr_prec_t kMaxPrecision = 4096;

// Closed real interval [lo, hi] with MPFR endpoints. Every operation rounds
// outward, so the true value is always contained.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kStartPrecision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval point(const Rational& q, mpfr_prec_t prec);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval pi(mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double width() const;

  bool contains(const Rational& q) const;
  bool contains(const Interval& inner) const;
  bool contains_zero() const;
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  // Strict separation: every point of *this lies below every point of other.
  bool certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }
  bool certainly_less_equal(const Interval& other) const { return mpfr_lessequal_p(hi_, other.lo_) != 0; }

  // Rational bounds enclosing the interval (exact conversions of endpoints).
  Rational lower_rational() const;
  Rational upper_rational() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  // Enclosure of max(x, y) over x in a, y in b.
  friend Interval max(const Interval& a, const Interval& b);
  Interval operator-() const;

  Interval square() const;
  Interval abs() const;
  Interval sqrt() const;
  Interval log() const;
  Interval exp() const;
  Interval cos() const;
  Interval sin() const;
  Interval acos() const;

  // x^e for x > 0 and rational e.
  Interval pow(const Rational& e) const;

  // "[lo, hi]" in decimal with the given number of significant digits.
  std::string to_string(int digits = 20) const;

 private:
  void set_prec(mpfr_prec_t prec);
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

struct ComplexInterval {
  Interval re;
  Interval im;

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Interval modulus() const { return (re.square() + im.square()).sqrt(); }
};

// Runs attempt(prec) at 128, 256, ... bits until it yields a value. Throws
// ResourceError when the cap is reached undecided.
template <class T>
T with_adaptive_precision(const std::function<std::optional<T>(mpfr_prec_t)>& attempt,
                          mpfr_prec_t cap = kMaxPrecision) {
  for (mpfr_prec_t prec = kStartPrecision; prec <= cap; prec *= 2) {
    if (auto r = attempt(prec)) return *r;
  }
  throw ResourceError("certified comparison undecided at precision cap");
}

// Certified decision of |x - center| <= radius for rational x, with center
// and radius given as interval-valued functions of precision.
bool certified_within(const Rational& x, const std::function<Interval(mpfr_prec_t)>& center,
                      const std::function<Interval(mpfr_prec_t)>& radius);

}  // namespace supnorm
