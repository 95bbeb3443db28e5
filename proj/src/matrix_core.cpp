#include "supnorm/matrix_core.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace supnorm {

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

bool lex_less(const IntegerMatrix& a, const IntegerMatrix& b) {
  return std::lexicographical_compare(a.flat().begin(), a.flat().end(), b.flat().begin(), b.flat().end());
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// Maintains gamma = U * A * V while A is reduced by elementary operations.
class SmithReducer {
 public:
  explicit SmithReducer(const IntegerMatrix& gamma)
      : a_(gamma), u_(IntegerMatrix::identity(gamma.rows())), v_(IntegerMatrix::identity(gamma.cols())) {}

  SmithForm run() {
    const std::size_t r = a_.rows();
    const std::size_t c = a_.cols();
    for (std::size_t t = 0; t < std::min(r, c); ++t) {
      for (;;) {
        auto pivot = find_pivot(t);
        if (!pivot) return finish();
        swap_rows(t, pivot->first);
        swap_cols(t, pivot->second);
        bool cleared = true;
        for (std::size_t i = t + 1; i < r; ++i) {
          if (a_(i, t) == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
          add_row(i, t, -q);
          if (a_(i, t) != 0) cleared = false;
        }
        for (std::size_t j = t + 1; j < c; ++j) {
          if (a_(t, j) == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
          add_col(j, t, -q);
          if (a_(t, j) != 0) cleared = false;
        }
        if (!cleared) continue;
        // The pivot must divide the whole remaining block.
        bool divides = true;
        for (std::size_t i = t + 1; i < r && divides; ++i)
          for (std::size_t j = t + 1; j < c; ++j)
            if (mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t()) == 0) {
              add_row(t, i, Integer(1));
              divides = false;
              break;
            }
        if (divides) break;
      }
      if (a_(t, t) < 0) negate_row(t);
    }
    return finish();
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j) == 0) continue;
        Integer v = a_(i, j) < 0 ? Integer(-a_(i, j)) : a_(i, j);
        if (!best || v < best_abs) {
          best = {i, j};
          best_abs = v;
        }
      }
    return best;
  }

  SmithForm finish() { return {std::move(u_), std::move(a_), std::move(v_)}; }

  // row_i += c * row_j on A; U absorbs the inverse as a column operation.
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < a_.cols(); ++k) a_(i, k) += c * a_(j, k);
    for (std::size_t k = 0; k < u_.rows(); ++k) u_(k, j) -= c * u_(k, i);
  }

  // col_i += c * col_j on A; V absorbs the inverse as a row operation.
  void add_col(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < a_.rows(); ++k) a_(k, i) += c * a_(k, j);
    for (std::size_t k = 0; k < v_.cols(); ++k) v_(j, k) -= c * v_(i, k);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a_.cols(); ++k) std::swap(a_(i, k), a_(j, k));
    for (std::size_t k = 0; k < u_.rows(); ++k) std::swap(u_(k, i), u_(k, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a_.rows(); ++k) std::swap(a_(k, i), a_(k, j));
    for (std::size_t k = 0; k < v_.cols(); ++k) std::swap(v_(i, k), v_(j, k));
  }

  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < a_.cols(); ++k) a_(i, k) = -a_(i, k);
    for (std::size_t k = 0; k < u_.rows(); ++k) u_(k, i) = -u_(k, i);
  }

  IntegerMatrix a_, u_, v_;
};

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& gamma) { return SmithReducer(gamma).run(); }

std::vector<Integer> determinantal_divisors(const IntegerMatrix& gamma) {
  const auto d = smith_normal_form(gamma).diagonal();
  std::vector<Integer> out;
  Integer acc = 1;
  for (const auto& x : d) {
    acc *= x;
    out.push_back(acc);
  }
  return out;
}

Integer determinantal_divisor(const IntegerMatrix& gamma, std::size_t j) {
  const std::size_t k = std::min(gamma.rows(), gamma.cols());
  if (j < 1 || j > k) throw DomainError("determinantal divisor index out of range");
  return determinantal_divisors(gamma)[j - 1];
}

Integer determinant(const IntegerMatrix& m) {
  if (!m.square()) throw DomainError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntegerMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(s, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const RationalMatrix& m) {
  if (!m.square()) throw DomainError("determinant of non-square matrix");
  RationalMatrix a = m;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t s = k;
    while (s < n && a(s, k) == 0) ++s;
    if (s == n) return 0;
    if (s != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(s, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

Integer denominator(const RationalMatrix& q) {
  Integer d = 1;
  for (const auto& x : q.flat()) d = lcm(d, Integer(x.get_den()));
  return d;
}

bool is_symmetric(const RationalMatrix& q) {
  if (!q.square()) return false;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = i + 1; j < q.cols(); ++j)
      if (q(i, j) != q(j, i)) return false;
  return true;
}

bool is_positive_definite(const RationalMatrix& q) {
  if (!is_symmetric(q)) return false;
  // Symmetric Gaussian elimination without pivoting: all pivots positive
  // iff all leading principal minors are positive.
  RationalMatrix a = q;
  const std::size_t n = q.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

RationalSymMatrix RationalSymMatrix::make(RationalMatrix entries, std::size_t max_dimension) {
  if (!entries.square() || entries.rows() < 1) throw DomainError("matrix must be square and non-empty");
  if (entries.rows() > max_dimension) throw DomainError("dimension exceeds configured cap");
  if (!is_symmetric(entries)) throw DomainError("matrix is not symmetric");
  if (!is_positive_definite(entries)) throw DomainError("matrix is not positive definite");
  RationalSymMatrix q;
  q.den_ = denominator(entries);
  q.integral_ = IntegerMatrix(entries.rows(), entries.cols());
  for (std::size_t i = 0; i < entries.rows(); ++i)
    for (std::size_t j = 0; j < entries.cols(); ++j) {
      Rational v = entries(i, j) * Rational(q.den_);
      q.integral_(i, j) = v.get_num();
    }
  q.entries_ = std::move(entries);
  return q;
}

RationalSymMatrix RationalSymMatrix::identity(std::size_t n) { return make(RationalMatrix::identity(n)); }

std::set<Integer> minor_set(const RationalSymMatrix& q, MinorMode mode) {
  const auto& t = q.integral();
  const std::size_t n = q.n();
  std::set<Integer> out;
  if (mode == MinorMode::Principal) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out.insert(t(i, i) * t(j, j) - t(i, j) * t(j, i));
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t i2 = i + 1; i2 < n; ++i2)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t j2 = j + 1; j2 < n; ++j2) {
          Integer d = t(i, j) * t(i2, j2) - t(i, j2) * t(i2, j);
          if (d > 0) out.insert(d);
        }
  return out;
}

bool is_quadratic_nonresidue(const Integer& a, const Integer& p) {
  if (p == 2) return false;
  Integer r = mod(a, p);
  if (r == 0) return false;
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t()) == -1;
}

bool is_q_good(const Integer& p, const RationalSymMatrix& q, MinorMode mode) {
  const auto& t = q.integral();
  for (std::size_t i = 0; i < q.n(); ++i)
    if (mpz_divisible_p(t(i, i).get_mpz_t(), p.get_mpz_t()) != 0) return false;
  for (const auto& d : minor_set(q, mode))
    if (!is_quadratic_nonresidue(-d, p)) return false;
  return true;
}

Region::Region(RationalMatrix outer_lo, RationalMatrix outer_hi, RationalMatrix inner_lo, RationalMatrix inner_hi)
    : outer_lo_(std::move(outer_lo)),
      outer_hi_(std::move(outer_hi)),
      inner_lo_(std::move(inner_lo)),
      inner_hi_(std::move(inner_hi)) {
  const std::size_t n = outer_lo_.rows();
  for (const auto* m : {&outer_lo_, &outer_hi_, &inner_lo_, &inner_hi_})
    if (m->rows() != n || m->cols() != n) throw DomainError("region bounds have inconsistent shapes");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!(outer_lo_(i, j) < inner_lo_(i, j) && inner_lo_(i, j) <= inner_hi_(i, j) &&
            inner_hi_(i, j) < outer_hi_(i, j)))
        throw DomainError("inner region box must lie strictly inside the outer box");
    }
}

Region Region::around(const RationalMatrix& center, const Rational& half_width, const Rational& margin_fraction) {
  if (half_width <= 0) throw DomainError("region half-width must be positive");
  if (margin_fraction <= 0 || margin_fraction >= Rational(1, 2)) throw DomainError("margin fraction must be in (0, 1/2)");
  const std::size_t n = center.rows();
  RationalMatrix olo(n, n), ohi(n, n), ilo(n, n), ihi(n, n);
  const Rational margin = margin_fraction * 2 * half_width;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      olo(i, j) = center(i, j) - half_width;
      ohi(i, j) = center(i, j) + half_width;
      ilo(i, j) = olo(i, j) + margin;
      ihi(i, j) = ohi(i, j) - margin;
    }
  return Region(olo, ohi, ilo, ihi);
}

bool Region::contains(const RationalMatrix& q) const {
  if (q.rows() != n() || q.cols() != n()) return false;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j)
      if (!(outer_lo_(i, j) < q(i, j) && q(i, j) < outer_hi_(i, j))) return false;
  return is_positive_definite(q);
}

bool Region::contains_inner(const RationalMatrix& q) const {
  if (q.rows() != n() || q.cols() != n()) return false;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j)
      if (!(inner_lo_(i, j) <= q(i, j) && q(i, j) <= inner_hi_(i, j))) return false;
  return is_positive_definite(q);
}

}  // namespace supnorm
