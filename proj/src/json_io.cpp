#include "supnorm/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace supnorm::io {

namespace {

// Floating values are persisted as decimal strings, never as JSON numbers.
std::string decimal(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T, class F>
Json array_of(const std::vector<T>& v, F f) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(f(x));
  return a;
}

}  // namespace

Json floating(double x) { return Json{{"decimal", decimal(x)}, {"precision", "binary64"}}; }

Json document() { return Json{{"schema", kSchema}}; }

void check_schema(const Json& j) {
  if (j.is_object() && j.contains("schema") && j["schema"] != kSchema)
    throw DomainError("unsupported schema version");
}

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const Integer& z) { return to_string(z); }

Json compact(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return to_string(z);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw DomainError("expected a rational as an integer or an \"a/b\" string");
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw DomainError("expected an integer");
}

Json to_json(const RationalMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
    a.push_back(r);
  }
  return a;
}

Json to_json(const IntegerMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(compact(m(i, k)));
    a.push_back(r);
  }
  return a;
}

namespace {

const Json& matrix_field(const Json& j) {
  if (j.is_array()) return j;
  check_schema(j);
  for (const char* key : {"q", "matrix", "Q"})
    if (j.contains(key)) return j[key];
  throw DomainError("expected a matrix or an object with \"q\" or \"matrix\"");
}

template <class T, class F>
Matrix<T> matrix_from(const Json& j, F entry) {
  const Json& m = matrix_field(j);
  if (!m.is_array() || m.empty()) throw DomainError("matrix must be a nonempty array of rows");
  std::vector<std::vector<T>> rows;
  for (const auto& r : m) {
    if (!r.is_array()) throw DomainError("matrix rows must be arrays");
    std::vector<T> row;
    for (const auto& x : r) row.push_back(entry(x));
    rows.push_back(std::move(row));
  }
  return Matrix<T>::from_rows(rows);
}

}  // namespace

RationalMatrix rational_matrix_from_json(const Json& j) { return matrix_from<Rational>(j, rational_from_json); }
IntegerMatrix integer_matrix_from_json(const Json& j) { return matrix_from<Integer>(j, integer_from_json); }

std::optional<Rational> m_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "oo") return std::nullopt;
  }
  const Rational M = rational_from_json(j);
  if (M <= 0) throw DomainError("M must be positive");
  return M;
}

Json m_to_json(const std::optional<Rational>& M) { return M ? to_json(*M) : Json("inf"); }

RationalSymMatrix sym_from_json(const Json& j) { return RationalSymMatrix::make(rational_matrix_from_json(j)); }

CountingInstance instance_from_json(const Json& j) {
  check_schema(j);
  if (!j.is_object()) throw DomainError("instance must be an object");
  CountingInstance c;
  c.q = sym_from_json(j);
  if (!j.contains("a") || !j.contains("b")) throw DomainError("instance needs \"a\" and \"b\"");
  c.a = integer_from_json(j["a"]);
  c.b = integer_from_json(j["b"]);
  c.M = j.contains("M") ? m_from_json(j["M"]) : std::nullopt;
  if (j.contains("error_constant")) c.error_constant = rational_from_json(j["error_constant"]);
  c.validate();
  return c;
}

std::vector<PrimePair> pairs_from_json(const Json& j) {
  check_schema(j);
  const Json& a = j.is_object() ? j.at("pairs") : j;
  if (!a.is_array()) throw DomainError("pairs must be an array");
  std::vector<PrimePair> out;
  for (const auto& e : a) {
    PrimePair p;
    if (e.is_array()) {
      if (e.size() != 3) throw DomainError("pair arrays are [p, q, nu]");
      p = {integer_from_json(e[0]), integer_from_json(e[1]), e[2].get<unsigned>()};
    } else {
      p = {integer_from_json(e.at("p")), integer_from_json(e.at("q")), e.value("nu", 1u)};
    }
    if (p.p < 1 || p.q < 1 || p.nu < 1) throw DomainError("pair entries must be positive");
    out.push_back(p);
  }
  return out;
}

SpectralParameters mu_from_json(const Json& j) {
  check_schema(j);
  const Json& a = j.is_object() ? j.at("mu") : j;
  SpectralParameters mu;
  for (const auto& x : a) mu.mu.push_back(rational_from_json(x));
  mu.validate();
  return mu;
}

Json to_json(const FieldSpecPtr& spec) {
  Json j{{"degree", spec->degree()}, {"dimension", spec->dimension()}};
  j["radicands"] = array_of(spec->radicands(), [](const Rational& r) { return to_json(r); });
  return j;
}

Json to_json(const FieldElement& x) {
  if (x.is_rational()) return to_json(x.rational_value());
  Json terms = Json::array();
  const auto& c = x.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) terms.push_back(Json{{"coeff", to_json(c[k])}, {"exponents", x.spec()->exponents(k)}});
  return Json{{"terms", terms}};
}

Json to_json(const KMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(array_of(row, [](const FieldElement& x) { return to_json(x); }));
  return a;
}

Json to_json(const EnumStats& s) {
  return Json{{"nodes", s.nodes},
              {"candidates", s.candidates},
              {"pruned_pairwise", s.pruned_pairwise},
              {"pruned_minor", s.pruned_minor},
              {"rejected_delta1", s.rejected_delta1},
              {"rejected_delta2", s.rejected_delta2},
              {"short_circuit", s.short_circuit}};
}

Json to_json(const SolutionSet& s, bool matrices) {
  Json j{{"count", s.count},
         {"n", s.instance.n()},
         {"a", to_json(s.instance.a)},
         {"b", to_json(s.instance.b)},
         {"M", m_to_json(s.instance.M)},
         {"target", s.instance.target().to_string()},
         {"stats", to_json(s.stats)}};
  if (matrices) j["matrices"] = array_of(s.matrices, [](const IntegerMatrix& g) { return to_json(g); });
  return j;
}

Json to_json(const ResidueSystem& r) {
  Json j{{"modulus", to_json(r.modulus())}};
  j["squarefree_parts"] = array_of(r.squarefree_parts(), [](const Integer& z) { return to_json(z); });
  if (auto a = r.allowed()) j["allowed"] = *a;
  j["provenance"] = to_json(r.provenance().entries());
  return j;
}

Json to_json(const PrimePair& p) {
  return Json{{"p", to_json(p.p)}, {"q", to_json(p.q)}, {"nu", p.nu}};
}

Json to_json(const ExchangeResult& r) {
  Json j;
  j["pairs"] = array_of(r.pairs, [](const PrimePair& p) { return to_json(p); });
  Json counts = Json::array();
  for (const auto& s : r.solutions) counts.push_back(s.count);
  j["counts"] = counts;
  j["field"] = to_json(r.h.spec);
  j["dim_H"] = r.h.dim();
  j["stacked_rows"] = r.h.stacked_rows;
  j["basis"] = array_of(r.h.basis.vectors, [](const KVector& v) {
    return array_of(v, [](const FieldElement& x) { return to_json(x); });
  });
  Json labels = Json::array();
  for (const auto& l : r.h.labels) labels.push_back(Json{{"pair", l.source}, {"gamma", l.gamma}, {"row", l.row}});
  j["generators"] = labels;
  j["p_prime"] = r.p_prime;
  j["K"] = Json{{"degree", r.k.degree()}, {"rational", r.k.is_rational()}, {"exponents", r.k.exponent_group}};
  j["q_prime"] = to_json(r.q_prime.entries);
  j["method"] = r.q_prime.method;
  if (r.q_prime.rational) j["den"] = to_json(r.q_prime.den);
  j["verified"] = r.verified;
  j["reenumerated"] = r.reenumerated;
  return j;
}

Json to_json(const Window& w) {
  Json j{{"base", to_json(w.base)}, {"lo_exp", to_json(w.lo_exp)}, {"hi_exp", to_json(w.hi_exp)}};
  j["lo"] = w.lo ? to_json(*w.lo) : Json(nullptr);
  j["hi"] = w.hi ? to_json(*w.hi) : Json(nullptr);
  j["search"] = w.empty() ? Json::array() : Json::array({w.search_lo, w.search_hi});
  j["clamped"] = w.clamped;
  return j;
}

Json to_json(const Chain& c) {
  Json levels = Json::array();
  for (const auto& l : c.levels) {
    Json j{{"j", l.j}, {"window", to_json(l.window)}, {"pairs", l.pairs.size()}};
    if (l.fresh) j["fresh_window"] = to_json(*l.fresh);
    if (l.filter) {
      j["good_primes"] = l.good_primes;
      j["filter"] = to_json(l.filter->entries());
    }
    const auto& e = l.exchange;
    j["dim_H"] = e.h.dim();
    j["p_prime"] = array_of(e.p_prime, [&](std::size_t i) { return to_json(e.pairs[i]); });
    j["K_degree"] = e.k.degree();
    j["q_prime"] = to_json(e.q_prime.entries);
    if (e.q_prime.rational) j["den"] = to_json(e.q_prime.den);
    j["verified"] = e.verified;
    levels.push_back(j);
  }
  return Json{{"levels", levels}, {"stable", c.stable}, {"dims", c.dims}};
}

Json to_json(const RecursionCertificate& c) {
  Json j = document();
  const auto& p = c.params;
  j["params"] = Json{{"L", to_json(p.L)},
                     {"D1", p.D1},
                     {"D2", p.D2},
                     {"M", m_to_json(p.M)},
                     {"c1", to_json(p.c1)},
                     {"nus", p.nus},
                     {"prime_cap", p.prime_cap},
                     {"level", to_json(p.level)},
                     {"envelope_constant", to_json(p.envelope_constant)}};
  j["n"] = c.n;
  j["flags"] = Json{{"condN", c.cond_n}, {"condD", c.cond_d}, {"nested_windows", c.nested}};
  j["i"] = c.i;
  j["k"] = c.k;
  j["scale"] = Json{{"base", to_json(p.L)}, {"exponent", to_json(c.scale_exp)}};
  j["outer"] = to_json(c.outer);
  j["inner"] = to_json(c.inner);
  j["final_window"] = to_json(c.final_window);
  j["D"] = array_of(c.D, [](const Integer& z) { return to_json(z); });
  j["Q"] = array_of(c.Q, [](const Integer& z) { return to_json(z); });
  j["residue_modulus"] = to_json(c.residue_modulus);
  j["primes"] = c.primes;
  Json pairs = Json::array();
  for (const auto& b : c.pairs) {
    Json e = to_json(b.pair);
    e["case"] = to_string(b.kase);
    e["backing"] = b.backing;
    e["count"] = b.count ? Json(*b.count) : Json(nullptr);
    e["reference"] = b.reference ? Json(*b.reference) : Json(nullptr);
    e["envelope"] = floating(b.envelope);
    e["verified"] = b.verified;
    if (!b.note.empty()) e["note"] = b.note;
    pairs.push_back(e);
  }
  j["pairs"] = pairs;
  j["sound"] = c.sound();
  return j;
}

Json to_json(const DeltaResult& d) {
  Json j = document();
  j["n"] = d.n;
  j["D1"] = d.D1;
  j["D2"] = to_json(d.D2);
  j["M"] = to_json(d.M);
  j["e_min"] = to_json(d.e_min);
  j["e_max"] = to_json(d.e_max);
  j["worst_i"] = d.worst_i;
  j["worst_k"] = d.worst_k;
  j["eta"] = to_json(d.eta);
  j["delta"] = to_json(d.delta);
  j["delta_F"] = to_json(d.delta_F);
  j["terms"] = Json{{"gain", to_json(d.gain)}, {"loss", to_json(d.loss)}, {"equal", d.gain == d.loss}};
  return j;
}

Json to_json(const BoundReport& r) {
  Json j = document();
  j["n"] = r.n;
  j["log_inv_c"] = floating(r.log_inv_c);
  j["L0"] = floating(r.L0);
  j["M"] = to_json(r.M);
  j["primes"] = r.primes;
  j["count_sums"] = array_of(r.count_sums, floating);
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(Json{{"name", t.name}, {"log_value", floating(t.log_value)}});
  j["terms"] = terms;
  j["dominant"] = r.terms[r.dominant].name;
  j["log_total"] = floating(r.log_total);
  j["exponent"] = r.exponent ? floating(*r.exponent) : Json(nullptr);
  j["delta"] = r.delta ? floating(*r.delta) : Json(nullptr);
  return j;
}

}  // namespace supnorm::io
