#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "supnorm/checks.hpp"
#include "supnorm/json_io.hpp"

namespace py = pybind11;
using namespace supnorm;
using io::Json;

namespace {

// Entries may be int, str ("a/b") or fractions.Fraction; str() covers all three.
Rational to_rational(const py::handle& x) { return parse_rational(py::str(x).cast<std::string>()); }
Integer to_integer(const py::handle& x) { return parse_integer(py::str(x).cast<std::string>()); }

RationalMatrix rational_matrix(const py::sequence& rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (const auto& x : py::reinterpret_borrow<py::sequence>(r)) row.push_back(to_rational(x));
    out.push_back(std::move(row));
  }
  if (out.empty()) throw DomainError("matrix must be nonempty");
  return RationalMatrix::from_rows(out);
}

IntegerMatrix integer_matrix(const py::sequence& rows) {
  std::vector<std::vector<Integer>> out;
  for (const auto& r : rows) {
    std::vector<Integer> row;
    for (const auto& x : py::reinterpret_borrow<py::sequence>(r)) row.push_back(to_integer(x));
    out.push_back(std::move(row));
  }
  if (out.empty()) throw DomainError("matrix must be nonempty");
  return IntegerMatrix::from_rows(out);
}

RationalSymMatrix sym(const py::sequence& rows) { return RationalSymMatrix::make(rational_matrix(rows)); }

std::optional<Rational> opt_m(const py::object& M) {
  if (M.is_none()) return std::nullopt;
  if (py::isinstance<py::str>(M) && M.cast<std::string>() == "inf") return std::nullopt;
  return io::m_from_json(Json(py::str(M).cast<std::string>()));
}

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object with_schema(const Json& body) {
  Json j = io::document();
  j.update(body);
  return to_python(j);
}

EnumOptions enum_options(std::uint64_t budget, unsigned threads) {
  EnumOptions o;
  o.budget = budget;
  o.threads = threads;
  return o;
}

MinorMode minor_mode(const std::string& mode) {
  if (mode == "principal") return MinorMode::Principal;
  if (mode == "all") return MinorMode::AllPositive;
  throw DomainError("mode is principal or all");
}

}  // namespace

PYBIND11_MODULE(_supnorm, m) {
  m.doc() = "Exact counting toolkit: Smith forms, lattice enumeration, exchange and recursion drivers";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  (void)domain;

  m.attr("SCHEMA") = io::kSchema;

  m.def(
      "determinantal_divisors",
      [](const py::sequence& rows) {
        std::vector<std::string> out;
        for (const auto& d : determinantal_divisors(integer_matrix(rows))) out.push_back(to_string(d));
        return out;
      },
      py::arg("matrix"), "Delta_j for j = 1..n as decimal strings.");

  m.def(
      "smith_normal_form",
      [](const py::sequence& rows) {
        const auto s = smith_normal_form(integer_matrix(rows));
        return to_python(Json{{"U", io::to_json(s.U)}, {"D", io::to_json(s.D)}, {"V", io::to_json(s.V)}});
      },
      py::arg("matrix"));

  m.def(
      "is_q_good", [](const py::handle& p, const py::sequence& q, const std::string& mode) {
        return is_q_good(to_integer(p), sym(q), minor_mode(mode));
      },
      py::arg("p"), py::arg("q"), py::arg("mode") = "principal");

  m.def(
      "residue_system",
      [](const py::sequence& q, const std::string& mode) { return to_python(io::to_json(residue_system(sym(q), minor_mode(mode)))); },
      py::arg("q"), py::arg("mode") = "principal");

  m.def(
      "good_primes",
      [](const py::sequence& q, std::uint64_t lo, std::uint64_t hi, const std::string& mode) {
        return good_prime_set(residue_system(sym(q), minor_mode(mode)), lo, hi);
      },
      py::arg("q"), py::arg("lo"), py::arg("hi"), py::arg("mode") = "principal");

  m.def(
      "count",
      [](const py::sequence& q, const py::handle& a, const py::handle& b, const py::object& M, bool matrices,
         std::uint64_t budget, unsigned threads) {
        CountingInstance c;
        c.q = sym(q);
        c.a = to_integer(a);
        c.b = to_integer(b);
        c.M = opt_m(M);
        c.validate();
        auto o = enum_options(budget, threads);
        o.materialize = matrices;
        return with_schema(io::to_json(enum_S(c, o), matrices));
      },
      py::arg("q"), py::arg("a"), py::arg("b"), py::arg("M") = py::none(), py::arg("matrices") = false,
      py::arg("budget") = EnumOptions{}.budget, py::arg("threads") = 1, "Enumerate S(Q, a, b, M).");

  m.def(
      "exchange",
      [](const py::sequence& q, const std::vector<std::tuple<py::object, py::object, unsigned>>& pairs,
         const py::object& M, std::uint64_t budget) {
        std::vector<PrimePair> ps;
        for (const auto& [p, r, nu] : pairs) ps.push_back({to_integer(p), to_integer(r), nu});
        ExchangeOptions o;
        o.enumeration = enum_options(budget, 1);
        return with_schema(io::to_json(exchange_lemma(sym(q), ps, opt_m(M), o)));
      },
      py::arg("q"), py::arg("pairs"), py::arg("M") = py::none(), py::arg("budget") = EnumOptions{}.budget);

  m.def(
      "chain",
      [](const py::sequence& q, const py::handle& L, unsigned D1, unsigned D2, const std::vector<unsigned>& nus,
         std::uint64_t prime_cap, const py::object& M) {
        RecursionParams p;
        p.L = to_integer(L);
        p.D1 = D1;
        p.D2 = D2;
        p.nus = nus;
        p.prime_cap = prime_cap;
        p.M = opt_m(M);
        return to_python(io::to_json(proposition_driver(sym(q), p)));
      },
      py::arg("q"), py::arg("L") = 3, py::arg("D1") = 1, py::arg("D2") = 1, py::arg("nus") = std::vector<unsigned>{},
      py::arg("prime_cap") = 50, py::arg("M") = py::none(), "Run the recursion driver; returns the certificate.");

  m.def(
      "delta",
      [](std::size_t n, const py::object& c9) {
        ConstantsConfig k;
        if (!c9.is_none()) k.c9 = to_rational(c9);
        return to_python(io::to_json(delta_calculator(n, k)));
      },
      py::arg("n"), py::arg("c9") = py::none(), "Delta at minimal legal parameters.");

  m.def(
      "laplace_eigenvalue",
      [](const py::sequence& mu) {
        SpectralParameters s;
        for (const auto& x : mu) s.mu.push_back(to_rational(x));
        return to_string(laplace_eigenvalue(s));
      },
      py::arg("mu"));

  m.def("convexity_exponent", [](std::size_t n) { return to_string(convexity_exponent(n)); }, py::arg("n"));

  m.def(
      "verify",
      [](const std::string& module, std::uint64_t seed) {
        py::list out;
        for (const auto& r : checks::run_all(module, seed)) {
          py::dict d;
          d["id"] = r.info.id;
          d["name"] = r.info.name;
          d["module"] = r.info.module;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("module") = "", py::arg("seed") = checks::kDefaultSeed, "Run the acceptance checks.");
}
