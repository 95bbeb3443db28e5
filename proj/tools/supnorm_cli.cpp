// Command-line front end. Exit codes: 0 ok, 1 domain or usage error, 2 resource or budget error.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "supnorm/checks.hpp"
#include "supnorm/json_io.hpp"

using namespace supnorm;
using io::Json;

namespace {

struct Global {
  std::string out;
  std::string format;  // empty: the subcommand's default
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t budget = EnumOptions{}.budget;
};

// A flat table for --format csv.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv(const Table& t) {
  std::ostringstream s;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) s << (i ? "," : "") << cells[i];
    s << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return s.str();
}

Json read_json(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open " + path);
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw DomainError("invalid JSON in " + path + ": " + e.what());
  }
}

std::optional<Rational> parse_m(const std::string& s) {
  if (s.empty() || s == "inf") return std::nullopt;
  return io::m_from_json(Json(s));
}

EnumOptions enumeration(const Global& g) {
  EnumOptions o;
  o.budget = g.budget;
  o.threads = g.threads;
  return o;
}

void emit(const Global& g, const std::string& fallback, const Json& j, const std::optional<Table>& table) {
  const std::string format = g.format.empty() ? fallback : g.format;
  std::string text;
  if (format == "csv") {
    if (!table) throw DomainError("csv output is not available for this subcommand");
    text = csv(*table);
  } else {
    text = j.dump(2) + "\n";
  }
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw DomainError("cannot write " + g.out);
  f << text;
}

std::string str(const Integer& z) { return to_string(z); }

// --- subcommands -------------------------------------------------------------

struct CountArgs {
  std::string input, q, a, b, M;
  bool matrices = false, no_prune = false;
};

void run_count(const Global& g, const CountArgs& args) {
  CountingInstance c;
  if (!args.input.empty()) {
    c = io::instance_from_json(read_json(args.input));
  } else {
    if (args.q.empty() || args.a.empty() || args.b.empty()) throw DomainError("count needs --input or --q, --a, --b");
    c.q = io::sym_from_json(read_json(args.q));
    c.a = parse_integer(args.a);
    c.b = parse_integer(args.b);
    c.M = parse_m(args.M);
    c.validate();
  }
  auto o = enumeration(g);
  o.prune = !args.no_prune;
  o.materialize = args.matrices;
  const auto s = enum_S(c, o);
  Json j = io::document();
  j.update(io::to_json(s, args.matrices));
  Table t{{"n", "a", "b", "M", "count", "nodes", "candidates", "short_circuit"},
          {{std::to_string(c.n()), str(c.a), str(c.b), io::m_to_json(c.M).get<std::string>(), std::to_string(s.count),
            std::to_string(s.stats.nodes), std::to_string(s.stats.candidates),
            s.stats.short_circuit ? "true" : "false"}}};
  emit(g, "json", j, t);
}

void run_detdiv(const Global& g, const std::string& path) {
  const auto m = io::integer_matrix_from_json(read_json(path));
  Json j = io::document();
  Json delta = Json::array(), elem = Json::array();
  for (const auto& d : determinantal_divisors(m)) delta.push_back(io::compact(d));
  for (const auto& d : smith_normal_form(m).diagonal()) elem.push_back(io::compact(d));
  j["delta"] = delta;
  j["elementary_divisors"] = elem;
  Table t{{"j", "delta", "elementary_divisor"}, {}};
  for (std::size_t i = 0; i < delta.size(); ++i)
    t.rows.push_back({std::to_string(i + 1), delta[i].dump(), elem[i].dump()});
  emit(g, "json", j, t);
}

struct QGoodArgs {
  std::string q, mode = "principal";
  std::uint64_t lo = 2, hi = 1000;
};

void run_qgood(const Global& g, const QGoodArgs& args) {
  const auto q = io::sym_from_json(read_json(args.q));
  if (args.mode != "principal" && args.mode != "all") throw DomainError("--mode is principal or all");
  const auto mode = args.mode == "all" ? MinorMode::AllPositive : MinorMode::Principal;
  const auto rs = residue_system(q, mode);
  Json j = io::document();
  Json minors = Json::array();
  for (const auto& d : minor_set(q, mode)) minors.push_back(io::to_json(d));
  j["minors"] = minors;
  j["mode"] = args.mode;
  j["residue_system"] = io::to_json(rs);
  j["range"] = Json::array({args.lo, args.hi});
  const auto good = good_prime_set(rs, std::max<std::uint64_t>(args.lo, 2), args.hi);
  j["good_primes"] = good;
  Table t{{"p"}, {}};
  for (auto p : good) t.rows.push_back({std::to_string(p)});
  emit(g, "json", j, t);
}

struct ExchangeArgs {
  std::string q, pairs_file, M, L;
  std::vector<std::string> pairs;
  unsigned D = 1;
  bool no_reenumerate = false;
};

PrimePair parse_pair(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  for (std::string x; std::getline(in, x, ',');) parts.push_back(x);
  if (parts.size() < 2 || parts.size() > 3) throw DomainError("--pair expects p,q[,nu]");
  PrimePair p{parse_integer(parts[0]), parse_integer(parts[1]), 1};
  if (parts.size() == 3) p.nu = static_cast<unsigned>(parse_integer(parts[2]).get_ui());
  if (p.p < 1 || p.q < 1 || p.nu < 1) throw DomainError("pair entries must be positive");
  return p;
}

void run_exchange(const Global& g, const ExchangeArgs& args) {
  const auto q = io::sym_from_json(read_json(args.q));
  std::vector<PrimePair> pairs;
  if (!args.pairs_file.empty()) pairs = io::pairs_from_json(read_json(args.pairs_file));
  for (const auto& s : args.pairs) pairs.push_back(parse_pair(s));
  ExchangeOptions o;
  o.enumeration = enumeration(g);
  o.D = args.D;
  if (!args.L.empty()) o.L = parse_integer(args.L);
  o.reenumerate = !args.no_reenumerate;
  const auto r = exchange_lemma(q, pairs, parse_m(args.M), o);
  Json j = io::document();
  j.update(io::to_json(r));
  emit(g, "json", j, std::nullopt);
}

struct ChainArgs {
  std::string q, L = "3", M, c1 = "1", level = "1", envelope = "100";
  unsigned D1 = 1, D2 = 1;
  std::vector<unsigned> nus;
  std::uint64_t prime_cap = 50;
};

void run_chain(const Global& g, const ChainArgs& args) {
  const auto q = io::sym_from_json(read_json(args.q));
  RecursionParams p;
  p.L = parse_integer(args.L);
  p.D1 = args.D1;
  p.D2 = args.D2;
  p.M = parse_m(args.M);
  p.c1 = parse_rational(args.c1);
  p.nus = args.nus;
  p.prime_cap = args.prime_cap;
  p.level = parse_integer(args.level);
  p.envelope_constant = parse_rational(args.envelope);
  p.enumeration = enumeration(g);
  const auto cert = proposition_driver(q, p);
  Table t{{"p", "q", "nu", "case", "backing", "count", "verified"}, {}};
  for (const auto& b : cert.pairs)
    t.rows.push_back({str(b.pair.p), str(b.pair.q), std::to_string(b.pair.nu), to_string(b.kase), b.backing,
                      b.count ? std::to_string(*b.count) : "", b.verified ? "true" : "false"});
  emit(g, "json", io::to_json(cert), t);
}

struct DeltaArgs {
  std::size_t n = 0;
  std::string c1 = "1", c6 = "1", c9 = "3", eps = "1/2", D2, M;
  unsigned D1 = 0;
};

ConstantsConfig constants(const std::string& c1, const std::string& c6, const std::string& c9, const std::string& eps) {
  ConstantsConfig k;
  k.c1 = parse_rational(c1);
  k.c6 = parse_rational(c6);
  k.c9 = parse_rational(c9);
  k.eps = parse_rational(eps);
  return k;
}

void run_delta(const Global& g, const DeltaArgs& args) {
  const auto k = constants(args.c1, args.c6, args.c9, args.eps);
  const bool explicit_params = args.D1 != 0 || !args.D2.empty() || !args.M.empty();
  if (explicit_params && (args.D1 == 0 || args.D2.empty() || args.M.empty()))
    throw DomainError("--D1, --D2 and --M must be given together");
  const auto d = explicit_params ? delta_calculator(args.n, k, args.D1, parse_integer(args.D2), parse_rational(args.M))
                                 : delta_calculator(args.n, k);
  Table t{{"n", "D1", "D2", "M", "eta", "delta", "delta_F"},
          {{std::to_string(d.n), std::to_string(d.D1), str(d.D2), to_string(d.M), to_string(d.eta),
            to_string(d.delta), to_string(d.delta_F)}}};
  emit(g, "json", io::to_json(d), t);
}

struct BoundArgs {
  std::string mu, mu_file, delta, counts;
};

std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream in(s);
  for (std::string x; std::getline(in, x, ',');) out.push_back(parse_rational(x));
  return out;
}

void run_bound(const Global& g, const BoundArgs& args) {
  SpectralParameters mu;
  if (!args.mu_file.empty())
    mu = io::mu_from_json(read_json(args.mu_file));
  else if (!args.mu.empty())
    mu.mu = parse_list(args.mu);
  else
    throw DomainError("bound needs --mu or --mu-file");
  mu.validate();
  const std::size_t n = mu.n();
  const Rational delta = args.delta.empty() ? delta_calculator(n).delta_F : parse_rational(args.delta);
  const Rational cnorm = c_function_norm(mu.mu);
  Json j = io::document();
  j["n"] = n;
  j["mu"] = Json::array();
  for (const auto& m : mu.mu) j["mu"].push_back(io::to_json(m));
  j["laplace_eigenvalue"] = io::to_json(laplace_eigenvalue(mu));
  j["inverse_c_squared"] = io::to_json(cnorm);
  j["convexity_exponent"] = io::to_json(convexity_exponent(n));
  j["delta_F"] = io::to_json(delta);
  Json pairs = Json::array();
  for (const auto& e : stronger_bound_exponents(mu, delta))
    pairs.push_back(Json{{"j", e.j},
                         {"k", e.k},
                         {"base", io::to_json(e.base)},
                         {"exponent", io::to_json(e.exponent)},
                         {"value", io::floating(e.value)}});
  j["stronger_bound"] = Json{{"factors", pairs}, {"value", io::floating(stronger_bound(mu, delta))}};
  if (!args.counts.empty()) {
    const Json c = read_json(args.counts);
    io::check_schema(c);
    std::vector<CountEntry> entries;
    for (const auto& e : c.at("counts"))
      entries.push_back({e.at("nu").get<unsigned>(), io::integer_from_json(e.at("p")), io::integer_from_json(e.at("q")),
                         static_cast<double>(io::integer_from_json(e.at("count")).get_d())});
    const double log_inv_c = 0.5 * std::log(cnorm.get_d());
    const auto r = basic_estimate(n, log_inv_c, io::rational_from_json(c.at("L0")).get_d(),
                                  io::rational_from_json(c.at("M")), c.at("primes").get<std::size_t>(), entries);
    j["basic_estimate"] = io::to_json(r);
    j["basic_estimate"].erase("schema");
  }
  emit(g, "json", j, std::nullopt);
}

int run_verify(const Global& g, const std::string& module, std::uint64_t seed) {
  const auto results = checks::run_all(module, seed);
  if (results.empty()) throw DomainError("no checks for module " + module);
  Json j = io::document();
  j["seed"] = seed;
  Json list = Json::array();
  Table t{{"id", "module", "passed"}, {}};
  bool all = true;
  for (const auto& r : results) {
    // Timings go to stderr so that stdout is reproducible.
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.info.id << " " << r.info.name << " (" << r.seconds << " s)\n";
    list.push_back(Json{{"id", r.info.id},
                        {"name", r.info.name},
                        {"module", r.info.module},
                        {"passed", r.passed},
                        {"detail", r.detail}});
    t.rows.push_back({std::to_string(r.info.id), r.info.module, r.passed ? "true" : "false"});
    all = all && r.passed;
  }
  j["checks"] = list;
  j["passed"] = all;
  emit(g, "json", j, t);
  return all ? 0 : 1;
}

void run_bench(const Global& g, const std::string& suite) {
  if (suite != "enum") throw DomainError("unknown bench suite " + suite);
  auto sym = [](std::vector<std::vector<Rational>> rows) {
    return RationalSymMatrix::make(RationalMatrix::from_rows(rows));
  };
  struct Case {
    std::string name;
    RationalSymMatrix q;
    long a, b;
  };
  const std::vector<Case> cases{
      {"I3_5_5", RationalSymMatrix::identity(3), 5, 5},
      {"I3_7_7", RationalSymMatrix::identity(3), 7, 7},
      {"Q3_3_3", sym({{2, 1, 0}, {1, 2, 1}, {0, 1, 3}}), 3, 3},
      {"I3_27_343", RationalSymMatrix::identity(3), 27, 343},
      {"I4_3_3", RationalSymMatrix::identity(4), 3, 3},
  };
  Table t{{"instance", "prune", "count", "nodes", "candidates", "pruned_pairwise", "pruned_minor", "prune_ratio",
           "seconds", "nodes_per_sec"},
          {}};
  Json rows = Json::array();
  for (const auto& c : cases)
    for (bool prune : {true, false}) {
      CountingInstance inst;
      inst.q = c.q;
      inst.a = c.a;
      inst.b = c.b;
      auto o = enumeration(g);
      o.prune = prune;
      o.materialize = false;
      const auto start = std::chrono::steady_clock::now();
      SolutionSet s;
      try {
        s = enum_S(inst, o);
      } catch (const ResourceError&) {
        t.rows.push_back({c.name, prune ? "true" : "false", "budget", "", "", "", "", "", "", ""});
        rows.push_back(Json{{"instance", c.name}, {"prune", prune}, {"budget_exceeded", true}});
        continue;
      }
      const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const auto& st = s.stats;
      // Share of visited nodes cut by the pairwise and minor tests.
      const double ratio =
          st.nodes ? static_cast<double>(st.pruned_pairwise + st.pruned_minor) / static_cast<double>(st.nodes) : 0;
      const double rate = sec > 0 ? static_cast<double>(st.nodes) / sec : 0;
      std::ostringstream r, sc, nps;
      r << ratio;
      sc << sec;
      nps << rate;
      t.rows.push_back({c.name, prune ? "true" : "false", std::to_string(s.count), std::to_string(st.nodes),
                        std::to_string(st.candidates), std::to_string(st.pruned_pairwise),
                        std::to_string(st.pruned_minor), r.str(), sc.str(), nps.str()});
      rows.push_back(Json{{"instance", c.name}, {"prune", prune}, {"count", s.count}, {"stats", io::to_json(st)},
                          {"seconds", io::floating(sec)}, {"nodes_per_sec", io::floating(rate)}});
    }
  Json j = io::document();
  j["suite"] = suite;
  j["rows"] = rows;
  emit(g, "csv", j, t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counting toolkit for sup-norm amplification arguments"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--out", g.out, "Write results to this path instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Enumeration worker count")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "Node budget per enumeration")->check(CLI::PositiveNumber);

  CountArgs count;
  auto* c = app.add_subcommand("count", "Enumerate S(Q, a, b, M)");
  c->add_option("--input", count.input, "Instance JSON with q, a, b and optional M");
  c->add_option("--q", count.q, "Matrix JSON");
  c->add_option("--a", count.a);
  c->add_option("--b", count.b);
  c->add_option("--M", count.M, "Positive rational or inf");
  c->add_flag("--matrices", count.matrices, "Include the matrices");
  c->add_flag("--no-prune", count.no_prune, "Disable pairwise and minor pruning");

  std::string detdiv_path;
  auto* d = app.add_subcommand("detdiv", "Determinantal divisors of an integer matrix");
  d->add_option("--matrix", detdiv_path, "Matrix JSON")->required();

  QGoodArgs qgood;
  auto* qg = app.add_subcommand("qgood", "Minor set, residue system and good primes of Q");
  qg->add_option("--q", qgood.q, "Matrix JSON")->required();
  qg->add_option("--lo", qgood.lo);
  qg->add_option("--hi", qgood.hi);
  qg->add_option("--mode", qgood.mode, "principal or all");

  ExchangeArgs ex;
  auto* e = app.add_subcommand("exchange", "Replace Q by Q' over a smaller field");
  e->add_option("--q", ex.q, "Matrix JSON")->required();
  e->add_option("--pairs", ex.pairs_file, "Pairs JSON");
  e->add_option("--pair", ex.pairs, "p,q[,nu]; repeatable");
  e->add_option("--M", ex.M, "Positive rational or inf");
  e->add_option("--L", ex.L, "Validate pairs against [L, 2 L^D]");
  e->add_option("--D", ex.D);
  e->add_flag("--no-reenumerate", ex.no_reenumerate);

  ChainArgs chain;
  auto* ch = app.add_subcommand("chain", "Outer and inner chains with a certificate");
  ch->add_option("--q", chain.q, "Matrix JSON")->required();
  ch->add_option("--L", chain.L);
  ch->add_option("--D1", chain.D1);
  ch->add_option("--D2", chain.D2);
  ch->add_option("--M", chain.M, "Positive rational or inf");
  ch->add_option("--c1", chain.c1);
  ch->add_option("--nu", chain.nus, "Exponents nu; repeatable, default all");
  ch->add_option("--prime-cap", chain.prime_cap);
  ch->add_option("--level", chain.level);
  ch->add_option("--envelope-constant", chain.envelope);

  DeltaArgs delta;
  auto* dl = app.add_subcommand("delta", "Exact saving delta at legal parameters");
  dl->add_option("--n", delta.n)->required()->check(CLI::Range(2, 64));
  dl->add_option("--c1", delta.c1);
  dl->add_option("--c6", delta.c6);
  dl->add_option("--c9", delta.c9);
  dl->add_option("--eps", delta.eps);
  dl->add_option("--D1", delta.D1);
  dl->add_option("--D2", delta.D2);
  dl->add_option("--M", delta.M);

  BoundArgs bound;
  auto* b = app.add_subcommand("bound", "Spectral quantities, stronger bound and basic estimate");
  b->add_option("--mu", bound.mu, "Comma-separated rationals summing to zero");
  b->add_option("--mu-file", bound.mu_file);
  b->add_option("--delta", bound.delta, "Saving on F; default from the delta calculator");
  b->add_option("--counts", bound.counts, "Counts JSON for the basic estimate");

  std::string module;
  std::uint64_t seed = checks::kDefaultSeed;
  auto* v = app.add_subcommand("verify", "Run the property suite");
  v->add_option("--module", module);
  v->add_option("--seed", seed);

  std::string suite = "enum";
  auto* bn = app.add_subcommand("bench", "Enumeration benchmarks");
  bn->add_option("--suite", suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    std::cerr << "error: " << err.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*c) run_count(g, count);
    if (*d) run_detdiv(g, detdiv_path);
    if (*qg) run_qgood(g, qgood);
    if (*e) run_exchange(g, ex);
    if (*ch) run_chain(g, chain);
    if (*dl) run_delta(g, delta);
    if (*b) run_bound(g, bound);
    if (*v) return run_verify(g, module, seed);
    if (*bn) run_bench(g, suite);
  } catch (const ResourceError& err) {
    std::cerr << "resource error: " << err.what() << "\n";
    return 2;
  } catch (const ConsistencyError& err) {
    std::cerr << "consistency error: " << err.what() << "\n";
    return 1;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const Json::exception& err) {
    std::cerr << "error: malformed input: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
