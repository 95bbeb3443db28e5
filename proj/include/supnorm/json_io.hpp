#pragma once

#include <json.hpp>

#include "supnorm/bound.hpp"
#include "supnorm/exchange.hpp"
#include "supnorm/lattice_enum.hpp"
#include "supnorm/primes.hpp"
#include "supnorm/recursion.hpp"

namespace supnorm::io {

using Json = nlohmann::json;

inline constexpr int kSchema = 1;

// Every top-level document carries "schema": 1.
Json document();
void check_schema(const Json& j);

// Rationals and big integers travel as strings; plain JSON integers are accepted on input.
Json to_json(const Rational& q);
Json to_json(const Integer& z);
Rational rational_from_json(const Json& j);
Integer integer_from_json(const Json& j);
// Integer as a JSON number when it fits in 64 bits, else as a string.
Json compact(const Integer& z);
// Doubles travel as {"decimal": "%.17g", "precision": "binary64"}.
Json floating(double x);

Json to_json(const RationalMatrix& m);
Json to_json(const IntegerMatrix& m);
RationalMatrix rational_matrix_from_json(const Json& j);
IntegerMatrix integer_matrix_from_json(const Json& j);

// "inf" or a rational.
std::optional<Rational> m_from_json(const Json& j);
Json m_to_json(const std::optional<Rational>& M);

// Accepts a bare matrix or an object with "q" (or "matrix").
RationalSymMatrix sym_from_json(const Json& j);
CountingInstance instance_from_json(const Json& j);
std::vector<PrimePair> pairs_from_json(const Json& j);
SpectralParameters mu_from_json(const Json& j);

Json to_json(const FieldSpecPtr& spec);
Json to_json(const FieldElement& x);
Json to_json(const KMatrix& m);
Json to_json(const EnumStats& s);
Json to_json(const SolutionSet& s, bool matrices);
Json to_json(const ResidueSystem& r);
Json to_json(const PrimePair& p);
Json to_json(const ExchangeResult& r);
Json to_json(const Window& w);
Json to_json(const Chain& c);
Json to_json(const RecursionCertificate& c);
Json to_json(const DeltaResult& d);
Json to_json(const BoundReport& r);

}  // namespace supnorm::io
