#pragma once

// JSON encoding shared by every module and the CLI.
//   complex  = [re, im]
//   matrix   = [[complex, ...], ...]   (rows)
//   algebra  = {"blocks": [n_1, ...]}
//   element  = [matrix, ...]           (one per block)
//   morphism = {"source": algebra, "target": algebra, "matrix": matrix}
//   state    = {"algebra": algebra, "coeffs": [complex, ...]}
//            | {"algebra": algebra, "density": matrix}   (single block)

#include <string>

#include <json.hpp>

#include "cstar/algebra.hpp"
#include "cstar/errors.hpp"
#include "cstar/gns.hpp"
#include "cstar/laws.hpp"
#include "cstar/states.hpp"

namespace cstar {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the offending field path.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Finite doubles as numbers, non-finite ones as the strings "inf"/"nan".
Json number(double x);

Json to_json(Complex z);
Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Json to_json(const Algebra& a);
Json to_json(const Element& e);
Json to_json(const StarMorphism& f);
Json to_json(const State& s);

Json to_json(const MorphismReport& r);
Json to_json(const StateReport& r);
Json to_json(const IntertwinerCertificates& c);
Json to_json(const GnsCertificates& c);
Json to_json(const LawReport& r);
Json to_json(const SweepReport& r);

/// {"L": matrix, "certificates": {...}}
Json intertwiner_report(const Intertwiner& l);
/// {"quotient_dim", "null_dim", "embed", "null_basis", "pi": {"k": matrix},
///  "omega", "certificates"}
Json gns_report(const GnsRep& g, const GnsCertificates& c);

Complex complex_from_json(const Json& j, const std::string& path);
Matrix matrix_from_json(const Json& j, const std::string& path);
Vector vector_from_json(const Json& j, const std::string& path);
Algebra algebra_from_json(const Json& j, const std::string& path);
Element element_from_json(const Json& j, const Algebra& algebra, const std::string& path);
StarMorphism morphism_from_json(const Json& j, const std::string& path);
State state_from_json(const Json& j, const std::string& path);

}  // namespace cstar
