#pragma once

#include "json.hpp"

#include "flatcusp/classifier.hpp"
#include "flatcusp/matrix.hpp"
#include "flatcusp/qform.hpp"
#include "flatcusp/rational.hpp"
#include "flatcusp/rep_forms.hpp"

namespace flatcusp {

using Json = nlohmann::json;

// Rationals are strings "n/d"; places are "2", "3", ... or "inf". Parse
// failures throw ParseError.

void to_json(Json& j, const Rational& r);
void from_json(const Json& j, Rational& r);

void to_json(Json& j, const SquareClass& d);
void from_json(const Json& j, SquareClass& d);

void to_json(Json& j, const Place& v);
/// Place has no default state, so reading goes through place_from_json.
Place place_from_json(const Json& j);

void to_json(Json& j, const Matrix& m);
void from_json(const Json& j, Matrix& m);

/// {"rank","signature":[r,s],"disc","hasse_neg":[...]}
void to_json(Json& j, const FormInvariants& f);
void from_json(const Json& j, FormInvariants& f);

/// {"dim","generators","order"[,"exponent"]}
void to_json(Json& j, const RepGenerators& rep);
void from_json(const Json& j, RepGenerators& rep);

void to_json(Json& j, const SymFormSpace& s);
void from_json(const Json& j, SymFormSpace& s);

void to_json(Json& j, const FlatManifoldRecord& r);
void from_json(const Json& j, FlatManifoldRecord& r);

/// {"verdict","reasons"[,"witness"]}
void to_json(Json& j, const Verdict& v);
void from_json(const Json& j, Verdict& v);

/// Parse a JSON document, converting library exceptions into ParseError.
Json parse_json(const std::string& text);

}  // namespace flatcusp
