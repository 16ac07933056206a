#include "flatcusp/json_io.hpp"

#include "flatcusp/errors.hpp"

namespace flatcusp {

namespace {

std::string as_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail(ErrorKind::ParseError, "expected a rational string, got " + j.dump());
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::ParseError, std::string("bad value for ") + what + ": " + j.dump());
  }
}

}  // namespace

void to_json(Json& j, const Rational& r) { j = r.to_string(); }
void from_json(const Json& j, Rational& r) { r = Rational::parse(as_text(j)); }

void to_json(Json& j, const SquareClass& d) { j = d.to_string(); }
void from_json(const Json& j, SquareClass& d) {
  const Rational r = Rational::parse(as_text(j));
  if (r.den() != 1) fail(ErrorKind::ParseError, "discriminant must be a squarefree integer");
  d = SquareClass::from_representative(r.num());
}

void to_json(Json& j, const Place& v) { j = v.to_string(); }
Place place_from_json(const Json& j) { return Place::parse(as_text(j)); }

void to_json(Json& j, const Matrix& m) {
  j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    j.push_back(std::move(row));
  }
}

void from_json(const Json& j, Matrix& m) {
  if (!j.is_array()) fail(ErrorKind::ParseError, "matrix must be an array of rows");
  std::vector<Vector> rows;
  for (const auto& row : j) {
    if (!row.is_array()) fail(ErrorKind::ParseError, "matrix row must be an array");
    Vector v;
    for (const auto& x : row) v.push_back(x.get<Rational>());
    if (!rows.empty() && v.size() != rows.front().size())
      fail(ErrorKind::ParseError, "matrix rows have different lengths");
    rows.push_back(std::move(v));
  }
  m = Matrix(rows);
}

void to_json(Json& j, const FormInvariants& f) {
  j = Json{{"rank", f.rank},
           {"signature", {f.signature.positive, f.signature.negative}},
           {"disc", f.discriminant},
           {"hasse_neg", f.hasse_negative}};
}

void from_json(const Json& j, FormInvariants& f) {
  f.rank = get_as<std::size_t>(member(j, "rank"), "rank");
  const auto sig = get_as<std::vector<std::size_t>>(member(j, "signature"), "signature");
  if (sig.size() != 2) fail(ErrorKind::ParseError, "signature must be [r, s]");
  f.signature = {sig[0], sig[1]};
  f.discriminant = member(j, "disc").get<SquareClass>();
  f.hasse_negative.clear();
  for (const auto& v : member(j, "hasse_neg")) f.hasse_negative.insert(Place::parse(as_text(v)));
}

void to_json(Json& j, const RepGenerators& rep) {
  j = Json{{"dim", rep.dimension}, {"generators", rep.generators}};
  if (rep.group_order) j["order"] = *rep.group_order;
  if (rep.group_exponent) j["exponent"] = *rep.group_exponent;
}

void from_json(const Json& j, RepGenerators& rep) {
  rep.dimension = get_as<std::size_t>(member(j, "dim"), "dim");
  rep.generators.clear();
  for (const auto& g : member(j, "generators")) rep.generators.push_back(g.get<Matrix>());
  rep.group_order.reset();
  rep.group_exponent.reset();
  if (j.contains("order")) rep.group_order = get_as<long>(j.at("order"), "order");
  if (j.contains("exponent")) rep.group_exponent = get_as<long>(j.at("exponent"), "exponent");
}

void to_json(Json& j, const SymFormSpace& s) { j = Json{{"dim", s.dimension}, {"basis", s.basis}}; }

void from_json(const Json& j, SymFormSpace& s) {
  s.dimension = get_as<std::size_t>(member(j, "dim"), "dim");
  s.basis.clear();
  for (const auto& b : member(j, "basis")) s.basis.push_back(b.get<Matrix>());
}

void to_json(Json& j, const FlatManifoldRecord& r) {
  j = Json{{"id", r.id},
           {"name", r.name},
           {"dimension", r.dimension},
           {"holonomy_name", r.holonomy_name},
           {"holonomy_order", r.holonomy_order},
           {"holonomy_exponent", r.holonomy_exponent},
           {"b1", r.b1},
           {"condition", condition_name(r.condition)},
           {"rep_blocks", r.rep_blocks}};
}

void from_json(const Json& j, FlatManifoldRecord& r) {
  r.id = get_as<std::string>(member(j, "id"), "id");
  r.name = get_as<std::string>(member(j, "name"), "name");
  r.dimension = get_as<int>(member(j, "dimension"), "dimension");
  r.holonomy_name = get_as<std::string>(member(j, "holonomy_name"), "holonomy_name");
  r.holonomy_order = get_as<int>(member(j, "holonomy_order"), "holonomy_order");
  r.holonomy_exponent = get_as<int>(member(j, "holonomy_exponent"), "holonomy_exponent");
  r.b1 = get_as<int>(member(j, "b1"), "b1");
  r.condition = parse_condition(get_as<std::string>(member(j, "condition"), "condition"));
  r.rep_blocks = get_as<std::vector<int>>(member(j, "rep_blocks"), "rep_blocks");
}

void to_json(Json& j, const Verdict& v) {
  j = Json{{"verdict", outcome_name(v.outcome)}, {"reasons", v.reasons}};
  if (v.witness) j["witness"] = v.witness->to_string();
}

void from_json(const Json& j, Verdict& v) {
  const auto name = get_as<std::string>(member(j, "verdict"), "verdict");
  if (name == "Appears") v.outcome = Outcome::Appears;
  else if (name == "DoesNotAppear") v.outcome = Outcome::DoesNotAppear;
  else if (name == "NotObstructed") v.outcome = Outcome::NotObstructed;
  else fail(ErrorKind::ParseError, "unknown verdict " + name);
  v.reasons = get_as<std::vector<std::string>>(member(j, "reasons"), "reasons");
  v.witness.reset();
  if (j.contains("witness")) v.witness = DiagonalForm::parse(get_as<std::string>(j.at("witness"), "witness"));
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

}  // namespace flatcusp
