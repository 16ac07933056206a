#include "flatcusp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "flatcusp/classifier.hpp"
#include "flatcusp/errors.hpp"
#include "flatcusp/form_builder.hpp"
#include "flatcusp/json_io.hpp"
#include "flatcusp/rep_forms.hpp"

namespace flatcusp {

namespace {

struct Options {
  std::vector<std::string> forms;
  std::vector<std::string> grams;
  std::string manifold;
  long dim = 0;
  std::string disc;
  std::string neg_support;
  std::string signature;
  std::string by;
  std::string rep;
  std::string named_rep;
  long prime = 0;
  std::string matrix;
  std::string vector;
  std::vector<std::string> blocks;
  std::string rest;
  std::string family;
  std::string family_a;
  std::string family_b;
  int b1 = -1;
  long exponent = 0;
  long prime_bound = 200;
  int max_factors = 4;
  bool text = false;
};

std::string read_source(const std::string& value) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (value[first] == '[' || value[first] == '{')) return value;
  std::ifstream in(value);
  if (!in) fail(ErrorKind::ParseError, "cannot read " + value);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

PlaceSet parse_places(const std::string& text) {
  PlaceSet out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.insert(Place::parse(item));
  }
  return out;
}

SquareClass parse_disc(const std::string& text) {
  if (text.empty()) fail(ErrorKind::ParseError, "--disc is required");
  return square_class(Rational::parse(text));
}

Matrix load_matrix(const std::string& source) { return parse_json(read_source(source)).get<Matrix>(); }

// Every --form and --gram in the order given: forms first, then Gram matrices.
std::vector<FormInvariants> all_forms(const Options& o) {
  std::vector<FormInvariants> out;
  for (const auto& f : o.forms) out.push_back(invariants(DiagonalForm::parse(f)));
  for (const auto& g : o.grams) out.push_back(invariants(load_matrix(g)));
  return out;
}

FormInvariants one_form(const Options& o) {
  const auto fs = all_forms(o);
  if (fs.size() != 1) fail(ErrorKind::ParseError, "exactly one of --form / --gram is required");
  return fs.front();
}

SearchBudget budget(const Options& o) {
  SearchBudget b;
  b.prime_bound = o.prime_bound;
  b.max_factors = o.max_factors;
  return b;
}

RepGenerators load_rep(const Options& o) {
  if (!o.rep.empty()) return parse_json(read_source(o.rep)).get<RepGenerators>();
  const std::string& n = o.named_rep;
  if (n == "order3") return order3_planar_rep();
  if (n == "order4") return order4_planar_rep();
  if (n == "a4") return a4_rep();
  if (n.rfind("trivial:", 0) == 0) return trivial_rep(std::stoul(n.substr(8)));
  if (n.rfind("prime:", 0) == 0) return cyclic_prime_rep(Integer(n.substr(6))).rep;
  fail(ErrorKind::ParseError, "need --rep FILE or --named order3|order4|a4|trivial:N|prime:P");
}

Signature parse_signature(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() != 2 || v[0].den() != 1 || v[1].den() != 1 || v[0].sign() < 0 || v[1].sign() < 0)
    fail(ErrorKind::ParseError, "--signature must be r,s");
  return {v[0].num().get_ui(), v[1].num().get_ui()};
}

void print_text(const Json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object()) {
        print_text(v, out, prefix + k + ".");
      } else {
        out << prefix << k << ": ";
        if (v.is_string()) out << v.get<std::string>();
        else out << v.dump();
        out << '\n';
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      print_text(v, out, prefix);
      if (v.is_object()) out << '\n';
    }
  } else {
    out << prefix << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

Json family_json(const FamilyDescriptor& f, long n) {
  return Json{{"descriptor", f.to_string()},
              {"admissible", admissible_discriminants(f, n)},
              {"branches", discriminant_branches(f)}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Invariants of rational quadratic forms and cusp cross-section classification", "flatcusp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--prime-bound", o.prime_bound, "largest auxiliary prime in searches")->check(CLI::PositiveNumber);
  app.add_option("--max-factors", o.max_factors, "auxiliary primes per candidate")->check(CLI::NonNegativeNumber);
  app.add_flag("--text", o.text, "plain text instead of JSON");
  app.add_flag("--json", [&o](std::int64_t) { o.text = false; }, "JSON output (default)");

  std::function<Json()> action;
  auto add = [&](const std::string& name, const std::string& help, auto body) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&action, body] { action = body; });
    return sub;
  };
  auto form_opts = [&o](CLI::App* sub) {
    sub->add_option("--form", o.forms, "diagonal form, e.g. 3,1,1,1,-1");
    // Inline JSON starts with [ which CLI11 would otherwise split as a list.
    sub->add_option("--gram", o.grams, "Gram matrix as JSON or a JSON file")->allow_extra_args(false);
  };

  form_opts(add("invariants", "rank, signature, discriminant and Hasse-Witt data",
                [&o] { return Json(one_form(o)); }));

  form_opts(add("equivalent", "rational equivalence of two forms", [&o] {
    const auto fs = all_forms(o);
    if (fs.size() != 2) fail(ErrorKind::ParseError, "need exactly two forms");
    return Json{{"equivalent", is_equivalent(fs[0], fs[1])}};
  }));

  form_opts(add("proj-equivalent", "equivalence up to a positive scalar", [&o] {
    const auto fs = all_forms(o);
    if (fs.size() != 2) fail(ErrorKind::ParseError, "need exactly two forms");
    return Json{{"proj_equivalent", is_proj_equivalent(fs[0], fs[1])}};
  }));

  {
    auto* sub = add("scale", "invariants of m * f", [&o] {
      if (o.by.empty()) fail(ErrorKind::ParseError, "--by is required");
      return Json(scale_invariants(one_form(o), Rational::parse(o.by)));
    });
    form_opts(sub);
    sub->add_option("--by", o.by, "positive rational scalar");
  }

  form_opts(add("sum", "invariants of a direct sum", [&o] {
    const auto fs = all_forms(o);
    if (fs.empty()) fail(ErrorKind::ParseError, "need at least one form");
    FormInvariants acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = sum_invariants(acc, fs[i]);
    return Json(acc);
  }));

  {
    auto* sub = add("realize", "diagonal form with prescribed invariants", [&o] {
      const Signature sig = parse_signature(o.signature);
      FormInvariants t{sig.positive + sig.negative, sig, parse_disc(o.disc), parse_places(o.neg_support)};
      if (hasse_at_infinity(sig.negative) == -1) t.hasse_negative.insert(Place::infinity());
      const DiagonalForm f = realize_form(t, budget(o));
      return Json{{"form", f.to_string()}, {"invariants", invariants(f)}};
    });
    sub->add_option("--signature", o.signature, "r,s")->required();
    sub->add_option("--disc", o.disc, "discriminant")->required();
    sub->add_option("--neg-support", o.neg_support, "finite places with eps = -1");
  }

  {
    auto* sub = add("find-c", "positive c with prescribed symbols (d, c)_p", [&o] {
      const HilbertTarget t{parse_disc(o.disc), parse_places(o.neg_support)};
      return Json{{"c", find_positive_scalar(t, budget(o))}};
    });
    sub->add_option("--disc", o.disc, "d")->required();
    sub->add_option("--neg-support", o.neg_support, "primes where the symbol is -1");
  }

  {
    auto* sub = add("combine3", "positive a, b, c twisted by x, y, z", [&o] {
      const auto xyz = parse_list(o.vector);
      if (xyz.size() != 3) fail(ErrorKind::ParseError, "--vector must be x,y,z");
      const auto abc = combine_three(xyz[0], xyz[1], xyz[2], parse_disc(o.disc), parse_places(o.neg_support), budget(o));
      return Json{{"abc", {abc[0], abc[1], abc[2]}}};
    });
    sub->add_option("--vector", o.vector, "x,y,z")->required();
    sub->add_option("--disc", o.disc, "positive d")->required();
    sub->add_option("--neg-support", o.neg_support, "primes where h = -1");
  }

  {
    auto* sub = add("decompose3", "scalars a_i with a1 f1 + a2 f2 + a3 f3 + g equivalent to q", [&o] {
      if (o.blocks.size() != 3) fail(ErrorKind::ParseError, "need exactly three --block forms");
      const DiagonalForm f1 = DiagonalForm::parse(o.blocks[0]);
      const DiagonalForm f2 = DiagonalForm::parse(o.blocks[1]);
      const DiagonalForm f3 = DiagonalForm::parse(o.blocks[2]);
      const DiagonalForm g = DiagonalForm::parse(o.rest);
      const auto a = decompose_into_three_odd(f1, f2, f3, g, one_form(o), budget(o));
      const DiagonalForm total =
          direct_sum(direct_sum(direct_sum(f1.scaled(a[0]), f2.scaled(a[1])), f3.scaled(a[2])), g);
      return Json{{"a", {a[0], a[1], a[2]}}, {"form", total.to_string()}};
    });
    form_opts(sub);
    sub->add_option("--block", o.blocks, "positive definite odd rank block (three times)");
    sub->add_option("--rest", o.rest, "remaining form g")->required();
  }

  auto rep_opts = [&o](CLI::App* sub) {
    sub->add_option("--rep", o.rep, "RepGenerators JSON or file");
    sub->add_option("--named", o.named_rep, "order3, order4, a4, trivial:N or prime:P");
  };
  rep_opts(add("invariant-forms", "basis of invariant symmetric forms", [&o] {
    const SymFormSpace s = invariant_form_space(load_rep(o));
    Json j = s;
    Json invs = Json::array();
    for (const auto& b : s.basis) {
      if (b.determinant().is_zero()) invs.push_back(nullptr);
      else invs.push_back(invariants(b));
    }
    j["basis_invariants"] = invs;
    return j;
  }));
  rep_opts(add("average-form", "group-averaged positive definite invariant form",
               [&o] { return Json{{"gram", average_form(load_rep(o))}}; }));

  add("prime-rep", "order p rep on Q^{p-1} with its invariant form", [&o] {
    const PrimeRep pr = cyclic_prime_rep(Integer(o.prime));
    return Json{{"rep", pr.rep}, {"gram", pr.gram}, {"det", pr.gram.determinant()}};
  })->add_option("--prime", o.prime, "odd prime")->required();

  {
    auto* sub = add("cusp-check", "does a flat manifold appear in the class of q", [&o] {
      const FlatManifoldRecord& r = find_record(o.manifold);
      Json j = classify(r, one_form(o), budget(o));
      j["manifold"] = r.id;
      return j;
    });
    form_opts(sub);
    sub->add_option("--manifold", o.manifold, "record id such as O3_4 or O4_26")->required();
  }

  {
    auto* sub = add("family-check", "parametric family predicates", [&o] {
      const FormInvariants q = one_form(o);
      if (o.family == "odd") return Json(odd_holonomy_obstruction(o.b1, o.exponent, q));
      if (o.family == "c3k") return Json(c3k_b1zero_classify(o.dim, q));
      if (o.family == "cpk") return Json(cpk_b1zero_disc_obstruction(o.prime, o.dim, q));
      fail(ErrorKind::UnsupportedFamily, "family must be odd, c3k or cpk");
    });
    form_opts(sub);
    sub->add_option("--family", o.family, "odd | c3k | cpk")->required();
    sub->add_option("--b1", o.b1, "first Betti number (odd family)");
    sub->add_option("--exponent", o.exponent, "holonomy exponent (odd family)");
    sub->add_option("--dim", o.dim, "flat manifold dimension n (c3k, cpk)");
    sub->add_option("--prime", o.prime, "p (cpk)");
  }

  {
    auto* sub = add("incompatible", "disjointness of admissible discriminants", [&o] {
      const auto a = FamilyDescriptor::parse(o.family_a);
      const auto b = FamilyDescriptor::parse(o.family_b);
      return Json{{"incompatible", incompatible_pair(a, b, o.dim)},
                  {"family_a", family_json(a, o.dim)},
                  {"family_b", family_json(b, o.dim)}};
    });
    sub->add_option("--family-a", o.family_a, "e.g. 3:fill")->required();
    sub->add_option("--family-b", o.family_b, "e.g. 5:28,3:fill")->required();
    sub->add_option("--dim", o.dim, "dimension n")->required();
  }

  add("tables", "embedded flat manifold records", [&o] {
    Json j = Json::array();
    for (const auto& r : manifest())
      if (o.dim == 0 || r.dimension == o.dim) j.push_back(r);
    return j;
  })->add_option("--dim", o.dim, "3 or 4");

  {
    auto* sub = add("parabolic", "parabolic embedding of (A, v)", [&o] {
      const auto fs = o.forms.size() + o.grams.size();
      if (fs != 1) fail(ErrorKind::ParseError, "exactly one of --form / --gram is required");
      const Matrix m = o.forms.empty() ? load_matrix(o.grams[0]) : DiagonalForm::parse(o.forms[0]).gram();
      const Matrix a = o.matrix.empty() ? Matrix::identity(m.rows()) : load_matrix(o.matrix);
      Vector v = parse_list(o.vector);
      if (o.vector.empty()) v.assign(m.rows(), Rational(0));
      return Json{{"matrix", parabolic_embed(m, a, v)}};
    });
    form_opts(sub);
    sub->add_option("--matrix", o.matrix, "isometry A as JSON or file (default identity)");
    sub->add_option("--vector", o.vector, "translation v, comma separated (default 0)");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 1;
  }

  try {
    const Json result = action();
    if (o.text) print_text(result, out);
    else out << result.dump() << '\n';
    return 0;
  } catch (const Error& e) {
    const Json j{{"error", std::string(e.name())}, {"message", e.what()}};
    if (o.text) err << e.name() << ": " << e.what() << '\n';
    else out << j.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    out << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
}

}  // namespace flatcusp
