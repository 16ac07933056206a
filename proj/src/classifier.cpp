#include "flatcusp/classifier.hpp"

#include <functional>
#include <sstream>

#include "flatcusp/errors.hpp"
#include "flatcusp/json_io.hpp"
#include "manifest_data.hpp"

namespace flatcusp {

namespace {

std::vector<Integer> finite_support(const FormInvariants& q) {
  std::vector<Integer> out;
  for (const auto& v : q.hasse_negative)
    if (v.is_finite()) out.push_back(v.p());
  return out;
}

bool is_one_mod(const Integer& p, long m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(m));
  return r == 1 % m;
}

void require_signature(const FormInvariants& q, std::size_t positive) {
  if (q.signature.positive != positive || q.signature.negative != 1 || q.rank != positive + 1)
    fail(ErrorKind::WrongSignature,
         "expected signature (" + std::to_string(positive) + ",1), got (" +
             std::to_string(q.signature.positive) + "," + std::to_string(q.signature.negative) + ")");
}

void require_cusp_signature(const FormInvariants& q) {
  if (q.signature.negative != 1 || q.signature.positive < 4 || q.rank != q.signature.positive + 1)
    fail(ErrorKind::WrongSignature, "expected signature (n+1,1) with n >= 3");
}

std::string join(const std::vector<Integer>& ps) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : ",") + p.get_str();
  return s;
}

bool squarefree(long n) {
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

// Searches a > 0 such that q = block(a) + B + <1,-1> with B positive definite.
std::optional<DiagonalForm> block_witness(const FormInvariants& q,
                                          const std::function<DiagonalForm(const Rational&)>& block,
                                          const SearchBudget& budget) {
  const FormInvariants f = cusp_complement_invariants(q);
  const DiagonalForm hyperbolic({1, -1});
  for (long n = 1; n <= 4 * budget.prime_bound; ++n) {
    if (!squarefree(n)) continue;
    const DiagonalForm p = block(Rational(n));
    const FormInvariants pi = invariants(p);
    if (pi.rank >= f.rank) return std::nullopt;
    const std::size_t k = f.rank - pi.rank;
    const SquareClass d_b = f.discriminant * pi.discriminant;
    // eps_f = eps_P eps_B (d_P, d_B)
    FormInvariants b_target{k, {k, 0}, d_b, {}};
    PlaceSet places = symbol_support(pi.discriminant.as_rational(), d_b.as_rational());
    places.insert(f.hasse_negative.begin(), f.hasse_negative.end());
    places.insert(pi.hasse_negative.begin(), pi.hasse_negative.end());
    for (const auto& v : places) {
      const int e = f.hasse(v) * pi.hasse(v) *
                    hilbert_symbol(pi.discriminant.as_rational(), d_b.as_rational(), v);
      if (e == -1) b_target.hasse_negative.insert(v);
    }
    try {
      b_target.validate();
      const DiagonalForm b = realize_form(b_target, budget);
      DiagonalForm w = direct_sum(direct_sum(p, b), hyperbolic);
      if (invariants(w) == q) return w;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidTarget && e.kind() != ErrorKind::BudgetExceeded) throw;
    }
  }
  return std::nullopt;
}

bool small_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Solves for the block scale a directly. With P = block(a) and B the positive
// complement, eps_B = eps_f K (a, m) where (K, m) = ((c, -d_f), -c) for <ca, a>
// and (1, d_f) for <a, a, a>. So a comes from one Hilbert-symbol target.
std::optional<DiagonalForm> solved_block_witness(const FormInvariants& q, bool triple, long c,
                                                 const SearchBudget& budget) {
  const FormInvariants f = cusp_complement_invariants(q);
  const std::size_t block_rank = triple ? 3 : 2;
  if (f.rank <= block_rank) return std::nullopt;
  const std::size_t k = f.rank - block_rank;
  if (k > 2) return std::nullopt;  // rank >= 3 complements are found by the plain search
  const Rational df = f.discriminant.as_rational();
  const Rational m = triple ? df : Rational(-c);

  PlaceSet s0;
  PlaceSet places = f.hasse_negative;
  for (const auto& v : symbol_support(Rational(c), -df)) places.insert(v);
  for (const auto& v : places) {
    const int e = f.hasse(v) * (triple ? 1 : hilbert_symbol(Rational(c), -df, v));
    if (e == -1) s0.insert(v);
  }

  PlaceSet want = s0;
  if (k == 2) {
    // only places where -d_B is a square pin (a, m); elsewhere B may absorb it
    const Rational d_b = df * Rational(c);
    want.clear();
    for (const auto& v : s0)
      if (is_square_local(-d_b, v) || !is_square_local(m, v)) want.insert(v);
    if (want.size() % 2) {
      for (long l = 3;; l += 2) {
        if (l > 4 * budget.prime_bound) return std::nullopt;
        if (!small_prime(l)) continue;
        const Place v = Place::prime(l);
        if (want.contains(v) || s0.contains(v) || is_square_local(-d_b, v) || is_square_local(m, v)) continue;
        want.insert(v);
        break;
      }
    }
  }
  try {
    const Rational a = find_positive_scalar({square_class(m), want}, budget);
    const DiagonalForm p = triple ? DiagonalForm({a, a, a}) : DiagonalForm({a * Rational(c), a});
    const FormInvariants pi = invariants(p);
    const SquareClass d_b = f.discriminant * pi.discriminant;
    FormInvariants b_target{k, {k, 0}, d_b, {}};
    PlaceSet all = places;
    for (const auto& v : places_of(a)) all.insert(v);
    for (const auto& v : want) all.insert(v);
    for (const auto& v : symbol_support(pi.discriminant.as_rational(), d_b.as_rational())) all.insert(v);
    for (const auto& v : all)
      if (f.hasse(v) * pi.hasse(v) * hilbert_symbol(pi.discriminant.as_rational(), d_b.as_rational(), v) == -1)
        b_target.hasse_negative.insert(v);
    b_target.validate();
    DiagonalForm w = direct_sum(direct_sum(p, realize_form(b_target, budget)), DiagonalForm({1, -1}));
    if (invariants(w) == q) return w;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidTarget && e.kind() != ErrorKind::BudgetExceeded) throw;
  }
  return std::nullopt;
}

// q = a1<1> + a2<1> + a3<1> + <1,..,1,-1>, the three odd blocks of a diagonal
// holonomy representation.
std::optional<DiagonalForm> odd_blocks_witness(const FormInvariants& q, const SearchBudget& budget) {
  const DiagonalForm one({1});
  std::vector<Rational> rest(q.rank - 4, Rational(1));
  rest.push_back(-1);
  const DiagonalForm g(rest);
  try {
    const auto a = decompose_into_three_odd(one, one, one, g, q, budget);
    return direct_sum(DiagonalForm({a[0], a[1], a[2]}), g);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    return std::nullopt;
  }
}

std::optional<DiagonalForm> witness_for(Condition c, const FormInvariants& q, const SearchBudget& budget) {
  switch (c) {
    case Condition::None: return odd_blocks_witness(q, budget);
    case Condition::Mod3:
      if (auto w = solved_block_witness(q, false, 3, budget)) return w;
      return block_witness(q, [](const Rational& a) { return DiagonalForm({a * Rational(3), a}); }, budget);
    case Condition::Mod4:
      if (auto w = solved_block_witness(q, false, 1, budget)) return w;
      return block_witness(q, [](const Rational& a) { return DiagonalForm({a, a}); }, budget);
    case Condition::A4:
      if (auto w = solved_block_witness(q, true, 1, budget)) return w;
      return block_witness(q, [](const Rational& a) { return DiagonalForm({a, a, a}); }, budget);
  }
  return std::nullopt;
}

Verdict appears_with_witness(Condition c, const FormInvariants& q, const SearchBudget& budget,
                             std::vector<std::string> reasons) {
  Verdict v{Outcome::Appears, std::move(reasons), witness_for(c, q, budget)};
  if (!v.witness) v.reasons.push_back("no explicit decomposition found within the search budget");
  return v;
}

long residue_modulus(Condition c) { return c == Condition::Mod3 ? 3 : (c == Condition::Mod4 ? 4 : 1); }

}  // namespace

std::string condition_name(Condition c) {
  switch (c) {
    case Condition::None: return "NONE";
    case Condition::Mod3: return "MOD3";
    case Condition::Mod4: return "MOD4";
    case Condition::A4: return "A4";
  }
  return "NONE";
}

Condition parse_condition(const std::string& name) {
  if (name == "NONE") return Condition::None;
  if (name == "MOD3") return Condition::Mod3;
  if (name == "MOD4") return Condition::Mod4;
  if (name == "A4") return Condition::A4;
  fail(ErrorKind::ParseError, "unknown condition " + name);
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Appears: return "Appears";
    case Outcome::DoesNotAppear: return "DoesNotAppear";
    case Outcome::NotObstructed: return "NotObstructed";
  }
  return "NotObstructed";
}

const std::vector<FlatManifoldRecord>& manifest() {
  static const std::vector<FlatManifoldRecord> records = [] {
    const Json doc = parse_json(detail::kManifestJson);
    return doc.at("records").get<std::vector<FlatManifoldRecord>>();
  }();
  return records;
}

const FlatManifoldRecord& find_record(const std::string& id) {
  for (const auto& r : manifest())
    if (r.id == id) return r;
  fail(ErrorKind::UnknownRecord, "no flat manifold with id " + id);
}

Verdict classify_3d(const FlatManifoldRecord& record, const FormInvariants& q, const SearchBudget& budget) {
  if (record.dimension != 3) fail(ErrorKind::UnknownRecord, record.id + " is not a 3-dimensional record");
  require_signature(q, 4);
  if (record.condition == Condition::None)
    return appears_with_witness(record.condition, q, budget, {"no condition on q for " + record.id});
  if (record.condition == Condition::A4) fail(ErrorKind::UnknownRecord, "A4 condition in dimension 3");

  const long m = residue_modulus(record.condition);
  std::vector<Integer> bad;
  for (const auto& p : finite_support(q))
    if (is_one_mod(p, m)) bad.push_back(p);
  if (!bad.empty())
    return {Outcome::DoesNotAppear,
            {"eps_p(q) = -1 at primes 1 mod " + std::to_string(m) + ": " + join(bad)},
            std::nullopt};
  return appears_with_witness(record.condition, q, budget,
                              {"eps_p(q) = 1 at every prime 1 mod " + std::to_string(m)});
}

Verdict classify_4d(const FlatManifoldRecord& record, const FormInvariants& q, const SearchBudget& budget) {
  if (record.dimension != 4) fail(ErrorKind::UnknownRecord, record.id + " is not a 4-dimensional record");
  require_signature(q, 5);
  if (record.condition == Condition::None)
    return appears_with_witness(record.condition, q, budget, {"no condition on q for " + record.id});

  const long m = residue_modulus(record.condition);
  const Rational minus_d = -q.discriminant.as_rational();
  std::vector<Integer> bad;
  for (const auto& p : finite_support(q))
    if (is_one_mod(p, m) && is_square_local(minus_d, Place::prime(p))) bad.push_back(p);
  const std::string scope = record.condition == Condition::A4
                                ? "primes where -d(q) is a square"
                                : "primes 1 mod " + std::to_string(m) + " where -d(q) is a square";
  if (!bad.empty())
    return {Outcome::DoesNotAppear, {"eps_p(q) = -1 at p = " + join(bad) + " among " + scope}, std::nullopt};
  return appears_with_witness(record.condition, q, budget, {"eps_p(q) = 1 at all " + scope});
}

Verdict classify(const FlatManifoldRecord& record, const FormInvariants& q, const SearchBudget& budget) {
  if (record.dimension == 3) return classify_3d(record, q, budget);
  if (record.dimension == 4) return classify_4d(record, q, budget);
  fail(ErrorKind::UnknownRecord, "record " + record.id + " has unsupported dimension");
}

bool square_for_all_residue_primes(const SquareClass& d, long modulus) {
  if (modulus < 1) fail(ErrorKind::BadParameters, "modulus must be positive");
  const Integer& d0 = d.representative();
  if (d0 == 1) return true;
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), d0.get_mpz_t(), 4);
  const Integer field_disc = r == 1 ? Integer(d0) : Integer(4 * d0);
  return Integer(modulus) % abs(field_disc) == 0;
}

Verdict odd_holonomy_obstruction(int b1, long exponent, const FormInvariants& q) {
  if (exponent < 3 || exponent % 2 == 0) fail(ErrorKind::BadParameters, "exponent must be odd and >= 3");
  if (b1 < 0 || b1 > 2) fail(ErrorKind::BadParameters, "b1 must be 0, 1 or 2");
  require_cusp_signature(q);
  const long m = 4 * exponent;
  const std::string mod = std::to_string(m);
  std::vector<std::string> failures;

  if (b1 == 0 && !square_for_all_residue_primes(q.discriminant, m))
    failures.push_back("d(q) = " + q.discriminant.to_string() + " is not a square at every prime 1 mod " + mod);
  std::vector<Integer> bad;
  for (const auto& p : finite_support(q)) {
    if (!is_one_mod(p, m)) continue;
    if (b1 == 2 && !is_square_local(q.discriminant.as_rational(), Place::prime(p))) continue;
    bad.push_back(p);
  }
  if (!bad.empty()) failures.push_back("eps_p(q) = -1 at p = " + join(bad) + " (1 mod " + mod + ")");

  if (!failures.empty()) return {Outcome::DoesNotAppear, failures, std::nullopt};
  return {Outcome::NotObstructed, {"necessary conditions at primes 1 mod " + mod + " hold"}, std::nullopt};
}

Verdict c3k_b1zero_classify(long n, const FormInvariants& q) {
  if (n < 4 || n % 2 != 0) fail(ErrorKind::BadParameters, "n must be even and >= 4");
  if (q.rank != static_cast<std::size_t>(n + 2)) fail(ErrorKind::WrongSignature, "q must have rank n + 2");
  require_cusp_signature(q);
  const long required = n % 4 == 0 ? -1 : -3;
  std::vector<std::string> failures;
  if (q.discriminant.representative() != required)
    failures.push_back("d(q) = " + q.discriminant.to_string() + ", expected " + std::to_string(required));
  std::vector<Integer> bad;
  for (const auto& p : finite_support(q))
    if (is_one_mod(p, 3)) bad.push_back(p);
  if (!bad.empty()) failures.push_back("eps_p(q) = -1 at p = " + join(bad) + " (1 mod 3)");
  if (!failures.empty()) return {Outcome::DoesNotAppear, failures, std::nullopt};
  return {Outcome::Appears,
          {"d(q) = " + std::to_string(required) + " and eps_p(q) = 1 at every prime 1 mod 3"},
          std::nullopt};
}

namespace {

long required_disc(long p, long n) { return n % (2 * (p - 1)) == 0 ? -1 : -p; }

void require_odd_prime(long p, ErrorKind kind) {
  if (p < 3 || !is_prime(Integer(p))) fail(kind, std::to_string(p) + " is not an odd prime");
}

}  // namespace

Verdict cpk_b1zero_disc_obstruction(long p, long n, const FormInvariants& q) {
  require_odd_prime(p, ErrorKind::BadParameters);
  if (n <= 0 || n % (p - 1) != 0) fail(ErrorKind::BadParameters, "n must be a positive multiple of p - 1");
  if (q.rank != static_cast<std::size_t>(n + 2)) fail(ErrorKind::WrongSignature, "q must have rank n + 2");
  require_cusp_signature(q);
  const long required = required_disc(p, n);
  if (q.discriminant.representative() != required)
    return {Outcome::DoesNotAppear,
            {"d(q) = " + q.discriminant.to_string() + ", expected " + std::to_string(required)},
            std::nullopt};
  return {Outcome::NotObstructed, {"d(q) = " + std::to_string(required) + " as required"}, std::nullopt};
}

FamilyDescriptor FamilyDescriptor::parse(const std::string& text) {
  FamilyDescriptor out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) fail(ErrorKind::ParseError, "family factor must be p:dim or p:fill");
    FamilyFactor f;
    try {
      f.p = std::stol(item.substr(0, colon));
      const std::string dim = item.substr(colon + 1);
      if (dim == "fill") f.fill = true;
      else f.dimension = std::stol(dim);
    } catch (const std::logic_error&) {
      fail(ErrorKind::ParseError, "bad family factor '" + item + "'");
    }
    out.factors.push_back(f);
  }
  return out;
}

std::string FamilyDescriptor::to_string() const {
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += ',';
    s += std::to_string(f.p) + ":" + (f.fill ? std::string("fill") : std::to_string(f.dimension));
  }
  return s;
}

namespace {

void check_family(const FamilyDescriptor& family) {
  if (family.factors.empty()) fail(ErrorKind::UnsupportedFamily, "empty family");
  int fills = 0;
  for (const auto& f : family.factors) {
    require_odd_prime(f.p, ErrorKind::UnsupportedFamily);
    if (f.fill) {
      ++fills;
    } else if (f.dimension <= 0 || f.dimension % (f.p - 1) != 0) {
      fail(ErrorKind::BadParameters, "factor dimension must be a positive multiple of p - 1");
    }
  }
  if (fills > 1) fail(ErrorKind::UnsupportedFamily, "at most one fill factor");
}

// d(q) = -prod(-d_i) for the summands q_i = f_i + <1,-1>.
SquareClass product_disc(const std::vector<long>& ds) {
  Rational prod = -1;
  for (long d : ds) prod *= Rational(-d);
  return square_class(prod);
}

}  // namespace

std::set<SquareClass> admissible_discriminants(const FamilyDescriptor& family, long n) {
  check_family(family);
  long fixed = 0;
  for (const auto& f : family.factors) fixed += f.fill ? 0 : f.dimension;
  std::vector<long> ds;
  bool has_fill = false;
  for (const auto& f : family.factors) {
    long dim = f.dimension;
    if (f.fill) {
      has_fill = true;
      dim = n - fixed;
      if (dim <= 0 || dim % (f.p - 1) != 0)
        fail(ErrorKind::BadParameters, "fill dimension must be a positive multiple of p - 1");
    }
    ds.push_back(required_disc(f.p, dim));
  }
  if (!has_fill && fixed != n) fail(ErrorKind::BadParameters, "factor dimensions do not add up to n");
  return {product_disc(ds)};
}

std::set<SquareClass> discriminant_branches(const FamilyDescriptor& family) {
  check_family(family);
  std::vector<long> fixed;
  long fill_p = 0;
  for (const auto& f : family.factors) {
    if (f.fill) fill_p = f.p;
    else fixed.push_back(required_disc(f.p, f.dimension));
  }
  if (fill_p == 0) return {product_disc(fixed)};
  std::set<SquareClass> out;
  for (long d : {-1L, -fill_p}) {
    auto ds = fixed;
    ds.push_back(d);
    out.insert(product_disc(ds));
  }
  return out;
}

bool incompatible_pair(const FamilyDescriptor& a, const FamilyDescriptor& b, long n) {
  const auto da = admissible_discriminants(a, n);
  const auto db = admissible_discriminants(b, n);
  for (const auto& d : da)
    if (db.contains(d)) return false;
  return true;
}

bool three_odd_blocks_guarantee(const std::vector<int>& block_ranks) {
  if (block_ranks.empty()) fail(ErrorKind::EmptyList, "no blocks given");
  int odd = 0;
  for (int r : block_ranks) {
    if (r <= 0) fail(ErrorKind::BadParameters, "block ranks must be positive");
    odd += r % 2;
  }
  return odd >= 3;
}

}  // namespace flatcusp
