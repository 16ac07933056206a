#include "flatcusp/local_symbols.hpp"

#include "flatcusp/errors.hpp"

namespace flatcusp {

namespace {

int residue_mod8(const Rational& odd_unit) {
  // d^{-1} = d mod 8 for odd d.
  Integer r = odd_unit.num() * odd_unit.den();
  mpz_fdiv_r_ui(r.get_mpz_t(), r.get_mpz_t(), 8);
  return static_cast<int>(r.get_si());
}

// (u - 1)/2 mod 2 and (u^2 - 1)/8 mod 2 of an odd residue u mod 8.
int eps2(int u) { return (u == 3 || u == 7) ? 1 : 0; }
int omega2(int u) { return (u == 3 || u == 5) ? 1 : 0; }

int legendre_int(const Integer& n, const Integer& p) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

void require_nonzero(const Rational& a, const char* what) {
  if (a.is_zero()) fail(ErrorKind::ZeroInput, std::string(what) + ": zero argument");
}

}  // namespace

Place Place::prime(const Integer& p) {
  if (!is_prime(p)) fail(ErrorKind::BadParameters, p.get_str() + " is not a prime");
  return Place(p);
}

Place Place::parse(std::string_view text) {
  if (text == "inf" || text == "infinity") return infinity();
  const Rational r = Rational::parse(text);
  if (r.den() != 1) fail(ErrorKind::ParseError, "place must be a prime or 'inf': " + std::string(text));
  return prime(r.num());
}

int legendre_unit(const Rational& unit, const Integer& p) {
  const int s = legendre_int(unit.num(), p) * legendre_int(unit.den(), p);
  if (s == 0) fail(ErrorKind::BadParameters, "legendre_unit: argument is not a unit at " + p.get_str());
  return s;
}

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  require_nonzero(a, "hilbert_symbol");
  require_nonzero(b, "hilbert_symbol");
  if (v.is_infinite()) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;

  const Integer& p = v.p();
  const long alpha = valuation(a, p);
  const long beta = valuation(b, p);
  const Rational u = unit_part(a, p);
  const Rational w = unit_part(b, p);

  if (p == 2) {
    const int ur = residue_mod8(u);
    const int wr = residue_mod8(w);
    const long e = eps2(ur) * eps2(wr) + (alpha & 1) * omega2(wr) + (beta & 1) * omega2(ur);
    return (e & 1) ? -1 : 1;
  }

  int s = 1;
  // (-1)^{alpha beta (p-1)/2}
  if ((alpha & 1) && (beta & 1) && mpz_tstbit(p.get_mpz_t(), 1)) s = -s;
  if (beta & 1) s *= legendre_unit(u, p);
  if (alpha & 1) s *= legendre_unit(w, p);
  return s;
}

bool is_square_local(const Rational& a, const Place& v) {
  require_nonzero(a, "is_square_local");
  if (v.is_infinite()) return a.sign() > 0;
  const Integer& p = v.p();
  if (valuation(a, p) % 2 != 0) return false;
  const Rational u = unit_part(a, p);
  if (p == 2) return residue_mod8(u) == 1;
  return legendre_unit(u, p) == 1;
}

PlaceSet places_of(const Rational& r) {
  require_nonzero(r, "places_of");
  PlaceSet out{Place::infinity(), Place::prime(2)};
  for (const auto& [p, e] : factor(r).exponents) out.insert(Place::prime(p));
  return out;
}

PlaceSet symbol_support(const Rational& a, const Rational& b) {
  require_nonzero(a, "symbol_support");
  require_nonzero(b, "symbol_support");
  PlaceSet out = places_of(a);
  out.merge(places_of(b));
  return out;
}

}  // namespace flatcusp
