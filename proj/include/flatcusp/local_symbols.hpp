#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>

#include "flatcusp/rational.hpp"

namespace flatcusp {

/// A place of Q: a finite prime or the real place.
class Place {
 public:
  static Place infinity() { return Place(Integer(0)); }
  /// Throws BadParameters if `p` is not prime.
  static Place prime(const Integer& p);
  static Place prime(long p) { return prime(Integer(p)); }
  /// "2", "3", ... or "inf".
  static Place parse(std::string_view text);

  bool is_infinite() const { return p_ == 0; }
  bool is_finite() const { return p_ != 0; }
  /// Only meaningful for finite places.
  const Integer& p() const { return p_; }

  std::string to_string() const { return is_infinite() ? "inf" : p_.get_str(); }

  // Finite places sorted by prime, infinity last.
  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }
  friend bool operator<(const Place& a, const Place& b) {
    if (a.is_infinite() || b.is_infinite()) return !a.is_infinite() && b.is_infinite();
    return a.p_ < b.p_;
  }

 private:
  explicit Place(Integer p) : p_(std::move(p)) {}
  Integer p_;  // 0 encodes infinity
};

using PlaceSet = std::set<Place>;

/// (a, b)_v in {+1, -1}. Throws ZeroInput.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// Legendre symbol of a rational unit at an odd prime.
int legendre_unit(const Rational& unit, const Integer& p);

/// Throws ZeroInput.
bool is_square_local(const Rational& a, const Place& v);

/// Infinity plus every prime dividing 2 * num * den of a and b. Outside this
/// set (a, b)_v = +1.
PlaceSet symbol_support(const Rational& a, const Rational& b);

/// Infinity, 2, and every prime dividing numerator or denominator of r.
PlaceSet places_of(const Rational& r);

}  // namespace flatcusp
