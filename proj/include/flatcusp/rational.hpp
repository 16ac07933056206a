#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace flatcusp {

using Integer = mpz_class;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& numerator, const Integer& denominator);

  /// Accepts "n" or "n/d" with optional sign and surrounding whitespace.
  static Rational parse(std::string_view text);

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }

  Rational abs() const;
  Rational inverse() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "n/d", or "n" when the denominator is 1.
  std::string to_string() const;

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

Rational pow(const Rational& base, unsigned long exponent);

bool is_prime(const Integer& n);

/// Exponent vector of a nonzero rational: value = sign * prod p^e.
struct Factorization {
  int sign = 1;
  std::map<Integer, long> exponents;  // keys increasing, values nonzero

  Rational value() const;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

struct FactorBudget {
  unsigned long trial_limit = 1'000'000;
  std::size_t rho_iterations = 1'000'000;
  int rho_restarts = 16;
};

Factorization factor(const Rational& r, const FactorBudget& budget = {});

/// Prime factorization of a positive integer, exponents positive.
std::map<Integer, long> factor_integer(const Integer& n, const FactorBudget& budget = {});

/// Distinct primes dividing a nonzero integer, increasing.
std::vector<Integer> prime_divisors(const Integer& n, const FactorBudget& budget = {});

/// p-adic valuation and unit part: r = p^valuation * unit_part.
long valuation(const Rational& r, const Integer& p);
Rational unit_part(const Rational& r, const Integer& p);

/// Element of Q^x / (Q^x)^2, represented by its signed squarefree integer.
class SquareClass {
 public:
  SquareClass() : rep_(1) {}

  /// Throws BadParameters unless `representative` is a nonzero squarefree integer.
  static SquareClass from_representative(const Integer& representative);

  const Integer& representative() const { return rep_; }
  int sign() const { return sgn(rep_); }
  bool is_square() const { return rep_ == 1; }
  Rational as_rational() const { return Rational(rep_); }

  friend SquareClass operator*(const SquareClass& a, const SquareClass& b);
  friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.rep_ == b.rep_; }
  friend bool operator<(const SquareClass& a, const SquareClass& b) { return a.rep_ < b.rep_; }

  std::string to_string() const { return rep_.get_str(); }

 private:
  friend SquareClass square_class(const Rational& r);
  explicit SquareClass(Integer rep) : rep_(std::move(rep)) {}
  Integer rep_;
};

/// Throws ZeroInput for r = 0.
SquareClass square_class(const Rational& r);

}  // namespace flatcusp
