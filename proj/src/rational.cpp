#include "flatcusp/rational.hpp"

#include <algorithm>
#include <cctype>

#include "flatcusp/errors.hpp"

namespace flatcusp {

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) fail(ErrorKind::ZeroInput, "rational with zero denominator");
  v_ = mpq_class(numerator, denominator);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s, bool allow_sign) -> Integer {
    s = trim(s);
    std::size_t start = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) start = 1;
    if (start == s.size()) fail(ErrorKind::ParseError, "expected integer in '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        fail(ErrorKind::ParseError, "bad rational '" + std::string(text) + "'");
    }
    std::string digits(s.substr(s[0] == '+' ? 1 : 0));
    return Integer(digits, 10);
  };

  const std::string_view body = trim(text);
  const auto slash = body.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(body, true));
  const Integer n = parse_int(body.substr(0, slash), true);
  const Integer d = parse_int(body.substr(slash + 1), false);
  if (d == 0) fail(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::inverse() const {
  if (is_zero()) fail(ErrorKind::ZeroInput, "inverse of zero");
  return Rational(den(), num());
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  v_ += rhs.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  v_ -= rhs.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  v_ *= rhs.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) fail(ErrorKind::ZeroInput, "division by zero");
  v_ /= rhs.v_;
  return *this;
}

std::string Rational::to_string() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational pow(const Rational& base, unsigned long exponent) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exponent);
  return Rational(n, d);
}

bool is_prime(const Integer& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Rational Factorization::value() const {
  Integer num = 1, den = 1;
  for (const auto& [p, e] : exponents) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e > 0 ? e : -e));
    (e > 0 ? num : den) *= pe;
  }
  return Rational(sign * num, den);
}

namespace {

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long kSieve = 1'000'000;
    std::vector<bool> composite(kSieve + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kSieve; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kSieve; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
Integer rho_split(const Integer& n, const FactorBudget& budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (int attempt = 0; attempt < budget.rho_restarts; ++attempt) {
    const Integer c = attempt + 1;
    Integer y = attempt + 2, x, ys, q = 1, g = 1;
    std::size_t r = 1, iterations = 0;
    const std::size_t m = 128;
    auto step = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1 && iterations < budget.rho_iterations) {
      x = y;
      for (std::size_t i = 0; i < r; ++i) step(y);
      std::size_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::size_t lim = std::min(m, r - k);
        for (std::size_t i = 0; i < lim; ++i) {
          step(y);
          Integer diff = x - y;
          q = q * abs(diff);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
        iterations += lim;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time from the saved position.
      do {
        step(ys);
        Integer diff = x - ys;
        diff = abs(diff);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

void split_into(const Integer& n, const FactorBudget& budget, std::map<Integer, long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const Integer d = rho_split(n, budget);
  if (d == 0) {
    fail(ErrorKind::BudgetExceeded,
         "factorization budget exhausted on cofactor " + n.get_str());
  }
  split_into(d, budget, out);
  split_into(n / d, budget, out);
}

}  // namespace

std::map<Integer, long> factor_integer(const Integer& n_in, const FactorBudget& budget) {
  if (n_in <= 0) fail(ErrorKind::ZeroInput, "factor_integer expects a positive integer");
  std::map<Integer, long> out;
  Integer n = n_in;
  for (unsigned long p : small_primes()) {
    if (p > budget.trial_limit) break;
    if (Integer(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      long e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      out[Integer(p)] += e;
    }
  }
  if (n == 1) return out;
  // The sieve stops at 10^6, so trial division never certifies beyond that.
  const Integer limit = std::min(budget.trial_limit, 1'000'000ul);
  if (n <= limit * limit) {
    ++out[n];  // no divisor up to sqrt(n)
    return out;
  }
  split_into(n, budget, out);
  return out;
}

std::vector<Integer> prime_divisors(const Integer& n, const FactorBudget& budget) {
  if (n == 0) fail(ErrorKind::ZeroInput, "prime_divisors of zero");
  std::vector<Integer> out;
  for (const auto& [p, e] : factor_integer(abs(n), budget)) out.push_back(p);
  return out;
}

Factorization factor(const Rational& r, const FactorBudget& budget) {
  if (r.is_zero()) fail(ErrorKind::ZeroInput, "factor of zero");
  Factorization f;
  f.sign = r.sign();
  for (const auto& [p, e] : factor_integer(abs(r.num()), budget)) f.exponents[p] += e;
  for (const auto& [p, e] : factor_integer(r.den(), budget)) f.exponents[p] -= e;
  return f;
}

long valuation(const Rational& r, const Integer& p) {
  if (r.is_zero()) fail(ErrorKind::ZeroInput, "valuation of zero");
  Integer rest;
  const long vn = static_cast<long>(mpz_remove(rest.get_mpz_t(), r.num().get_mpz_t(), p.get_mpz_t()));
  const long vd = static_cast<long>(mpz_remove(rest.get_mpz_t(), r.den().get_mpz_t(), p.get_mpz_t()));
  return vn - vd;
}

Rational unit_part(const Rational& r, const Integer& p) {
  if (r.is_zero()) fail(ErrorKind::ZeroInput, "unit part of zero");
  Integer n, d;
  mpz_remove(n.get_mpz_t(), r.num().get_mpz_t(), p.get_mpz_t());
  mpz_remove(d.get_mpz_t(), r.den().get_mpz_t(), p.get_mpz_t());
  return Rational(n, d);
}

SquareClass SquareClass::from_representative(const Integer& representative) {
  if (representative == 0) fail(ErrorKind::ZeroInput, "square class of zero");
  for (const auto& [p, e] : factor_integer(abs(representative))) {
    if (e > 1) fail(ErrorKind::BadParameters, representative.get_str() + " is not squarefree");
  }
  return SquareClass(representative);
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.rep_.get_mpz_t(), b.rep_.get_mpz_t());
  return SquareClass(a.rep_ * b.rep_ / (g * g));
}

SquareClass square_class(const Rational& r) {
  if (r.is_zero()) fail(ErrorKind::ZeroInput, "square class of zero");
  Integer rep = r.sign();
  for (const auto& [p, e] : factor(r).exponents) {
    if (e % 2 != 0) rep *= p;
  }
  return SquareClass(rep);
}

}  // namespace flatcusp
