#pragma once

// Reference implementations used only by tests. None of these call into the
// library's symbol or square-class code.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "flatcusp/errors.hpp"
#include "flatcusp/qform.hpp"
#include "flatcusp/rational.hpp"

namespace oracle {

inline long squarefree_part(long n) {
  long sign = n < 0 ? -1 : 1;
  long m = n < 0 ? -n : n;
  long out = 1;
  for (long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  return sign * out * m;
}

inline int vp(std::int64_t n, long p) {
  if (n == 0) return 1000;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Solvability of z^2 = a x^2 + b y^2 over Q_p by lifting solutions mod p^k in
// each affine chart (one coordinate fixed to 1) until Hensel's lemma applies.
inline int hensel_hilbert(long a, long b, long p) {
  a = squarefree_part(a);
  b = squarefree_part(b);
  const int kmax = p == 2 ? 5 : 3;
  std::vector<std::int64_t> pk{1};
  for (int i = 0; i <= kmax + 1; ++i) pk.push_back(pk.back() * p);

  for (int chart = 0; chart < 3; ++chart) {
    auto point = [&](std::int64_t u, std::int64_t v) {
      std::int64_t x = 1, y = 1, z = 1;
      if (chart == 0) { y = u; z = v; }
      if (chart == 1) { x = u; z = v; }
      if (chart == 2) { x = u; y = v; }
      return std::array<std::int64_t, 3>{x, y, z};
    };
    auto value = [&](const std::array<std::int64_t, 3>& w) {
      return a * w[0] * w[0] + b * w[1] * w[1] - w[2] * w[2];
    };
    std::function<bool(int, std::int64_t, std::int64_t)> lift = [&](int k, std::int64_t u, std::int64_t v) {
      const auto w = point(u, v);
      const int t = std::min({vp(2 * a * w[0], p), vp(2 * b * w[1], p), vp(2 * w[2], p)});
      if (t < k && 2 * t + 1 <= k) return true;
      if (k == kmax) return false;
      for (std::int64_t i = 0; i < p; ++i)
        for (std::int64_t j = 0; j < p; ++j) {
          const std::int64_t u2 = u + i * pk[k], v2 = v + j * pk[k];
          if (value(point(u2, v2)) % pk[k + 1] == 0 && lift(k + 1, u2, v2)) return true;
        }
      return false;
    };
    for (std::int64_t u = 0; u < p; ++u)
      for (std::int64_t v = 0; v < p; ++v)
        if (value(point(u, v)) % p == 0 && lift(1, u, v)) return 1;
  }
  return -1;
}

inline int real_hilbert(long a, long b) { return (a < 0 && b < 0) ? -1 : 1; }

// eps_p of an integer diagonal form from pairwise oracle symbols; p = 0 is the
// real place.
inline int hasse(const std::vector<long>& entries, long p) {
  int e = 1;
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      e *= p == 0 ? real_hilbert(entries[i], entries[j]) : hensel_hilbert(entries[i], entries[j], p);
  return e;
}

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1;
  b %= m;
  if (b < 0) b += m;
  while (e) {
    if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % m);
    b = static_cast<std::int64_t>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

inline bool small_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// d a square in Q_p for every prime p = 1 mod m below `limit` (odd p only;
// squarefree d).
inline bool scan_squares(long d, long m, long limit = 10'000) {
  for (long p = m + 1; p < limit; p += m) {
    if (!small_prime(p) || p == 2) continue;
    if (d % p == 0) return false;
    if (powmod(d, (p - 1) / 2, p) != 1) return false;
  }
  return true;
}

// Fixed-seed generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return range(0, 1) == 1; }

  long nonzero(long bound) {
    long v = 0;
    while (v == 0) v = range(-bound, bound);
    return v;
  }

  flatcusp::Rational rational(long num_bound, long den_bound) {
    return flatcusp::Rational(flatcusp::Integer(nonzero(num_bound)), flatcusp::Integer(range(1, den_bound)));
  }

  flatcusp::Rational positive(long num_bound, long den_bound) {
    return flatcusp::Rational(flatcusp::Integer(range(1, num_bound)), flatcusp::Integer(range(1, den_bound)));
  }

  std::vector<flatcusp::Rational> entries(std::size_t rank, long num_bound = 30, long den_bound = 4) {
    std::vector<flatcusp::Rational> out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(rational(num_bound, den_bound));
    return out;
  }

  // Diagonal form of signature (r, s) with entries in the given order.
  flatcusp::DiagonalForm signed_form(std::size_t r, std::size_t s, long num_bound = 30) {
    std::vector<flatcusp::Rational> out;
    for (std::size_t i = 0; i < r; ++i) out.push_back(positive(num_bound, 3));
    for (std::size_t i = 0; i < s; ++i) out.push_back(-positive(num_bound, 3));
    return flatcusp::DiagonalForm(out);
  }

  flatcusp::Matrix invertible(std::size_t n, long bound = 3) {
    while (true) {
      flatcusp::Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = flatcusp::Rational(flatcusp::Integer(range(-bound, bound)),
                                                                          flatcusp::Integer(range(1, 2)));
      if (!m.determinant().is_zero()) return m;
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<long>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 rng_;
};

// A random valid invariant target: random d of sign (-1)^s and an even set
// of -1 places drawn from small primes, infinity forced by the signature.
inline flatcusp::FormInvariants random_target(Gen& g, std::size_t r, std::size_t s,
                                              const std::vector<long>& primes = {2, 3, 5, 7, 11, 13},
                                              long disc_bound = 50) {
  using namespace flatcusp;
  while (true) {
    FormInvariants t;
    t.rank = r + s;
    t.signature = {r, s};
    long d = squarefree_part(g.range(1, disc_bound));
    if (s % 2) d = -d;
    t.discriminant = square_class(Rational(d));
    if (hasse_at_infinity(s) == -1) t.hasse_negative.insert(Place::infinity());
    for (long p : primes)
      if (g.coin()) t.hasse_negative.insert(Place::prime(p));
    if (t.hasse_negative.size() % 2) continue;
    try {
      t.validate();
      return t;
    } catch (const Error&) {
    }
  }
}

}  // namespace oracle
