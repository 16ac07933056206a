#include "flatcusp/form_builder.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "flatcusp/errors.hpp"

namespace flatcusp {

namespace {

PlaceSet symmetric_difference(const PlaceSet& a, const PlaceSet& b) {
  PlaceSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::inserter(out, out.end()));
  return out;
}

// Negative support of eps * (a, b).
PlaceSet twist(const PlaceSet& eps, const Rational& a, const Rational& b) {
  PlaceSet places = symbol_support(a, b);
  places.insert(eps.begin(), eps.end());
  PlaceSet out;
  for (const auto& v : places) {
    const int e = (eps.contains(v) ? -1 : 1) * hilbert_symbol(a, b, v);
    if (e == -1) out.insert(v);
  }
  return out;
}

std::vector<Integer> primes_up_to(long bound) {
  std::vector<char> sieve(static_cast<std::size_t>(bound) + 1, 1);
  std::vector<Integer> out;
  for (long i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.emplace_back(i);
    for (long j = i * i; j <= bound; j += i) sieve[j] = 0;
  }
  return out;
}

// Solve A x = rhs over GF(2); columns of A are bitmasks over equations.
// Pivots are taken in column order and free variables are set to zero.
bool solve_gf2(const std::vector<std::uint64_t>& columns, std::size_t equations,
               std::uint64_t rhs, std::uint64_t& solution) {
  const std::size_t unknowns = columns.size();
  // Row i: bits over unknowns, plus the rhs bit at position `unknowns`.
  std::vector<std::uint64_t> rows(equations, 0);
  for (std::size_t i = 0; i < equations; ++i) {
    for (std::size_t j = 0; j < unknowns; ++j)
      if ((columns[j] >> i) & 1U) rows[i] |= std::uint64_t{1} << j;
    if ((rhs >> i) & 1U) rows[i] |= std::uint64_t{1} << unknowns;
  }
  std::vector<int> pivot_row(unknowns, -1);
  std::size_t r = 0;
  for (std::size_t j = 0; j < unknowns && r < equations; ++j) {
    std::size_t k = r;
    while (k < equations && !((rows[k] >> j) & 1U)) ++k;
    if (k == equations) continue;
    std::swap(rows[r], rows[k]);
    for (std::size_t i = 0; i < equations; ++i)
      if (i != r && ((rows[i] >> j) & 1U)) rows[i] ^= rows[r];
    pivot_row[j] = static_cast<int>(r);
    ++r;
  }
  for (std::size_t i = r; i < equations; ++i)
    if ((rows[i] >> unknowns) & 1U) return false;
  solution = 0;
  for (std::size_t j = 0; j < unknowns; ++j)
    if (pivot_row[j] >= 0 && ((rows[pivot_row[j]] >> unknowns) & 1U)) solution |= std::uint64_t{1} << j;
  return true;
}

bool matches_target(const Rational& d, const Rational& c, const PlaceSet& h_negative) {
  PlaceSet places = symbol_support(d, c);
  places.insert(h_negative.begin(), h_negative.end());
  for (const auto& v : places) {
    if (hilbert_symbol(d, c, v) != (h_negative.contains(v) ? -1 : 1)) return false;
  }
  return true;
}

// Scalar b of the given sign with (b, big_d)_v = eps_v at every place.
Rational signed_scalar(int sign, const Rational& big_d, const PlaceSet& eps, const SearchBudget& budget) {
  const PlaceSet h = sign > 0 ? eps : twist(eps, -1, big_d);
  const Rational c = find_positive_scalar({square_class(big_d), h}, budget);
  return sign > 0 ? c : -c;
}

bool squarefree(long n) {
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

void require_verified(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("unverified certificate in ") + what);
}

}  // namespace

void HilbertTarget::validate() const {
  if (h_negative.size() % 2 != 0)
    fail(ErrorKind::InvalidTarget, "prescribed -1 places must be even in number");
  for (const auto& v : h_negative) {
    if (v.is_infinite()) fail(ErrorKind::InvalidTarget, "a positive scalar has trivial symbol at infinity");
    if (is_square_local(d.as_rational(), v))
      fail(ErrorKind::InvalidTarget, "d is a square at " + v.to_string() + " so the symbol there is +1");
  }
}

Rational find_positive_scalar(const HilbertTarget& target, const SearchBudget& budget) {
  target.validate();
  if (budget.prime_bound < 2 || budget.max_factors < 0)
    fail(ErrorKind::BadParameters, "search budget must be positive");
  if (target.h_negative.empty()) return 1;

  const Rational d = target.d.as_rational();
  std::vector<Integer> relevant{Integer(2)};
  for (const auto& p : prime_divisors(abs(target.d.representative()))) relevant.push_back(p);
  for (const auto& v : target.h_negative) relevant.push_back(v.p());
  std::sort(relevant.begin(), relevant.end());
  relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());
  if (relevant.size() > 63) fail(ErrorKind::BudgetExceeded, "too many relevant primes");

  const std::size_t m = relevant.size();
  auto symbol_mask = [&](const Integer& l) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (hilbert_symbol(d, Rational(l), Place::prime(relevant[i])) == -1) mask |= std::uint64_t{1} << i;
    return mask;
  };
  std::vector<std::uint64_t> columns;
  for (const auto& l : relevant) columns.push_back(symbol_mask(l));
  std::uint64_t goal = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (target.h_negative.contains(Place::prime(relevant[i]))) goal |= std::uint64_t{1} << i;

  long bound = budget.prime_bound;
  for (int round = 0; round <= budget.escalations; ++round, bound *= 2) {
    std::vector<Integer> aux;
    std::vector<std::uint64_t> aux_masks;
    for (const auto& l : primes_up_to(bound)) {
      if (std::binary_search(relevant.begin(), relevant.end(), l)) continue;
      if (legendre_unit(d, l) != 1) continue;
      aux.push_back(l);
      aux_masks.push_back(symbol_mask(l));
    }

    const int kmax = std::min<int>(budget.max_factors, static_cast<int>(aux.size()));
    for (int k = 0; k <= kmax; ++k) {
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        std::uint64_t rhs = goal;
        for (int i : idx) rhs ^= aux_masks[i];
        std::uint64_t x = 0;
        if (solve_gf2(columns, m, rhs, x)) {
          Integer c = 1;
          for (std::size_t j = 0; j < m; ++j)
            if ((x >> j) & 1U) c *= relevant[j];
          for (int i : idx) c *= aux[i];
          const Rational cr(c);
          require_verified(matches_target(d, cr, target.h_negative), "find_positive_scalar");
          return cr;
        }
        // next k-combination of aux indices
        int i = k - 1;
        while (i >= 0 && idx[i] == static_cast<int>(aux.size()) - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  fail(ErrorKind::BudgetExceeded, "no positive scalar found within the prime budget");
}

bool binary_realizable(const SquareClass& d, const PlaceSet& hasse_negative) {
  const Rational minus_d = -d.as_rational();
  for (const auto& v : hasse_negative)
    if (is_square_local(minus_d, v)) return false;
  return true;
}

DiagonalForm realize_rank3(const std::array<int, 3>& signs, const SquareClass& d,
                           const PlaceSet& hasse_negative, const SearchBudget& budget) {
  std::size_t negatives = 0;
  for (int s : signs) negatives += s < 0 ? 1 : 0;
  FormInvariants target{3, {3 - negatives, negatives}, d, hasse_negative};
  target.validate();

  // Small a first for readable output. The fallback takes a over {2} and the
  // Hasse support minus primes(d), so -d a has odd valuation at every place
  // where eps_g can be -1 and the binary part always exists.
  std::vector<Rational> candidates;
  const long limit = 4 * budget.prime_bound;
  for (long n = 1; n <= limit; ++n)
    if (squarefree(n)) candidates.emplace_back(signs[0] * n);
  {
    Integer n = 1;
    PlaceSet s = hasse_negative;
    s.insert(Place::prime(2));
    for (const auto& v : s)
      if (v.is_finite() && !mpz_divisible_p(d.representative().get_mpz_t(), v.p().get_mpz_t())) n *= v.p();
    candidates.emplace_back(Integer(signs[0]) * n);
  }
  for (const Rational& a : candidates) {
    const SquareClass d_g = d * square_class(a);
    const Rational dg = d_g.as_rational();
    // eps = eps_g * (a, d_g)
    const PlaceSet eps_g = twist(hasse_negative, a, dg);
    if (!binary_realizable(d_g, eps_g)) continue;
    Rational b;
    try {
      // eps(<b, b d_g>) = (b, -d_g)
      b = signed_scalar(signs[1], -dg, eps_g, budget);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidTarget || e.kind() == ErrorKind::BudgetExceeded) continue;
      throw;
    }
    const Rational c = square_class(dg * b).as_rational();
    DiagonalForm out({a, b, c});
    require_verified(invariants(out) == target, "realize_rank3");
    return out;
  }
  fail(ErrorKind::BudgetExceeded, "no rank 3 realization found within the budget");
}

DiagonalForm realize_form(const FormInvariants& target, const SearchBudget& budget) {
  target.validate();
  const std::size_t r = target.signature.positive;
  const std::size_t s = target.signature.negative;
  const Rational d = target.discriminant.as_rational();

  if (target.rank == 1) return DiagonalForm({d});
  if (target.rank == 2) {
    const Rational b = signed_scalar(r > 0 ? 1 : -1, -d, target.hasse_negative, budget);
    DiagonalForm out({b, square_class(d * b).as_rational()});
    require_verified(invariants(out) == target, "realize_form");
    return out;
  }

  const std::size_t core_pos = std::min<std::size_t>(r, 3);
  const std::size_t core_neg = 3 - core_pos;
  std::vector<Rational> peeled(r - core_pos, Rational(1));
  peeled.insert(peeled.end(), s - core_neg, Rational(-1));

  std::array<int, 3> signs{};
  for (std::size_t i = 0; i < 3; ++i) signs[i] = i < core_pos ? 1 : -1;

  if (peeled.empty()) return realize_rank3(signs, target.discriminant, target.hasse_negative, budget);

  const DiagonalForm rest(peeled);
  const FormInvariants rest_inv = invariants(rest);
  const SquareClass d_core = target.discriminant * rest_inv.discriminant;
  // eps_T = eps_core * eps_rest * (d_core, d_rest)
  const PlaceSet eps_core = twist(symmetric_difference(target.hasse_negative, rest_inv.hasse_negative),
                                  d_core.as_rational(), rest_inv.discriminant.as_rational());
  const DiagonalForm core = realize_rank3(signs, d_core, eps_core, budget);
  DiagonalForm out = direct_sum(core, rest);
  require_verified(invariants(out) == target, "realize_form");
  return out;
}

std::array<Rational, 3> combine_three(const Rational& x, const Rational& y, const Rational& z,
                                      const SquareClass& d, const PlaceSet& h_negative,
                                      const SearchBudget& budget) {
  if (x.is_zero() || y.is_zero() || z.is_zero()) fail(ErrorKind::ZeroInput, "combine_three: zero coefficient");
  if (d.sign() < 0) fail(ErrorKind::InvalidTarget, "combine_three needs d > 0");
  for (const auto& v : h_negative)
    if (v.is_infinite()) fail(ErrorKind::InvalidTarget, "positive a, b, c force h = +1 at infinity");
  if (h_negative.size() % 2 != 0) fail(ErrorKind::InvalidTarget, "h must be -1 at an even number of places");

  const Rational xyz = x * y * z;
  const FormInvariants xyz_inv = invariants(DiagonalForm({x, y, z}));
  // h' = eps(<x,y,z>) (d, xyz) h
  const PlaceSet h_prime = twist(symmetric_difference(xyz_inv.hasse_negative, h_negative), d.as_rational(), xyz);
  const std::array<int, 3> signs{x.sign(), y.sign(), z.sign()};
  const DiagonalForm abc = realize_rank3(signs, d * square_class(xyz), h_prime, budget);

  std::array<Rational, 3> out{abc.entries()[0] * x, abc.entries()[1] * y, abc.entries()[2] * z};

  // Defining identity, checked at every place that can contribute.
  PlaceSet places = invariants(DiagonalForm({out[0], out[1], out[2]})).hasse_negative;
  places.insert(h_negative.begin(), h_negative.end());
  for (const auto& [u, w] : {std::pair{out[0], x}, std::pair{out[1], y}, std::pair{out[2], z}}) {
    const PlaceSet s = symbol_support(u, w);
    places.insert(s.begin(), s.end());
  }
  const PlaceSet eps_abc = invariants(DiagonalForm({out[0], out[1], out[2]})).hasse_negative;
  for (const auto& v : places) {
    const int lhs = (eps_abc.contains(v) ? -1 : 1) * hilbert_symbol(out[0], x, v) *
                    hilbert_symbol(out[1], y, v) * hilbert_symbol(out[2], z, v);
    require_verified(lhs == (h_negative.contains(v) ? -1 : 1), "combine_three");
  }
  require_verified(square_class(out[0] * out[1] * out[2]) == d, "combine_three");
  return out;
}

std::array<Rational, 3> decompose_into_three_odd(const DiagonalForm& f1, const DiagonalForm& f2,
                                                 const DiagonalForm& f3, const DiagonalForm& g,
                                                 const FormInvariants& q, const SearchBudget& budget) {
  q.validate();
  const std::array<const DiagonalForm*, 3> fs{&f1, &f2, &f3};
  std::size_t block_rank = 0;
  for (const auto* f : fs) {
    if (f->rank() % 2 == 0) fail(ErrorKind::InvalidTarget, "blocks must have odd rank");
    for (const auto& a : f->entries())
      if (a.sign() < 0) fail(ErrorKind::InvalidTarget, "blocks must be positive definite");
    block_rank += f->rank();
  }
  const FormInvariants g_inv = invariants(g);
  if (block_rank + g.rank() != q.rank) fail(ErrorKind::InvalidTarget, "ranks do not add up to rank(q)");
  if (g_inv.signature.negative != q.signature.negative)
    fail(ErrorKind::InvalidTarget, "signature of g is incompatible with q");

  // Rescale each block to discriminant 1.
  std::array<Rational, 3> m;
  std::array<Rational, 3> delta;
  PlaceSet h = symmetric_difference(g_inv.hasse_negative, q.hasse_negative);
  for (std::size_t i = 0; i < 3; ++i) {
    m[i] = invariants(*fs[i]).discriminant.as_rational();
    delta[i] = ((fs[i]->rank() - 1) / 2) % 2 == 0 ? Rational(1) : Rational(-1);
    h = symmetric_difference(h, invariants(fs[i]->scaled(m[i])).hasse_negative);
  }
  const Rational dq = q.discriminant.as_rational();
  const Rational dg = g_inv.discriminant.as_rational();
  h = twist(h, -dq, dg);

  const auto a_prime = combine_three(delta[0], delta[1], delta[2], q.discriminant * g_inv.discriminant, h, budget);
  std::array<Rational, 3> out{a_prime[0] * m[0], a_prime[1] * m[1], a_prime[2] * m[2]};

  const DiagonalForm total = direct_sum(
      direct_sum(direct_sum(f1.scaled(out[0]), f2.scaled(out[1])), f3.scaled(out[2])), g);
  require_verified(invariants(total) == q, "decompose_into_three_odd");
  return out;
}

}  // namespace flatcusp
