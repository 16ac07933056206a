#pragma once

#include <array>

#include "flatcusp/local_symbols.hpp"
#include "flatcusp/qform.hpp"
#include "flatcusp/rational.hpp"

namespace flatcusp {

/// Prescribed values h_p of (d, c)_p; -1 exactly on `h_negative`.
struct HilbertTarget {
  SquareClass d;
  PlaceSet h_negative;

  /// Throws InvalidTarget when no positive c can exist.
  void validate() const;
};

struct SearchBudget {
  long prime_bound = 200;
  int max_factors = 4;
  int escalations = 3;  // prime_bound doubles this many times before giving up
};

/// Some c > 0 with (d, c)_p = h_p at every place. The result is the product of
/// a subset of {2} u primes(d) u h_negative and at most max_factors auxiliary
/// primes l <= prime_bound with (d/l) = 1.
/// Throws InvalidTarget, BudgetExceeded.
Rational find_positive_scalar(const HilbertTarget& target, const SearchBudget& budget = {});

/// A diagonal form whose invariants are exactly `target`.
/// Throws InvalidTarget, BudgetExceeded.
DiagonalForm realize_form(const FormInvariants& target, const SearchBudget& budget = {});

/// Rank 3 with prescribed entry signs (in order), discriminant and Hasse data.
DiagonalForm realize_rank3(const std::array<int, 3>& signs, const SquareClass& d,
                           const PlaceSet& hasse_negative, const SearchBudget& budget = {});

/// Positive a, b, c with abc = d mod squares and
/// eps_p(<a,b,c>) (a,x)_p (b,y)_p (c,z)_p = h_p at every place.
/// Throws InvalidTarget, BudgetExceeded.
std::array<Rational, 3> combine_three(const Rational& x, const Rational& y, const Rational& z,
                                      const SquareClass& d, const PlaceSet& h_negative,
                                      const SearchBudget& budget = {});

/// Positive a_i with a1 f1 + a2 f2 + a3 f3 + g equivalent to q, for positive
/// definite f_i of odd rank. Throws InvalidTarget, BudgetExceeded.
std::array<Rational, 3> decompose_into_three_odd(const DiagonalForm& f1, const DiagonalForm& f2,
                                                 const DiagonalForm& f3, const DiagonalForm& g,
                                                 const FormInvariants& q,
                                                 const SearchBudget& budget = {});

/// Invariants of a rank 2 form with discriminant d and Hasse data eps exist
/// iff eps_v = 1 wherever -d is a square in Q_v.
bool binary_realizable(const SquareClass& d, const PlaceSet& hasse_negative);

}  // namespace flatcusp
