#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "flatcusp/matrix.hpp"
#include "flatcusp/qform.hpp"

namespace flatcusp {

/// A finite group acting on Q^n, given by generator matrices.
struct RepGenerators {
  std::size_t dimension = 0;
  std::vector<Matrix> generators;
  std::optional<long> group_order;
  std::optional<long> group_exponent;

  /// Throws WrongDimension, Singular, InvalidRepresentation.
  void validate() const;
};

/// Basis of the symmetric Q with g^T Q g = Q for every generator. Each basis
/// element is a primitive integer matrix with positive leading entry.
struct SymFormSpace {
  std::size_t dimension = 0;
  std::vector<Matrix> basis;
};

SymFormSpace invariant_form_space(const RepGenerators& rep);

/// All group elements, by closure under multiplication. Throws
/// ClosureBudgetExceeded past `cap` elements.
std::vector<Matrix> group_elements(const RepGenerators& rep, std::size_t cap = 10'000);

/// (1/|G|) sum g^T g. Throws ClosureBudgetExceeded, InvalidRepresentation
/// (closure size disagrees with a declared order).
GramMatrix average_form(const RepGenerators& rep);

struct PrimeRep {
  RepGenerators rep;
  GramMatrix gram;
};

/// The order p companion matrix on Q^{p-1} with its tridiagonal invariant
/// form of determinant p. Throws NotOddPrime.
PrimeRep cyclic_prime_rep(const Integer& p);

/// Generator-wise block diagonal sum. Throws GeneratorCountMismatch.
RepGenerators block_sum(const RepGenerators& a, const RepGenerators& b);

/// c^T q c. Throws Singular.
GramMatrix transport_form(const GramMatrix& q, const Matrix& c);

/// Identity generators, so it can be block-summed with other reps.
RepGenerators trivial_rep(std::size_t n, std::size_t generator_count = 1);
/// [[0,-1],[1,-1]]
RepGenerators order3_planar_rep();
/// [[0,-1],[1,0]]
RepGenerators order4_planar_rep();
/// A4 on Q^3 by diag(1,-1,-1) and the cyclic coordinate permutation.
RepGenerators a4_rep();

}  // namespace flatcusp
