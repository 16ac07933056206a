#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "flatcusp/local_symbols.hpp"
#include "flatcusp/matrix.hpp"
#include "flatcusp/rational.hpp"

namespace flatcusp {

/// Symmetric matrix Q of the form v -> v^T Q v.
using GramMatrix = Matrix;

/// The diagonal form <a_1, ..., a_n>; every entry nonzero, n >= 1.
class DiagonalForm {
 public:
  explicit DiagonalForm(std::vector<Rational> entries);

  /// Comma-separated rationals, e.g. "3,1,1,1,-1".
  static DiagonalForm parse(std::string_view text);

  const std::vector<Rational>& entries() const { return entries_; }
  std::size_t rank() const { return entries_.size(); }
  GramMatrix gram() const { return Matrix::diagonal(entries_); }

  DiagonalForm scaled(const Rational& m) const;
  friend DiagonalForm direct_sum(const DiagonalForm& f, const DiagonalForm& g);

  std::string to_string() const;
  friend bool operator==(const DiagonalForm&, const DiagonalForm&) = default;

 private:
  std::vector<Rational> entries_;
};

DiagonalForm direct_sum(const DiagonalForm& f, const DiagonalForm& g);

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Rank, signature, discriminant and the places where the Hasse-Witt
/// invariant is -1. Complete for rational equivalence.
struct FormInvariants {
  std::size_t rank = 0;
  Signature signature;
  SquareClass discriminant;
  PlaceSet hasse_negative;

  int hasse(const Place& v) const { return hasse_negative.contains(v) ? -1 : 1; }

  /// Checks the global existence conditions (sign of d, product formula,
  /// placement of infinity) plus the rank 1 and 2 local restrictions.
  /// Throws InvalidTarget naming the violated condition.
  void validate() const;

  friend bool operator==(const FormInvariants&, const FormInvariants&) = default;
};

/// (-1)^{s(s-1)/2}
int hasse_at_infinity(std::size_t negative_count);

struct Diagonalization {
  DiagonalForm form;
  Matrix transition;  // transition^T * gram * transition = diag(form)
};

/// Symmetric elimination with the first nonzero diagonal pivot. A remaining
/// block with zero diagonal is split as a hyperbolic plane first.
/// Throws NotSymmetric, Degenerate.
Diagonalization diagonalize(const GramMatrix& g);

/// Throws ZeroEntry only through DiagonalForm construction.
FormInvariants invariants(const DiagonalForm& f);
FormInvariants invariants(const GramMatrix& g);

FormInvariants sum_invariants(const FormInvariants& f, const FormInvariants& g);

/// Invariants of m * f for m > 0. Throws NonPositiveScalar.
FormInvariants scale_invariants(const FormInvariants& f, const Rational& m);

bool is_equivalent(const FormInvariants& f, const FormInvariants& g);

/// Equivalence up to a positive rational multiple. Throws RankMismatch.
bool is_proj_equivalent(const FormInvariants& f, const FormInvariants& g);

/// For q of signature (n+1, 1), n >= 3: invariants of the positive definite f
/// with q = f + <1,-1>. Throws WrongSignature.
FormInvariants cusp_complement_invariants(const FormInvariants& q);

/// Given a 2n-dimensional nondegenerate g and a basis of an n-dimensional
/// totally isotropic subspace, returns c with c^T g c = diag(1,..,1,-1,..,-1).
/// Throws NotIsotropic, WrongDimension, Degenerate.
Matrix split_hyperbolic(const GramMatrix& g, const std::vector<Vector>& iso_basis);

/// Parabolic embedding of (a, v) in O(f) x| Q^n into O(f + <1,-1>), fixing
/// u = (0,..,0,1,1). Throws NotIsometry.
Matrix parabolic_embed(const GramMatrix& m_f, const Matrix& a, const Vector& v);

}  // namespace flatcusp
