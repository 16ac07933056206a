#include "flatcusp/qform.hpp"

#include <sstream>
#include <utility>

#include "flatcusp/errors.hpp"

namespace flatcusp {

DiagonalForm::DiagonalForm(std::vector<Rational> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorKind::WrongDimension, "diagonal form needs at least one entry");
  for (const auto& a : entries_) {
    if (a.is_zero()) fail(ErrorKind::ZeroEntry, "diagonal form has a zero entry");
  }
}

DiagonalForm DiagonalForm::parse(std::string_view text) {
  std::vector<Rational> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    entries.push_back(Rational::parse(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return DiagonalForm(std::move(entries));
}

DiagonalForm DiagonalForm::scaled(const Rational& m) const {
  std::vector<Rational> out = entries_;
  for (auto& a : out) a *= m;
  return DiagonalForm(std::move(out));
}

DiagonalForm direct_sum(const DiagonalForm& f, const DiagonalForm& g) {
  std::vector<Rational> out = f.entries_;
  out.insert(out.end(), g.entries_.begin(), g.entries_.end());
  return DiagonalForm(std::move(out));
}

std::string DiagonalForm::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += entries_[i].to_string();
  }
  return s;
}

int hasse_at_infinity(std::size_t s) { return ((s * (s - (s > 0 ? 1 : 0)) / 2) % 2 == 0) ? 1 : -1; }

void FormInvariants::validate() const {
  auto bad = [](const std::string& why) { fail(ErrorKind::InvalidTarget, why); };
  if (rank == 0) bad("rank must be positive");
  if (signature.positive + signature.negative != rank) bad("signature does not add up to the rank");
  const int expected_sign = signature.negative % 2 == 0 ? 1 : -1;
  if (discriminant.sign() != expected_sign) bad("sign of the discriminant must be (-1)^s");
  const bool inf_negative = hasse_negative.contains(Place::infinity());
  if (inf_negative != (hasse_at_infinity(signature.negative) == -1))
    bad("Hasse-Witt invariant at infinity disagrees with the signature");
  if (hasse_negative.size() % 2 != 0) bad("odd number of places with Hasse-Witt invariant -1");
  if (rank == 1 && !hasse_negative.empty()) bad("rank 1 forms have trivial Hasse-Witt invariants");
  if (rank == 2) {
    const Rational minus_d = -discriminant.as_rational();
    for (const auto& v : hasse_negative) {
      if (is_square_local(minus_d, v))
        bad("rank 2 form with -d a square at " + v.to_string() + " must have trivial invariant there");
    }
  }
}

namespace {

void require_symmetric(const Matrix& g) {
  if (!g.is_symmetric()) fail(ErrorKind::NotSymmetric, "Gram matrix is not symmetric");
}

// Congruence helpers on (A, C): A <- E^T A E, C <- C E.
void swap_basis(Matrix& a, Matrix& c, std::size_t i, std::size_t j) {
  if (i == j) return;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
  for (std::size_t k = 0; k < c.rows(); ++k) std::swap(c(k, i), c(k, j));
}

// e_j <- e_j + s e_i
void add_basis(Matrix& a, Matrix& c, std::size_t j, std::size_t i, const Rational& s) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) a(k, j) += s * a(k, i);
  for (std::size_t k = 0; k < n; ++k) a(j, k) += s * a(i, k);
  for (std::size_t k = 0; k < c.rows(); ++k) c(k, j) += s * c(k, i);
}

}  // namespace

Diagonalization diagonalize(const GramMatrix& g) {
  require_symmetric(g);
  const std::size_t n = g.rows();
  if (n == 0) fail(ErrorKind::WrongDimension, "empty Gram matrix");
  Matrix a = g;
  Matrix c = Matrix::identity(n);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i) {
      if (!a(i, i).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) {
      // Zero diagonal on the remaining block: turn a nonzero pair into <1,-1>.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!a(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) fail(ErrorKind::Degenerate, "Gram matrix is degenerate");
      const Rational b_inv = a(pi, pj).inverse();
      Matrix e = Matrix::identity(n);
      e(pi, pi) = Rational(1, 2);
      e(pj, pi) = b_inv;
      e(pi, pj) = Rational(-1, 2);
      e(pj, pj) = b_inv;
      a = e.transpose() * a * e;
      c = c * e;
      pivot = pi;
    }
    swap_basis(a, c, k, pivot);
    const Rational inv = a(k, k).inverse();
    for (std::size_t j = k + 1; j < n; ++j) {
      if (!a(k, j).is_zero()) add_basis(a, c, j, k, -a(k, j) * inv);
    }
  }

  std::vector<Rational> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  return {DiagonalForm(std::move(diag)), std::move(c)};
}

FormInvariants invariants(const DiagonalForm& f) {
  FormInvariants out;
  out.rank = f.rank();
  Rational product = 1;
  PlaceSet places{Place::infinity(), Place::prime(2)};
  for (const auto& a : f.entries()) {
    (a.sign() > 0 ? out.signature.positive : out.signature.negative) += 1;
    product *= a;
    places.merge(places_of(a));
  }
  out.discriminant = square_class(product);
  for (const auto& v : places) {
    // prod_{i<j} (a_i, a_j) = prod_j (a_1 ... a_{j-1}, a_j)
    int eps = 1;
    Rational prefix = f.entries().front();
    for (std::size_t j = 1; j < f.rank(); ++j) {
      eps *= hilbert_symbol(prefix, f.entries()[j], v);
      prefix *= f.entries()[j];
    }
    if (eps == -1) out.hasse_negative.insert(v);
  }
  return out;
}

FormInvariants invariants(const GramMatrix& g) { return invariants(diagonalize(g).form); }

FormInvariants sum_invariants(const FormInvariants& f, const FormInvariants& g) {
  FormInvariants out;
  out.rank = f.rank + g.rank;
  out.signature = {f.signature.positive + g.signature.positive,
                   f.signature.negative + g.signature.negative};
  out.discriminant = f.discriminant * g.discriminant;
  const Rational df = f.discriminant.as_rational();
  const Rational dg = g.discriminant.as_rational();
  PlaceSet places = symbol_support(df, dg);
  places.insert(f.hasse_negative.begin(), f.hasse_negative.end());
  places.insert(g.hasse_negative.begin(), g.hasse_negative.end());
  for (const auto& v : places) {
    if (f.hasse(v) * g.hasse(v) * hilbert_symbol(df, dg, v) == -1) out.hasse_negative.insert(v);
  }
  return out;
}

FormInvariants scale_invariants(const FormInvariants& f, const Rational& m) {
  if (m.sign() <= 0) fail(ErrorKind::NonPositiveScalar, "scaling factor must be positive");
  FormInvariants out = f;
  out.hasse_negative.clear();
  const std::size_t n = f.rank;
  const SquareClass mc = square_class(m);
  if (n % 2 == 1) out.discriminant = f.discriminant * mc;
  const Rational d = f.discriminant.as_rational();
  const Rational mm = mc.as_rational();

  PlaceSet places = symbol_support(mm, d);
  places.insert(f.hasse_negative.begin(), f.hasse_negative.end());
  for (const auto& v : places) {
    int eps = f.hasse(v);
    switch (n % 4) {
      case 1: break;
      case 2: eps *= hilbert_symbol(mm, -d, v); break;
      case 3: eps *= hilbert_symbol(mm, -1, v); break;
      case 0: eps *= hilbert_symbol(mm, d, v); break;
    }
    if (eps == -1) out.hasse_negative.insert(v);
  }
  return out;
}

bool is_equivalent(const FormInvariants& f, const FormInvariants& g) { return f == g; }

bool is_proj_equivalent(const FormInvariants& f, const FormInvariants& g) {
  if (f.rank != g.rank) fail(ErrorKind::RankMismatch, "projective equivalence needs equal ranks");
  if (f.signature != g.signature) return false;
  const std::size_t n = f.rank;
  const Rational df = f.discriminant.as_rational();
  const Rational dg = g.discriminant.as_rational();

  PlaceSet places = symbol_support(df, dg);
  places.insert(f.hasse_negative.begin(), f.hasse_negative.end());
  places.insert(g.hasse_negative.begin(), g.hasse_negative.end());

  if (n % 2 == 1) {
    const Rational unit = ((n - 1) / 2) % 2 == 0 ? Rational(1) : Rational(-1);
    for (const auto& v : places) {
      if (hilbert_symbol(df, unit, v) * f.hasse(v) != hilbert_symbol(dg, unit, v) * g.hasse(v))
        return false;
    }
    return true;
  }

  if (f.discriminant != g.discriminant) return false;
  const Rational twisted = (n / 2) % 2 == 0 ? df : -df;
  for (const auto& v : places) {
    if (v.is_infinite()) continue;
    if (is_square_local(twisted, v) && f.hasse(v) != g.hasse(v)) return false;
  }
  return true;
}

FormInvariants cusp_complement_invariants(const FormInvariants& q) {
  if (q.signature.negative != 1 || q.signature.positive < 4 || q.rank != q.signature.positive + 1)
    fail(ErrorKind::WrongSignature, "expected signature (n+1, 1) with n >= 3");
  FormInvariants f;
  f.rank = q.rank - 2;
  f.signature = {f.rank, 0};
  f.discriminant = q.discriminant * square_class(-1);
  const Rational df = f.discriminant.as_rational();
  PlaceSet places = symbol_support(df, -1);
  places.insert(q.hasse_negative.begin(), q.hasse_negative.end());
  for (const auto& v : places) {
    if (q.hasse(v) * hilbert_symbol(df, -1, v) == -1) f.hasse_negative.insert(v);
  }
  return f;
}

Matrix split_hyperbolic(const GramMatrix& g, const std::vector<Vector>& iso_basis) {
  require_symmetric(g);
  const std::size_t dim = g.rows();
  if (dim == 0 || dim % 2 != 0) fail(ErrorKind::WrongDimension, "split_hyperbolic needs even rank");
  const std::size_t n = dim / 2;
  if (iso_basis.size() != n) fail(ErrorKind::WrongDimension, "isotropic basis must have rank/2 vectors");
  for (const auto& v : iso_basis) {
    if (v.size() != dim) fail(ErrorKind::WrongDimension, "isotropic vector has the wrong length");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!g.bilinear(iso_basis[i], iso_basis[j]).is_zero())
        fail(ErrorKind::NotIsotropic, "basis does not span a totally isotropic subspace");

  std::vector<Vector> columns = iso_basis;
  if (Matrix::from_columns(columns).rank() != n)
    fail(ErrorKind::WrongDimension, "isotropic vectors are linearly dependent");
  for (std::size_t k = 0; k < dim && columns.size() < dim; ++k) {
    Vector e(dim);
    e[k] = 1;
    columns.push_back(e);
    if (Matrix::from_columns(columns).rank() != columns.size()) columns.pop_back();
  }
  const Matrix p = Matrix::from_columns(columns);
  const Matrix m = p.transpose() * g * p;

  Matrix a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = m(i, n + j);
      b(i, j) = m(n + i, n + j);
    }
  Matrix a_inv;
  try {
    a_inv = a.inverse();
  } catch (const Error&) {
    fail(ErrorKind::Degenerate, "form is degenerate");
  }

  // [[I, -1/2 (B A^-1)^T], [0, I]] clears B; [[I/2, -I/2], [A^-1, A^-1]] diagonalizes.
  const Matrix x = (b * a_inv).transpose().scaled(Rational(-1, 2));
  Matrix t1 = Matrix::identity(dim);
  Matrix t2(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      t1(i, n + j) = x(i, j);
      t2(n + i, j) = a_inv(i, j);
      t2(n + i, n + j) = a_inv(i, j);
    }
    t2(i, i) = Rational(1, 2);
    t2(i, n + i) = Rational(-1, 2);
  }
  return p * t1 * t2;
}

Matrix parabolic_embed(const GramMatrix& m_f, const Matrix& a, const Vector& v) {
  require_symmetric(m_f);
  const std::size_t n = m_f.rows();
  if (a.rows() != n || a.cols() != n || v.size() != n)
    fail(ErrorKind::WrongDimension, "parabolic_embed: shapes of M, A and v disagree");
  if (a.transpose() * m_f * a != m_f) fail(ErrorKind::NotIsometry, "A does not preserve f");

  const Rational half_fv = m_f.quadratic(v) / Rational(2);
  Matrix row_v(1, n);
  for (std::size_t j = 0; j < n; ++j) row_v(0, j) = v[j];
  const Matrix vma = row_v * m_f * a;

  Matrix x(n + 2, n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) x(i, j) = a(i, j);
    x(i, n) = -v[i];
    x(i, n + 1) = v[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    x(n, j) = vma(0, j);
    x(n + 1, j) = vma(0, j);
  }
  x(n, n) = Rational(1) - half_fv;
  x(n, n + 1) = half_fv;
  x(n + 1, n) = -half_fv;
  x(n + 1, n + 1) = Rational(1) + half_fv;
  return x;
}

}  // namespace flatcusp
