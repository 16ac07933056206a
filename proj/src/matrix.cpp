#include "flatcusp/matrix.hpp"

#include <sstream>
#include <utility>

#include "flatcusp/errors.hpp"

namespace flatcusp {

namespace {

using IntRow = std::vector<Integer>;

// Scales each row to integers. Row scaling preserves the nullspace and rank.
std::vector<IntRow> integer_rows(const Matrix& m, Integer* scale_product = nullptr) {
  std::vector<IntRow> out(m.rows(), IntRow(m.cols()));
  if (scale_product) *scale_product = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).den().get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out[i][j] = m(i, j).num() * (l / m(i, j).den());
    }
    if (scale_product) *scale_product *= l;
  }
  return out;
}

void make_primitive(IntRow& row) {
  Integer g = 0;
  for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

struct Echelon {
  std::vector<IntRow> rows;
  std::vector<std::size_t> pivot_cols;
};

// Integer row echelon form; each elimination step is a cross-multiplication
// followed by removal of the row content, so entries stay integral.
Echelon echelon(std::vector<IntRow> a, std::size_t cols) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    make_primitive(a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      const Integer f = a[i][c];
      const Integer p = a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = p * a[i][j] - f * a[r][j];
      make_primitive(a[i]);
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorKind::WrongDimension, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix::Matrix(const std::vector<Vector>& rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.front().size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorKind::WrongDimension, "ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(std::span<const Rational> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns) {
  if (columns.empty()) return {};
  Matrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m.rows_) fail(ErrorKind::WrongDimension, "column length mismatch");
    for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Matrix Matrix::block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
  return m;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) fail(ErrorKind::WrongDimension, "matrix product shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        if (!rhs(k, j).is_zero()) out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

Vector Matrix::operator*(const Vector& v) const {
  if (cols_ != v.size()) fail(ErrorKind::WrongDimension, "matrix-vector shape mismatch");
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) fail(ErrorKind::WrongDimension, "sum shape mismatch");
  Matrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += rhs.data_[k];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const { return *this + rhs.scaled(-1); }

Matrix Matrix::scaled(const Rational& s) const {
  Matrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

Rational Matrix::determinant() const {
  if (!is_square()) fail(ErrorKind::WrongDimension, "determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  Integer scale;
  auto a = integer_rows(*this, &scale);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
    }
    prev = a[k][k];
  }
  return Rational(sign * a[n - 1][n - 1], scale);
}

std::size_t Matrix::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  return echelon(integer_rows(*this), cols_).pivot_cols.size();
}

Matrix Matrix::inverse() const {
  if (!is_square()) fail(ErrorKind::WrongDimension, "inverse of non-square matrix");
  const std::size_t n = rows_;
  Matrix a = *this;
  Matrix inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) fail(ErrorKind::Singular, "matrix is singular");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    }
    const Rational p = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= p;
      inv(c, j) *= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<Vector> Matrix::nullspace() const {
  std::vector<Vector> basis;
  if (cols_ == 0) return basis;
  const Echelon e = rows_ == 0 ? Echelon{} : echelon(integer_rows(*this), cols_);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vector x(cols_);
    x[free] = 1;
    // Back substitution through the echelon rows.
    for (std::size_t r = e.pivot_cols.size(); r-- > 0;) {
      const std::size_t pc = e.pivot_cols[r];
      Rational acc;
      for (std::size_t j = pc + 1; j < cols_; ++j) {
        if (!x[j].is_zero() && e.rows[r][j] != 0) acc += Rational(e.rows[r][j]) * x[j];
      }
      x[pc] = -acc / Rational(e.rows[r][pc]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

Rational Matrix::bilinear(const Vector& v, const Vector& w) const {
  if (v.size() != rows_ || w.size() != cols_) fail(ErrorKind::WrongDimension, "bilinear shape mismatch");
  Rational acc;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (v[i].is_zero()) continue;
    Rational rowsum;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!w[j].is_zero()) rowsum += (*this)(i, j) * w[j];
    acc += v[i] * rowsum;
  }
  return acc;
}

std::vector<Vector> Matrix::to_rows() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) {
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  for (std::size_t k = 0; k < a.data_.size(); ++k) {
    if (auto c = a.data_[k] <=> b.data_[k]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool is_positive_definite(const Matrix& m) {
  if (!m.is_symmetric()) return false;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    Matrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = m(i, j);
    if (lead.determinant().sign() <= 0) return false;
  }
  return true;
}

}  // namespace flatcusp
