#include "flatcusp/rep_forms.hpp"

#include <numeric>
#include <set>

#include "flatcusp/errors.hpp"

namespace flatcusp {

namespace {

Matrix power(const Matrix& g, long e) {
  Matrix out = Matrix::identity(g.rows());
  for (long i = 0; i < e; ++i) out = out * g;
  return out;
}

// Scale to a primitive integer matrix whose first nonzero entry is positive.
Matrix primitive(const Matrix& m) {
  Integer l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).den());
  Integer g = 0;
  int lead = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational v = m(i, j) * Rational(l);
      g = gcd(g, v.num());
      if (lead == 0) lead = v.sign();
    }
  if (g == 0) return m;
  return m.scaled(Rational(l) / Rational(lead > 0 ? Integer(g) : Integer(-g)));
}

}  // namespace

void RepGenerators::validate() const {
  for (const auto& g : generators) {
    if (g.rows() != dimension || g.cols() != dimension)
      fail(ErrorKind::WrongDimension, "generator does not match the representation dimension");
    if (g.determinant().is_zero()) fail(ErrorKind::Singular, "generator is not invertible");
    if (group_order) {
      if (*group_order <= 0) fail(ErrorKind::InvalidRepresentation, "group order must be positive");
      if (power(g, *group_order) != Matrix::identity(dimension))
        fail(ErrorKind::InvalidRepresentation, "generator order does not divide the group order");
    }
    if (group_exponent && power(g, *group_exponent) != Matrix::identity(dimension))
      fail(ErrorKind::InvalidRepresentation, "generator order does not divide the group exponent");
  }
}

SymFormSpace invariant_form_space(const RepGenerators& rep) {
  rep.validate();
  const std::size_t n = rep.dimension;
  // Unknowns Q_ij, i <= j, in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) unknowns.emplace_back(i, j);
  const std::size_t count = unknowns.size();

  std::vector<Vector> equations;
  for (const auto& g : rep.generators) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) {
        // (g^T Q g)_kl - Q_kl
        Vector row(count);
        for (std::size_t u = 0; u < count; ++u) {
          const auto [i, j] = unknowns[u];
          Rational c = g(i, k) * g(j, l);
          if (i != j) c += g(j, k) * g(i, l);
          if (i == k && j == l) c -= 1;
          row[u] = c;
        }
        equations.push_back(std::move(row));
      }
  }

  std::vector<Vector> kernel;
  if (equations.empty()) {
    for (std::size_t u = 0; u < count; ++u) {
      Vector e(count);
      e[u] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = Matrix(equations).nullspace();
  }

  SymFormSpace out{n, {}};
  for (const auto& x : kernel) {
    Matrix q(n, n);
    for (std::size_t u = 0; u < count; ++u) {
      const auto [i, j] = unknowns[u];
      q(i, j) = x[u];
      q(j, i) = x[u];
    }
    out.basis.push_back(primitive(q));
  }
  return out;
}

std::vector<Matrix> group_elements(const RepGenerators& rep, std::size_t cap) {
  rep.validate();
  std::set<Matrix> seen{Matrix::identity(rep.dimension)};
  std::vector<Matrix> frontier{Matrix::identity(rep.dimension)};
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& h : frontier)
      for (const auto& g : rep.generators) {
        Matrix x = h * g;
        if (seen.insert(x).second) {
          if (seen.size() > cap) fail(ErrorKind::ClosureBudgetExceeded, "group closure exceeds the element cap");
          next.push_back(std::move(x));
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

GramMatrix average_form(const RepGenerators& rep) {
  const auto elements = group_elements(rep);
  if (rep.group_order && static_cast<std::size_t>(*rep.group_order) != elements.size())
    fail(ErrorKind::InvalidRepresentation, "generated group has " + std::to_string(elements.size()) +
                                               " elements, not the declared order");
  Matrix sum(rep.dimension, rep.dimension);
  for (const auto& g : elements) sum = sum + g.transpose() * g;
  return sum.scaled(Rational(1, static_cast<long>(elements.size())));
}

PrimeRep cyclic_prime_rep(const Integer& p) {
  if (p < 3 || !is_prime(p)) fail(ErrorKind::NotOddPrime, p.get_str() + " is not an odd prime");
  const std::size_t n = p.get_ui() - 1;
  Matrix zeta(n, n);
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    zeta(i, n - 1) = -1;
    if (i + 1 < n) {
      zeta(i + 1, i) = 1;
      q(i, i + 1) = -1;
      q(i + 1, i) = -1;
    }
    q(i, i) = 2;
  }
  RepGenerators rep{n, {zeta}, p.get_si(), p.get_si()};
  return {std::move(rep), std::move(q)};
}

RepGenerators block_sum(const RepGenerators& a, const RepGenerators& b) {
  if (a.generators.size() != b.generators.size())
    fail(ErrorKind::GeneratorCountMismatch, "representations have different numbers of generators");
  RepGenerators out;
  out.dimension = a.dimension + b.dimension;
  for (std::size_t i = 0; i < a.generators.size(); ++i)
    out.generators.push_back(Matrix::block_diagonal(a.generators[i], b.generators[i]));
  if (a.group_order && b.group_order) out.group_order = std::lcm(*a.group_order, *b.group_order);
  if (a.group_exponent && b.group_exponent) out.group_exponent = std::lcm(*a.group_exponent, *b.group_exponent);
  return out;
}

GramMatrix transport_form(const GramMatrix& q, const Matrix& c) {
  if (!c.is_square() || c.rows() != q.rows()) fail(ErrorKind::WrongDimension, "transport matrix has the wrong shape");
  if (c.determinant().is_zero()) fail(ErrorKind::Singular, "transport matrix is singular");
  return c.transpose() * q * c;
}

RepGenerators trivial_rep(std::size_t n, std::size_t generator_count) {
  return {n, std::vector<Matrix>(generator_count, Matrix::identity(n)), 1, 1};
}

RepGenerators order3_planar_rep() { return {2, {Matrix{{0, -1}, {1, -1}}}, 3, 3}; }

RepGenerators order4_planar_rep() { return {2, {Matrix{{0, -1}, {1, 0}}}, 4, 4}; }

RepGenerators a4_rep() {
  return {3, {Matrix{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}, Matrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}}, 12, 6};
}

}  // namespace flatcusp
