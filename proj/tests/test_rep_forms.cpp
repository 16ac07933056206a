#include <set>

#include "doctest.h"
#include "flatcusp/errors.hpp"
#include "flatcusp/rep_forms.hpp"
#include "oracles.hpp"

using namespace flatcusp;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

bool preserves(const Matrix& g, const Matrix& q) { return g.transpose() * q * g == q; }

// Closure by breadth-first multiplication, kept separate from the library's.
std::vector<Matrix> closure(const std::vector<Matrix>& gens) {
  const std::size_t n = gens.front().rows();
  std::set<Matrix> seen{Matrix::identity(n)};
  std::vector<Matrix> frontier{Matrix::identity(n)};
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Matrix y = x * g;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// Dimension of the invariant symmetric forms as the rank of the image of the
// averaging projector on the elementary symmetric matrices.
std::size_t reynolds_dimension(const std::vector<Matrix>& gens) {
  const auto group = closure(gens);
  const std::size_t n = gens.front().rows();
  std::vector<Vector> images;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Matrix e(n, n);
      e(i, j) = 1;
      e(j, i) = 1;
      Matrix acc(n, n);
      for (const auto& g : group) acc = acc + g.transpose() * e * g;
      Vector flat;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) flat.push_back(acc(a, b));
      images.push_back(flat);
    }
  return Matrix(images).rank();
}

bool positive_definite(const Matrix& q) {
  for (std::size_t k = 1; k <= q.rows(); ++k) {
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = q(i, j);
    if (m.determinant().sign() <= 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("invariant_form_space examples") {
  const auto s3 = invariant_form_space(order3_planar_rep());
  REQUIRE(s3.basis.size() == 1);
  CHECK(s3.basis[0] == Matrix{{2, -1}, {-1, 2}});

  const auto s4 = invariant_form_space(order4_planar_rep());
  REQUIRE(s4.basis.size() == 1);
  CHECK(s4.basis[0] == Matrix::identity(2));

  CHECK(invariant_form_space(trivial_rep(3)).basis.size() == 6);

  const auto sa = invariant_form_space(a4_rep());
  REQUIRE(sa.basis.size() == 1);
  CHECK(sa.basis[0] == Matrix::identity(3));
}

TEST_CASE("invariant_form_space agrees with the averaging projector") {
  std::vector<RepGenerators> reps{order3_planar_rep(), order4_planar_rep(), a4_rep(), trivial_rep(3)};
  for (long p : {3, 5, 7}) reps.push_back(cyclic_prime_rep(p).rep);
  reps.push_back(block_sum(order3_planar_rep(), trivial_rep(1)));
  reps.push_back(block_sum(cyclic_prime_rep(3).rep, cyclic_prime_rep(3).rep));
  reps.push_back(block_sum(order3_planar_rep(), order4_planar_rep()));
  for (const auto& rep : reps) {
    const auto space = invariant_form_space(rep);
    CHECK(space.basis.size() == reynolds_dimension(rep.generators));
    for (const auto& b : space.basis) {
      CHECK(b.is_symmetric());
      for (const auto& g : rep.generators) CHECK(preserves(g, b));
    }
  }
}

TEST_CASE("order 3 planar forms look like <3a, a>") {
  const Matrix b = invariant_form_space(order3_planar_rep()).basis.at(0);
  for (long k = -10; k <= 10; ++k) {
    if (k == 0) continue;
    // diagonalizes to <2k, 3k/2>, i.e. <3a, a> with a = 2k
    CHECK(invariants(b.scaled(k)) == invariants(DiagonalForm({6 * k, 2 * k})));
  }
}

TEST_CASE("average_form") {
  CHECK(average_form(trivial_rep(2)) == Matrix::identity(2));
  CHECK(average_form(order3_planar_rep()) ==
        Matrix{{Rational(4, 3), Rational(-2, 3)}, {Rational(-2, 3), Rational(4, 3)}});

  std::vector<RepGenerators> reps{order3_planar_rep(), order4_planar_rep(), a4_rep(),
                                  cyclic_prime_rep(5).rep, cyclic_prime_rep(7).rep,
                                  block_sum(order3_planar_rep(), order4_planar_rep())};
  for (const auto& rep : reps) {
    const Matrix a = average_form(rep);
    CHECK(positive_definite(a));
    for (const auto& g : closure(rep.generators)) CHECK(preserves(g, a));
  }

  RepGenerators wrong = order3_planar_rep();
  wrong.group_order = 6;
  CHECK(kind_of([&] { average_form(wrong); }) == ErrorKind::InvalidRepresentation);
}

TEST_CASE("group_elements closure") {
  CHECK(group_elements(a4_rep()).size() == 12);
  CHECK(group_elements(order4_planar_rep()).size() == 4);
  RepGenerators infinite{2, {Matrix{{1, 1}, {0, 1}}}, std::nullopt, std::nullopt};
  CHECK(kind_of([&] { group_elements(infinite, 50); }) == ErrorKind::ClosureBudgetExceeded);
}

TEST_CASE("cyclic prime reps") {
  const auto r3 = cyclic_prime_rep(3);
  CHECK(r3.rep.generators.at(0) == Matrix{{0, -1}, {1, -1}});
  CHECK(r3.gram == Matrix{{2, -1}, {-1, 2}});
  for (long p : {3, 5, 7, 11, 13}) {
    const auto r = cyclic_prime_rep(p);
    const Matrix& z = r.rep.generators.at(0);
    CHECK(z.rows() == static_cast<std::size_t>(p - 1));
    CHECK(r.gram.determinant() == Rational(p));
    CHECK(square_class(r.gram.determinant()) == square_class(p));
    CHECK(preserves(z, r.gram));
    CHECK(closure({z}).size() == static_cast<std::size_t>(p));
    CHECK(positive_definite(r.gram));
  }
  for (long bad : {-3, 0, 1, 2, 9, 15})
    CHECK(kind_of([&] { cyclic_prime_rep(bad); }) == ErrorKind::NotOddPrime);
}

TEST_CASE("block_sum") {
  const auto tt = block_sum(trivial_rep(1), trivial_rep(1));
  CHECK(tt.dimension == 2);
  CHECK(tt.generators.at(0) == Matrix::identity(2));

  CHECK(invariant_form_space(block_sum(order3_planar_rep(), trivial_rep(1))).basis.size() == 2);

  const auto r3 = cyclic_prime_rep(3);
  const auto both = block_sum(r3.rep, r3.rep);
  const Matrix blocks = Matrix::block_diagonal(r3.gram, r3.gram.scaled(5));
  for (const auto& g : both.generators) CHECK(preserves(g, blocks));
  // the block form lies in the span of the solver basis
  auto space = invariant_form_space(both);
  std::vector<Vector> rows;
  auto flatten = [](const Matrix& m) {
    Vector v;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
  };
  for (const auto& b : space.basis) rows.push_back(flatten(b));
  const std::size_t before = Matrix(rows).rank();
  rows.push_back(flatten(blocks));
  CHECK(Matrix(rows).rank() == before);

  RepGenerators two{2, {Matrix::identity(2), Matrix::identity(2)}, std::nullopt, std::nullopt};
  CHECK(kind_of([&] { block_sum(two, trivial_rep(1)); }) == ErrorKind::GeneratorCountMismatch);
}

TEST_CASE("inequivalent irreducibles force block diagonal forms") {
  const std::vector<RepGenerators> irr{trivial_rep(1), order3_planar_rep(), order4_planar_rep()};
  for (std::size_t i = 0; i < irr.size(); ++i)
    for (std::size_t j = 0; j < irr.size(); ++j) {
      if (i == j) continue;
      const auto sum = block_sum(irr[i], irr[j]);
      const std::size_t n1 = irr[i].dimension;
      for (const auto& b : invariant_form_space(sum).basis)
        for (std::size_t r = 0; r < n1; ++r)
          for (std::size_t c = n1; c < sum.dimension; ++c) CHECK(b(r, c).is_zero());
    }
}

TEST_CASE("transport_form") {
  const Matrix q{{3, 1}, {1, 5}};
  CHECK(transport_form(q, Matrix::identity(2)) == q);
  CHECK(transport_form(Matrix::identity(2), Matrix{{1, 1}, {0, 1}}) == Matrix{{1, 1}, {1, 2}});
  CHECK(kind_of([&] { transport_form(q, Matrix{{1, 2}, {2, 4}}); }) == ErrorKind::Singular);

  oracle::Gen g(41);
  std::vector<PrimeRep> pairs{cyclic_prime_rep(3), cyclic_prime_rep(5), {a4_rep(), Matrix::identity(3)},
                              {order4_planar_rep(), Matrix::identity(2)}};
  for (int i = 0; i < 50; ++i) {
    const auto& pr = pairs[static_cast<std::size_t>(i) % pairs.size()];
    const Matrix c = g.invertible(pr.gram.rows());
    const Matrix moved = transport_form(pr.gram, c);
    CHECK(moved == c.transpose() * pr.gram * c);
    for (const auto& x : closure(pr.rep.generators)) CHECK(preserves(c.inverse() * x * c, moved));
  }
}

TEST_CASE("RepGenerators validation") {
  RepGenerators bad_dim{3, {Matrix::identity(2)}, std::nullopt, std::nullopt};
  CHECK(kind_of([&] { bad_dim.validate(); }) == ErrorKind::WrongDimension);
  RepGenerators singular{2, {Matrix{{1, 0}, {0, 0}}}, std::nullopt, std::nullopt};
  CHECK(kind_of([&] { singular.validate(); }) == ErrorKind::Singular);
  RepGenerators wrong_order = order4_planar_rep();
  wrong_order.group_order = 6;
  CHECK(kind_of([&] { wrong_order.validate(); }) == ErrorKind::InvalidRepresentation);
  CHECK_NOTHROW(a4_rep().validate());
}
