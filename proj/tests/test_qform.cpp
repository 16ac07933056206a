#include "doctest.h"
#include "flatcusp/errors.hpp"
#include "flatcusp/qform.hpp"
#include "oracles.hpp"

using namespace flatcusp;

namespace {

const Place inf = Place::infinity();
Place P(long p) { return Place::prime(p); }

DiagonalForm D(const char* s) { return DiagonalForm::parse(s); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

// Invariants of an integer diagonal form straight from the Hensel oracle.
FormInvariants oracle_invariants(const std::vector<long>& a) {
  FormInvariants f;
  f.rank = a.size();
  long d = 1;
  for (long x : a) {
    (x > 0 ? f.signature.positive : f.signature.negative) += 1;
    d = oracle::squarefree_part(d * oracle::squarefree_part(x));
  }
  f.discriminant = SquareClass::from_representative(d);
  for (long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29})
    if (oracle::hasse(a, p) == -1) f.hasse_negative.insert(P(p));
  if (oracle::hasse(a, 0) == -1) f.hasse_negative.insert(inf);
  return f;
}

Matrix random_isometry_of_11(oracle::Gen& g) {
  // rotations by Pythagorean triples and coordinate reflections preserve <1,1>
  static const std::vector<std::array<long, 3>> triples{{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {1, 0, 1}};
  const auto& t = g.pick(triples);
  const Rational c{Integer(t[0]), Integer(t[2])}, s{Integer(t[1]), Integer(t[2])};
  Matrix m{{c, -s}, {s, c}};
  if (g.coin()) m = m * Matrix{{1, 0}, {0, -1}};
  return m;
}

}  // namespace

TEST_CASE("diagonal form parsing and validation") {
  CHECK(D("3,1,1,1,-1").rank() == 5);
  CHECK(D("1/2, -3").entries()[0] == Rational(Integer(1), Integer(2)));
  CHECK(kind_of([] { D("1,0,2"); }) == ErrorKind::ZeroEntry);
  CHECK(D("3,1").to_string() == "3,1");
}

TEST_CASE("diagonalize examples") {
  const Matrix g{{2, -1}, {-1, 2}};
  const auto r = diagonalize(g);
  CHECK(r.form == D("2,3/2"));
  CHECK(r.transition.transpose() * g * r.transition == r.form.gram());

  const Matrix h{{0, 1}, {1, 0}};
  const auto s = diagonalize(h);
  CHECK(s.form == D("1,-1"));
  CHECK(s.transition.transpose() * h * s.transition == s.form.gram());

  CHECK(diagonalize(Matrix::identity(3)).form == D("1,1,1"));
  CHECK(kind_of([] { diagonalize(Matrix{{1, 2}, {3, 4}}); }) == ErrorKind::NotSymmetric);
  CHECK(kind_of([] { diagonalize(Matrix{{1, 1}, {1, 1}}); }) == ErrorKind::Degenerate);
  CHECK(kind_of([] { diagonalize(Matrix{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}); }) == ErrorKind::Degenerate);

  const Matrix z{{0, 1, 2}, {1, 0, 3}, {2, 3, 0}};
  const auto t = diagonalize(z);
  CHECK(t.transition.transpose() * z * t.transition == t.form.gram());
  CHECK_FALSE(t.transition.determinant().is_zero());
}

TEST_CASE("invariants examples") {
  const auto q0 = invariants(D("1,1,1,1,-1"));
  CHECK(q0.rank == 5);
  CHECK(q0.signature == Signature{4, 1});
  CHECK(q0.discriminant.representative() == -1);
  CHECK(q0.hasse_negative.empty());

  const auto q3 = invariants(D("3,1,1,1,-1"));
  CHECK(q3.discriminant.representative() == -3);
  CHECK(q3.hasse_negative == PlaceSet{P(2), P(3)});
  CHECK(oracle::hensel_hilbert(3, -1, 2) == -1);
  CHECK(oracle::hensel_hilbert(3, -1, 3) == -1);
  CHECK(q3 == oracle_invariants({3, 1, 1, 1, -1}));

  const auto one = invariants(D("1"));
  CHECK(one.signature == Signature{1, 0});
  CHECK(one.discriminant.representative() == 1);
  CHECK(one.hasse_negative.empty());

  CHECK(invariants(D("-1,-1")).hasse_negative == PlaceSet{P(2), inf});
}

TEST_CASE("invariants agree with the oracle on integer forms") {
  oracle::Gen g(21);
  for (int i = 0; i < 60; ++i) {
    std::vector<long> a;
    const long n = g.range(1, 5);
    for (long k = 0; k < n; ++k) a.push_back(g.pick(std::vector<long>{1, -1, 2, -2, 3, -3, 5, 6, -7, 10, 13, -15}));
    std::vector<Rational> r(a.begin(), a.end());
    CHECK(invariants(DiagonalForm(r)) == oracle_invariants(a));
  }
}

TEST_CASE("validate rejects impossible data") {
  FormInvariants t = invariants(D("1,1,1"));
  CHECK_NOTHROW(t.validate());
  t.hasse_negative = {P(2)};
  CHECK(kind_of([&] { t.validate(); }) == ErrorKind::InvalidTarget);
  t.hasse_negative = {P(2), P(3)};
  CHECK_NOTHROW(t.validate());
  t.discriminant = square_class(-1);
  CHECK(kind_of([&] { t.validate(); }) == ErrorKind::InvalidTarget);

  FormInvariants one = invariants(D("5"));
  one.hasse_negative = {P(2), P(5)};
  CHECK(kind_of([&] { one.validate(); }) == ErrorKind::InvalidTarget);

  // rank 2 with -d a square everywhere cannot have eps = -1 anywhere
  FormInvariants hyp = invariants(D("1,-1"));
  hyp.hasse_negative = {P(3), P(5)};
  CHECK(kind_of([&] { hyp.validate(); }) == ErrorKind::InvalidTarget);
}

TEST_CASE("sum_invariants examples") {
  const auto s = sum_invariants(invariants(D("1")), invariants(D("-1")));
  CHECK(s.signature == Signature{1, 1});
  CHECK(s.discriminant.representative() == -1);
  CHECK(s.hasse_negative.empty());

  CHECK(sum_invariants(invariants(D("3,1")), invariants(D("1,-1"))) == invariants(D("3,1,1,-1")));

  const auto ff = sum_invariants(invariants(D("5")), invariants(D("5")));
  CHECK(ff.discriminant.representative() == 1);
  CHECK(ff == oracle_invariants({5, 5}));
  CHECK(oracle::hensel_hilbert(5, 5, 2) == 1);
  CHECK(oracle::hensel_hilbert(5, 5, 5) == 1);
  CHECK(ff.hasse_negative.empty());
}

TEST_CASE("scale_invariants examples") {
  const auto f = invariants(D("3,1,1,1,-1"));
  CHECK(scale_invariants(f, 7).hasse_negative == f.hasse_negative);
  CHECK(scale_invariants(f, 1) == f);
  CHECK(scale_invariants(invariants(D("3,1")), 5) == invariants(D("15,5")));
  CHECK(kind_of([&] { scale_invariants(f, -2); }) == ErrorKind::NonPositiveScalar);
  CHECK(kind_of([&] { scale_invariants(f, 0); }) == ErrorKind::NonPositiveScalar);
}

TEST_CASE("equivalence examples") {
  CHECK(is_equivalent(invariants(D("1,-1")), invariants(D("2,-2"))));
  // explicit transition matrix
  const Matrix c{{Rational(Integer(3), Integer(4)), Rational(Integer(1), Integer(4))},
                 {Rational(Integer(1), Integer(4)), Rational(Integer(3), Integer(4))}};
  CHECK(c.transpose() * D("2,-2").gram() * c == D("1,-1").gram());

  CHECK_FALSE(is_equivalent(invariants(D("3,1,1,1,-1")), invariants(D("1,1,1,1,-1"))));
  const auto f = invariants(D("7,-2,3"));
  CHECK(is_equivalent(f, f));
}

TEST_CASE("projective equivalence examples") {
  const auto q0 = invariants(D("1,1,1,1,-1"));
  CHECK(is_proj_equivalent(q0, q0));
  CHECK(is_proj_equivalent(q0, invariants(D("1,1,1,1,-1").scaled(7))));
  CHECK_FALSE(is_proj_equivalent(invariants(D("1,1,1,1")), invariants(D("1,1,1,5"))));
  CHECK(kind_of([&] { is_proj_equivalent(q0, invariants(D("1,1"))); }) == ErrorKind::RankMismatch);
  CHECK_FALSE(is_proj_equivalent(invariants(D("1,1,1")), invariants(D("1,1,-1"))));
}

TEST_CASE("cusp complement examples") {
  CHECK(cusp_complement_invariants(invariants(D("1,1,1,1,-1"))) == invariants(D("1,1,1")));
  CHECK(cusp_complement_invariants(invariants(D("3,1,1,1,-1"))) == invariants(D("3,1,1")));
  CHECK(kind_of([] { cusp_complement_invariants(invariants(D("1,1,1,-1"))); }) == ErrorKind::WrongSignature);
  CHECK(kind_of([] { cusp_complement_invariants(invariants(D("1,1,1,-1,-1"))); }) == ErrorKind::WrongSignature);

  oracle::Gen g(22);
  const auto hyp = invariants(D("1,-1"));
  for (int i = 0; i < 100; ++i) {
    const auto q = invariants(g.signed_form(static_cast<std::size_t>(g.range(4, 8)), 1));
    const auto f = cusp_complement_invariants(q);
    CHECK(f.signature.negative == 0);
    CHECK(sum_invariants(f, hyp) == q);
  }
}

TEST_CASE("split_hyperbolic examples") {
  const Matrix h{{0, 1}, {1, 0}};
  const Matrix c = split_hyperbolic(h, {{1, 0}});
  CHECK(c.transpose() * h * c == D("1,-1").gram());

  const Matrix h4{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
  const Matrix c4 = split_hyperbolic(h4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK(c4.transpose() * h4 * c4 == D("1,1,-1,-1").gram());

  // non-coordinate isotropic plane, then a form with a nonzero B block
  const Matrix g = D("1,1,-1,-1").gram();
  const Matrix c5 = split_hyperbolic(g, {{1, 0, 1, 0}, {0, 1, 0, 1}});
  CHECK(c5.transpose() * g * c5 == D("1,1,-1,-1").gram());
  const Matrix g2{{2, 1, 0, 0}, {1, 0, 0, 1}, {0, 0, 0, 1}, {0, 1, 1, 3}};
  const Matrix c6 = split_hyperbolic(g2, {{0, 1, 0, 0}, {0, 0, 1, 0}});
  CHECK(c6.transpose() * g2 * c6 == D("1,1,-1,-1").gram());

  CHECK(kind_of([] { split_hyperbolic(Matrix::identity(2), {{1, 0}}); }) == ErrorKind::NotIsotropic);
  CHECK(kind_of([&] { split_hyperbolic(h4, {{1, 0, 0, 0}}); }) == ErrorKind::WrongDimension);
  CHECK(kind_of([&] { split_hyperbolic(h4, {{1, 0, 0, 0}, {2, 0, 0, 0}}); }) == ErrorKind::WrongDimension);
}

TEST_CASE("parabolic embedding examples") {
  const Matrix m = D("1,1").gram();
  CHECK(parabolic_embed(m, Matrix::identity(2), {0, 0}) == Matrix::identity(4));

  const Matrix x = parabolic_embed(m, Matrix::identity(2), {1, 0});
  const Rational half(Integer(1), Integer(2));
  CHECK(x(2, 2) == half);
  CHECK(x(2, 3) == half);
  CHECK(x(3, 2) == -half);
  CHECK(x(3, 3) == Rational(Integer(3), Integer(2)));
  const Matrix qhat = D("1,1,1,-1").gram();
  CHECK(x.transpose() * qhat * x == qhat);
  CHECK(x * Vector{0, 0, 1, 1} == Vector{0, 0, 1, 1});

  CHECK(kind_of([&] { parabolic_embed(m, Matrix{{1, 1}, {0, 1}}, {0, 0}); }) == ErrorKind::NotIsometry);
  CHECK(kind_of([&] { parabolic_embed(m, Matrix::identity(2), {0, 0, 0}); }) == ErrorKind::WrongDimension);
}

TEST_CASE("parabolic embedding is a homomorphism preserving the form") {
  oracle::Gen g(23);
  for (const char* f : {"1,1", "3,1"}) {
    const Matrix m = D(f).gram();
    const Matrix qhat = Matrix::block_diagonal(m, D("1,-1").gram());
    for (int i = 0; i < 50; ++i) {
      // <3,1> keeps only the sign changes; <1,1> also has rotations
      Matrix a = std::string(f) == "1,1" ? random_isometry_of_11(g)
                                         : Matrix{{g.coin() ? 1 : -1, 0}, {0, g.coin() ? 1 : -1}};
      Matrix b = std::string(f) == "1,1" ? random_isometry_of_11(g) : Matrix::identity(2);
      const Vector v{g.rational(9, 5), g.rational(9, 5)};
      const Vector w{g.rational(9, 5), g.rational(9, 5)};
      const Matrix xa = parabolic_embed(m, a, v);
      CHECK(xa.transpose() * qhat * xa == qhat);
      CHECK(xa * Vector{0, 0, 1, 1} == Vector{0, 0, 1, 1});
      const Vector aw = a * w;
      CHECK(xa * parabolic_embed(m, b, w) == parabolic_embed(m, a * b, {v[0] + aw[0], v[1] + aw[1]}));
    }
  }
}

TEST_CASE("invariants are unchanged by a change of basis") {
  oracle::Gen g(24);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(g.range(1, 8));
    const DiagonalForm f(g.entries(n));
    const Matrix t = g.invertible(n);
    const Matrix gram = t.transpose() * f.gram() * t;
    const auto d = diagonalize(gram);
    CHECK(d.transition.transpose() * gram * d.transition == d.form.gram());
    CHECK(is_equivalent(invariants(d.form), invariants(f)));
  }
}

TEST_CASE("scaling law matches direct computation in every rank class") {
  oracle::Gen g(25);
  int branches[4] = {0, 0, 0, 0};
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(g.range(1, 8));
    const DiagonalForm f(g.entries(n));
    const Rational m = g.positive(40, 6);
    CHECK(scale_invariants(invariants(f), m) == invariants(f.scaled(m)));
    CHECK(is_proj_equivalent(invariants(f), scale_invariants(invariants(f), m)));
    ++branches[n % 4];
  }
  for (int b : branches) CHECK(b > 0);
}

TEST_CASE("sum law matches concatenation") {
  oracle::Gen g(26);
  for (int i = 0; i < 200; ++i) {
    const DiagonalForm f(g.entries(static_cast<std::size_t>(g.range(1, 4))));
    const DiagonalForm h(g.entries(static_cast<std::size_t>(g.range(1, 4))));
    CHECK(sum_invariants(invariants(f), invariants(h)) == invariants(direct_sum(f, h)));
  }
}

TEST_CASE("equivalence implies projective equivalence") {
  oracle::Gen g(27);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(g.range(2, 6));
    const auto f = invariants(DiagonalForm(g.entries(n, 6, 1)));
    const auto h = invariants(DiagonalForm(g.entries(n, 6, 1)));
    if (is_equivalent(f, h)) CHECK(is_proj_equivalent(f, h));
    CHECK(is_proj_equivalent(f, h) == is_proj_equivalent(h, f));
  }
}
