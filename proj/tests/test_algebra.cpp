#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ymhlab/algebra.hpp"

using namespace ymhlab;

namespace {
const Complex I(0.0, 1.0);

Matrix pauli1() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix pauli2() {
  Matrix m(2, 2);
  m << 0, -I, I, 0;
  return m;
}
Matrix pauli3() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace

TEST_CASE("bracket: antisymmetry and the su(2) table") {
  std::mt19937_64 rng(7);
  GroupSpec ew = GroupSpec::su2u1();
  for (int it = 0; it < 20; ++it) {
    AlgebraElement x = randomAlgebraElement(ew, rng);
    CHECK(bracket(x, x).norm() == doctest::Approx(0.0).epsilon(1e-14));
  }

  GroupSpec u1 = GroupSpec::u1();
  AlgebraElement a = randomAlgebraElement(u1, rng), b = randomAlgebraElement(u1, rng);
  CHECK(bracket(a, b).norm() == 0.0);

  // [i s1/2, i s2/2] = -i s3/2, checked against a direct 2x2 multiply
  GroupSpec su2 = GroupSpec::su2();
  AlgebraElement x(su2), y(su2);
  x.blocks[0] = 0.5 * I * pauli1();
  y.blocks[0] = 0.5 * I * pauli2();
  Matrix direct = x.blocks[0] * y.blocks[0] - y.blocks[0] * x.blocks[0];
  CHECK((direct - (-0.5 * I * pauli3())).norm() == doctest::Approx(0.0).epsilon(1e-15));
  AlgebraElement z = bracket(x, y);
  CHECK((z.blocks[0] - (-0.5 * I * pauli3())).norm() < 1e-14);
}

TEST_CASE("bracket rejects mismatched specs") {
  std::mt19937_64 rng(3);
  AlgebraElement a = randomAlgebraElement(GroupSpec::su2(), rng);
  AlgebraElement b = randomAlgebraElement(GroupSpec::u1(), rng);
  CHECK_THROWS(bracket(a, b));
  CHECK_THROWS(adInner(a, b));
}

TEST_CASE("adInner: definiteness, hand value, infinitesimal invariance") {
  std::mt19937_64 rng(11);
  GroupSpec sm = GroupSpec::standardModel();
  for (int it = 0; it < 10; ++it) {
    AlgebraElement x = randomAlgebraElement(sm, rng);
    if (x.norm() > 1e-8) CHECK(adInner(x, x) > 0.0);
  }

  // weight 1, x = y = (i) in the u(1) factor: -tr(i*i) = 1
  GroupSpec u1 = GroupSpec::u1();
  AlgebraElement x(u1);
  x.blocks[0](0, 0) = I;
  CHECK(adInner(x, x) == doctest::Approx(1.0).epsilon(1e-15));

  for (int it = 0; it < 50; ++it) {
    AlgebraElement a = randomAlgebraElement(sm, rng);
    AlgebraElement b = randomAlgebraElement(sm, rng);
    AlgebraElement c = randomAlgebraElement(sm, rng);
    CHECK(std::abs(adInner(bracket(c, a), b) + adInner(a, bracket(c, b))) < 1e-10);
  }

  // Ad-invariance under the group action
  for (int it = 0; it < 20; ++it) {
    AlgebraElement a = randomAlgebraElement(sm, rng);
    AlgebraElement b = randomAlgebraElement(sm, rng);
    GroupElement g = randomGroupElement(sm, rng);
    CHECK(std::abs(adInner(adjointAction(g, a), adjointAction(g, b)) - adInner(a, b)) < 1e-10);
  }
}

TEST_CASE("expMap: identity, scalar phase, series oracle") {
  GroupSpec su2 = GroupSpec::su2();
  AlgebraElement zero(su2);
  GroupElement id = expMap(zero);
  CHECK(id.distanceTo(GroupElement::identity(su2)) < 1e-15);

  GroupSpec u1 = GroupSpec::u1();
  AlgebraElement th(u1);
  th.blocks[0](0, 0) = I * 0.7;
  GroupElement g = expMap(th);
  CHECK(std::abs(g.blocks[0](0, 0) - std::exp(I * 0.7)) < 1e-15);

  // series-summation oracle on su(2)
  std::mt19937_64 rng(5);
  for (int it = 0; it < 10; ++it) {
    AlgebraElement x = randomAlgebraElement(su2, rng, 0.8);
    Matrix series = Matrix::Identity(2, 2);
    Matrix term = Matrix::Identity(2, 2);
    for (int k = 1; k <= 40; ++k) {
      term = term * x.blocks[0] / static_cast<double>(k);
      series += term;
    }
    GroupElement e = expMap(x);
    e.validate(1e-10);
    CHECK((e.blocks[0] - series).norm() < 1e-10);
  }
}

TEST_CASE("rho: identity, hypercharge phase, adjoint conjugation") {
  GroupSpec ew = GroupSpec::su2u1();
  RepSpec rep = RepSpec::Electroweak(3);
  GroupElement id = GroupElement::identity(ew);
  CHECK((rho(id, rep) - Matrix::Identity(2, 2)).norm() < 1e-15);

  // g = (Id, e^{i theta}) acts as e^{3 i theta}
  double theta = 0.31;
  GroupElement g = GroupElement::identity(ew);
  g.blocks[1](0, 0) = std::exp(I * theta);
  Matrix m = rho(g, rep);
  CHECK((m - std::exp(3.0 * I * theta) * Matrix::Identity(2, 2)).norm() < 1e-12);

  // homomorphism property on random pairs
  std::mt19937_64 rng(13);
  for (int it = 0; it < 10; ++it) {
    GroupElement a = randomGroupElement(ew, rng);
    GroupElement b = randomGroupElement(ew, rng);
    CHECK((rho(a * b, rep) - rho(a, rep) * rho(b, rep)).norm() < 1e-10);
  }

  // adjoint representation against matrix conjugation
  RepSpec ad = RepSpec::Adjoint();
  const auto basis = algebraBasis(ew);
  const auto gram = algebraGramDiagonal(ew);
  for (int it = 0; it < 5; ++it) {
    GroupElement g2 = randomGroupElement(ew, rng);
    Matrix madj = rho(g2, ad);
    AlgebraElement w = randomAlgebraElement(ew, rng);
    // coordinates of w in the orthonormal basis
    Eigen::VectorXcd coords(static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
      coords(static_cast<int>(i)) = adInner(w, basis[i]) / std::sqrt(gram[i]);
    Eigen::VectorXcd rotated = madj * coords;
    AlgebraElement conj = adjointAction(g2, w);
    Eigen::VectorXcd expect(static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
      expect(static_cast<int>(i)) = adInner(conj, basis[i]) / std::sqrt(gram[i]);
    CHECK((rotated - expect).norm() < 1e-10);
  }
}

TEST_CASE("rhoStar: linearity, hypercharge action, kernel for the strong factor") {
  GroupSpec ew = GroupSpec::su2u1();
  RepSpec rep = RepSpec::Electroweak(3);
  AlgebraElement zero(ew);
  CHECK(rhoStar(zero, rep).norm() == 0.0);

  AlgebraElement x(ew);
  x.blocks[1](0, 0) = I;  // (0, i)
  CHECK((rhoStar(x, rep) - 3.0 * I * Matrix::Identity(2, 2)).norm() < 1e-14);

  GroupSpec sm = GroupSpec::standardModel();
  RepSpec smRep = RepSpec::SMHiggs(3);
  std::mt19937_64 rng(17);
  AlgebraElement strongOnly(sm);
  AlgebraElement r = randomAlgebraElement(sm, rng);
  strongOnly.blocks[0] = r.blocks[0];
  CHECK(rhoStar(strongOnly, smRep).norm() < 1e-14);

  // derivative of rho(exp(tx)) at t = 0 by central differences
  for (int it = 0; it < 5; ++it) {
    AlgebraElement y = randomAlgebraElement(ew, rng);
    double h = 1e-5;
    Matrix fd = (rho(expMap(h * y), rep) - rho(expMap(-1.0 * h * y), rep)) / (2.0 * h);
    CHECK((fd - rhoStar(y, rep)).norm() < 1e-6);
  }

  // anti-Hermitian for all representations in play
  for (int it = 0; it < 20; ++it) {
    AlgebraElement y = randomAlgebraElement(sm, rng);
    Matrix m = rhoStar(y, smRep);
    CHECK((m + m.adjoint()).norm() < 1e-10);
    Matrix ma = rhoStar(y, RepSpec::Adjoint());
    CHECK((ma + ma.adjoint()).norm() < 1e-10);
  }
}

TEST_CASE("couplingForm: antisymmetry, abelian closed form, defining identity") {
  std::mt19937_64 rng(23);
  GroupSpec u1 = GroupSpec::u1();
  RepSpec inc = RepSpec::Inclusion();  // n = 1 phase representation on C
  for (int it = 0; it < 20; ++it) {
    HiggsVector v = randomHiggsVector(1, rng);
    HiggsVector w = randomHiggsVector(1, rng);
    AlgebraElement j = couplingForm(v, w, u1, inc);
    // closed form: -i * n * Im<v, w> with n = 1, weight 1
    Complex inner = higgsInner(v, w);
    CHECK(std::abs(j.blocks[0](0, 0) - (-I * inner.imag())) < 1e-13);
    CHECK(couplingForm(v, v, u1, inc).norm() < 1e-14);
  }
}

TEST_CASE("couplingForm: defining identity and equivariance across representations") {
  std::mt19937_64 rng(29);
  struct Case {
    GroupSpec spec;
    RepSpec rep;
  };
  std::vector<Case> cases = {{GroupSpec::su2u1(), RepSpec::Electroweak(3)},
                             {GroupSpec::standardModel(), RepSpec::SMHiggs(3)},
                             {GroupSpec::su2u1(), RepSpec::Adjoint()}};
  for (const auto& c : cases) {
    int d = c.rep.dim(c.spec);
    double worstId = 0, worstEq = 0, worstChain = 0;
    for (int it = 0; it < 200; ++it) {
      HiggsVector v = randomHiggsVector(d, rng);
      HiggsVector w = randomHiggsVector(d, rng);
      worstId = std::max(worstId, couplingFormResidual(v, w, c.spec, c.rep));
      GroupElement g = randomGroupElement(c.spec, rng);
      AlgebraElement lhs = adjointAction(g, couplingForm(v, w, c.spec, c.rep));
      Matrix rg = rho(g, c.rep);
      AlgebraElement rhs = couplingForm(rg * v, rg * w, c.spec, c.rep);
      worstEq = std::max(worstEq, (lhs - rhs).norm());

      AlgebraElement x = randomAlgebraElement(c.spec, rng);
      Matrix chainLhs = rhoStar(adjointAction(g, x), c.rep);
      Matrix chainRhs = rg * rhoStar(x, c.rep) * rg.adjoint();
      worstChain = std::max(worstChain, (chainLhs - chainRhs).norm());
    }
    CHECK(worstId < 1e-9);
    CHECK(worstEq < 1e-9);
    CHECK(worstChain < 1e-9);
  }
}

TEST_CASE("fully charged and faithfulness classification") {
  GroupSpec ew = GroupSpec::su2u1();
  GroupSpec sm = GroupSpec::standardModel();
  CHECK(isFullyCharged(ew, RepSpec::Electroweak(3)));
  CHECK(kernelDimRhoStar(ew, RepSpec::Electroweak(3)) == 0);
  CHECK(isFullyCharged(sm, RepSpec::SMHiggs(3)));
  CHECK(kernelDimRhoStar(sm, RepSpec::SMHiggs(3)) == 8);  // the strong factor
  CHECK(isFaithfulAdPlusRho(sm, RepSpec::SMHiggs(3)));
  CHECK(centreMeetsKernelTrivially(ew, RepSpec::Electroweak(3)));
  CHECK(centreMeetsKernelTrivially(sm, RepSpec::SMHiggs(3)));

  // hypercharge 0: the phase factor acts trivially
  GroupSpec u1 = GroupSpec::u1();
  RepSpec trivial = RepSpec::Electroweak(0);
  CHECK(!centreMeetsKernelTrivially(ew, trivial));
  CHECK(isFullyCharged(ew, trivial));  // su(2) still acts
  // pure U(1) with zero charge: nothing acts on W at all; the adjoint
  // representation of an abelian group realizes exactly that
  CHECK(!isFullyCharged(u1, RepSpec::Adjoint()));
}

TEST_CASE("centreDecompose splits off the abelian part") {
  std::mt19937_64 rng(31);
  GroupSpec su2 = GroupSpec::su2();
  AlgebraElement x = randomAlgebraElement(su2, rng);
  auto [z1, p1] = centreDecompose(x);
  CHECK(z1.norm() == 0.0);

  GroupSpec u1 = GroupSpec::u1();
  AlgebraElement y = randomAlgebraElement(u1, rng);
  auto [z2, p2] = centreDecompose(y);
  CHECK(p2.norm() == 0.0);

  GroupSpec ew = GroupSpec::su2u1();
  AlgebraElement w = randomAlgebraElement(ew, rng);
  auto [z3, p3] = centreDecompose(w);
  CHECK((z3 + p3 - w).norm() < 1e-15);
  CHECK(std::abs(adInner(z3, p3)) < 1e-15);
  // bracket-kernel oracle: z commutes with the whole basis
  for (const auto& e : algebraBasis(ew)) CHECK(bracket(z3, e).norm() < 1e-15);
  CHECK(z3.blocks[1](0, 0) == w.blocks[1](0, 0));
  CHECK(z3.blocks[0].norm() == 0.0);
}

TEST_CASE("centre detector matches the hand classification") {
  GroupSpec ew = GroupSpec::su2u1();
  GroupSpec sm = GroupSpec::standardModel();
  CHECK(centreMeetsKernelTrivially(ew, RepSpec::Electroweak(1)));
  CHECK(centreMeetsKernelTrivially(sm, RepSpec::SMHiggs(1)));
  CHECK(!centreMeetsKernelTrivially(ew, RepSpec::Electroweak(0)));
  CHECK(!centreMeetsKernelTrivially(sm, RepSpec::SMHiggs(0)));
}

TEST_CASE("validation catches malformed elements") {
  GroupSpec su2 = GroupSpec::su2();
  AlgebraElement x(su2);
  x.blocks[0] << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  CHECK_THROWS(x.validate());  // Hermitian, not anti-Hermitian

  GroupElement g = GroupElement::identity(su2);
  g.blocks[0] *= 2.0;
  CHECK_THROWS(g.validate());

  CHECK_THROWS(GroupSpec({}, {}));
  CHECK_THROWS(GroupSpec({FactorKind::U1}, {-1.0}));
  CHECK_THROWS(RepSpec::Electroweak(3).validate(GroupSpec::su3()));
}
