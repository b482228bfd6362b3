#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ymhlab/gauge.hpp"
#include "ymhlab/recovery.hpp"

using namespace ymhlab;

namespace {
const Complex I(0.0, 1.0);

Scenario baseScenario() {
  Scenario sc;
  sc.spec = GroupSpec::su2u1();
  sc.rep = RepSpec::Electroweak(3);
  sc.hiddenA = ConnectionField::zero(sc.spec);
  sc.hiddenPhi = HiggsField::zero(2);
  sc.eps0 = 0.25;
  sc.rsSweep = {{0.0, 0.3}, {0.4, 0.2}, {-0.5, 0.15}};
  sc.seed = 7;
  sc.transport.tol = 1e-10;
  return sc;
}
}  // namespace

TEST_CASE("precondition checklist matches the hand classification") {
  Scenario sc = baseScenario();
  PreconditionReport r = checkFaithfulRecoveryPrecondition(sc);
  CHECK(r.centreNontrivial);
  CHECK(r.fullyCharged);
  CHECK(r.centreMeetsKernelTrivially);
  CHECK(r.adPlusRhoFaithful);
  CHECK(r.kernelDimRhoStar == 0);
  CHECK(r.allSatisfied());

  Scenario sm = sc;
  sm.spec = GroupSpec::standardModel();
  sm.rep = RepSpec::SMHiggs(3);
  sm.hiddenA = ConnectionField::zero(sm.spec);
  PreconditionReport r2 = checkFaithfulRecoveryPrecondition(sm);
  CHECK(r2.fullyCharged);
  CHECK(r2.kernelDimRhoStar == 8);  // the strong factor alone
  CHECK(r2.adPlusRhoFaithful);
  CHECK(r2.allSatisfied());

  Scenario bad = sc;
  bad.rep = RepSpec::Electroweak(0);
  PreconditionReport r3 = checkFaithfulRecoveryPrecondition(bad);
  CHECK(!r3.centreMeetsKernelTrivially);
  CHECK(!r3.allSatisfied());
}

TEST_CASE("forwardData: trivial connection gives identity transforms") {
  Scenario sc = baseScenario();
  HiggsVector phi0(2);
  phi0 << Complex(0.2, 0.4), Complex(1.0, -0.1);
  sc.hiddenPhi = HiggsField::constant(phi0);
  Dataset data = forwardData(sc, 5, 5e-3);
  REQUIRE(data.triples.size() == sc.rsSweep.size());
  for (const auto& td : data.triples) {
    CHECK((td.sRho - Matrix::Identity(2, 2)).norm() < 1e-9);
    CHECK((td.sAd - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-9);
  }
  REQUIRE(data.families.size() == 3);
  for (const auto& fam : data.families) CHECK(fam.samples.size() == 5);
}

TEST_CASE("forwardData: centre restriction of the adjoint transform") {
  Scenario sc = baseScenario();
  std::mt19937_64 rng(211);
  sc.hiddenA = randomSmoothConnection(sc.spec, rng, 0.4);
  sc.hiddenPhi = randomSmoothHiggs(2, rng, 0.4);
  Dataset data = forwardData(sc, 5, 5e-3);
  // centre coordinate direction: the u(1) slot is index 3 in the basis
  Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
  c(3) = 1.0;
  for (const auto& td : data.triples) CHECK((td.sAd * c - c).norm() < 1e-9);

  // a gauge-transformed hidden pair yields the conjugated dataset
  GaugeField U = GaugeField::exponential(randomAlgebraElement(sc.spec, rng), [] {
    SepScalar s;
    s.f[0] = Factor1D::trig(0.3, 0.2, 0.1, 0.8, 0.3);
    s.f[1] = Factor1D::trig(0.2, -0.1, 0.4, 1.1, 0.6);
    return s;
  }());
  Scenario scg = sc;
  auto [Ag, Phig] = applyGauge(sc.hiddenA, sc.hiddenPhi, sc.rep, U);
  scg.hiddenA = Ag;
  scg.hiddenPhi = Phig;
  Dataset dg = forwardData(scg, 5, 5e-3);
  for (std::size_t i = 0; i < data.triples.size(); ++i) {
    const auto& t = data.triples[i].triple;
    Matrix expect = rho(U.value(t.z).inverse(), sc.rep) * data.triples[i].sRho *
                    rho(U.value(t.x), sc.rep);
    CHECK((dg.triples[i].sRho - expect).norm() < 1e-7);
  }
}

TEST_CASE("recoverPhi: constant field exact, polynomial field at tolerance") {
  Scenario sc = baseScenario();
  HiggsVector phi0(2);
  phi0 << Complex(0.3, -0.2), Complex(0.9, 0.1);
  sc.hiddenPhi = HiggsField::constant(phi0);
  Dataset data = forwardData(sc, 5, 5e-3);
  RecoveryReport rep = recoverPhi(sc, data);
  CHECK(rep.pointCount > 0);
  CHECK(rep.maxError < 1e-10);

  // smooth non-constant field with an abelian-only connection part
  Scenario sp = baseScenario();
  std::mt19937_64 rng(223);
  HiggsTerm term;
  term.direction = randomHiggsVector(2, rng);
  term.profile.f[0] = Factor1D::poly({0.4, 0.5, 0.3});
  term.profile.f[1] = Factor1D::poly({1.0, -0.4});
  term.profile.f[2] = Factor1D::poly({0.8, 0.3});
  term.profileImag.f[0] = Factor1D::poly({0.2, -0.1});
  term.hasImag = true;
  sp.hiddenPhi = makeHiggs(2, {term});
  AlgebraElement centreDir(sp.spec);
  centreDir.blocks[1](0, 0) = I;
  SepScalar aProf;
  aProf.f[0] = Factor1D::trig(0.3, 0.2, 0.2, 0.9, 0.1);
  aProf.f[1] = Factor1D::trig(0.2, 0.3, 0.3, 0.7, 0.5);
  sp.hiddenA = makeConnection(sp.spec, {ConnectionTerm{1, centreDir, aProf}});
  sp.transport.tol = 1e-11;
  Dataset dp = forwardData(sp, 7, 1e-3);
  RecoveryReport rp = recoverPhi(sp, dp);
  CHECK(rp.rmsError < 1e-4);

  // non-abelian electroweak connection at the coarser budget
  Scenario se = baseScenario();
  std::mt19937_64 rng2(227);
  se.hiddenA = randomSmoothConnection(se.spec, rng2, 0.3, 3, true);
  se.hiddenPhi = randomSmoothHiggs(2, rng2, 0.5);
  se.transport.tol = 1e-11;
  Dataset de = forwardData(se, 7, 1e-3);
  RecoveryReport re = recoverPhi(se, de);
  CHECK(re.rmsError < 1e-3);
}

TEST_CASE("recoverPhi on a gauge-transformed dataset returns the transformed field") {
  Scenario sc = baseScenario();
  std::mt19937_64 rng(229);
  sc.hiddenA = randomSmoothConnection(sc.spec, rng, 0.3, 3, true);
  sc.hiddenPhi = randomSmoothHiggs(2, rng, 0.4);
  GaugeField U = GaugeField::exponential(randomAlgebraElement(sc.spec, rng), [] {
    SepScalar s;
    s.f[0] = Factor1D::trig(0.2, 0.3, 0.2, 0.8, 0.2);
    s.f[2] = Factor1D::trig(0.3, 0.1, 0.3, 0.9, 0.5);
    return s;
  }());
  Scenario scg = sc;
  auto [Ag, Phig] = applyGauge(sc.hiddenA, sc.hiddenPhi, sc.rep, U);
  scg.hiddenA = Ag;
  scg.hiddenPhi = Phig;
  scg.transport.tol = 1e-10;
  Dataset dg = forwardData(scg, 7, 2e-3);
  RecoveryReport rg = recoverPhi(scg, dg);
  // ground truth of the transformed scenario IS rho(U^{-1}) Phi
  for (int i = 0; i < rg.pointCount; ++i) {
    HiggsVector expect = rho(U.value(rg.points[static_cast<std::size_t>(i)]).inverse(), sc.rep) *
                         sc.hiddenPhi.value(rg.points[static_cast<std::size_t>(i)]);
    CHECK((rg.estimates[static_cast<std::size_t>(i)] - expect).norm() < 1e-6);
  }
}

TEST_CASE("buildRayFamily validates its inputs") {
  Scenario sc = baseScenario();
  CHECK_THROWS(buildRayFamily(sc, SpacetimePoint(0.3, 0.9, 0, 0), Eigen::Vector3d(1, 0, 0), 5,
                              1e-3, 0.4));
  CHECK_THROWS(buildRayFamily(sc, SpacetimePoint(0.3, 0.0, 0, 0), Eigen::Vector3d(1, 0, 0), 2,
                              1e-3, 0.4));
}
