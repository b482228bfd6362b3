#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ymhlab/interaction.hpp"
#include "ymhlab/ymh_pde.hpp"

using namespace ymhlab;

namespace {
const Complex I(0.0, 1.0);

AlgebraElement centreElement(const GroupSpec& spec, double v) {
  AlgebraElement b(spec);
  for (std::size_t f = 0; f < spec.factors.size(); ++f)
    if (spec.factors[f] == FactorKind::U1) b.blocks[f](0, 0) = I * v;
  return b;
}

InteractionState abelianState(double r, double s, double b2v, double b3v,
                              const HiggsVector& ups) {
  GroupSpec u1 = GroupSpec::u1();
  InteractionGeometry g = buildInteractionGeometry(r, s, 0.25);
  return makeCentreScenario(g, u1, RepSpec::Inclusion(), centreElement(u1, b2v),
                            centreElement(u1, b3v), ups);
}
}  // namespace

TEST_CASE("scenario invariants are enforced") {
  GroupSpec ew = GroupSpec::su2u1();
  InteractionGeometry g = buildInteractionGeometry(0.0, 0.3, 0.25);
  HiggsVector u1vec = HiggsVector::Ones(2);
  std::mt19937_64 rng(139);

  // non-centre gauge source is rejected
  AlgebraElement bad = randomAlgebraElement(ew, rng);
  bad.blocks[1](0, 0) = Complex(0, 0.5);
  CHECK_THROWS(makeCentreScenario(g, ew, RepSpec::Electroweak(3), bad,
                                  centreElement(ew, 1.0), u1vec));
  // zero centre source is rejected
  CHECK_THROWS(makeCentreScenario(g, ew, RepSpec::Electroweak(3), AlgebraElement(ew),
                                  centreElement(ew, 1.0), u1vec));

  InteractionState st = makeCentreScenario(g, ew, RepSpec::Electroweak(3),
                                           centreElement(ew, 0.7), centreElement(ew, -0.4),
                                           u1vec);
  CHECK(st.omega[0].norm() == 0.0);
  CHECK(st.omega[1](0) == doctest::Approx(g.s));
  CHECK(st.omega[2](0) == doctest::Approx(-g.s));
  CHECK(st.omega[1](2) == doctest::Approx(1.0));
}

TEST_CASE("initialHats: zero source, trivial transport, rescaled symbols") {
  HiggsVector zero1 = HiggsVector::Zero(1);
  InteractionState st = abelianState(0.0, 0.3, 0.8, -0.5, zero1);
  initialHats(st);
  CHECK(st.hatU[0].norm() == 0.0);
  CHECK(st.hatU[1].norm() == 0.0);

  HiggsVector ups = HiggsVector::Ones(1);
  InteractionState st2 = abelianState(0.0, 0.3, 0.8, -0.5, ups);
  initialHats(st2);
  CHECK((st2.hatU[0] - ups).norm() == 0.0);  // zero connection: untouched
  // gauge-channel symbols are omega_k b_k
  for (int k = 1; k <= 2; ++k) {
    for (int a = 0; a < 4; ++a) {
      AlgebraElement expect = st2.omega[static_cast<std::size_t>(k)](a) *
                              st2.b[static_cast<std::size_t>(k)];
      CHECK((st2.hatW[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] - expect)
                .norm() < 1e-15);
    }
  }
  // and the first channel stays empty
  for (int a = 0; a < 4; ++a) CHECK(st2.hatW[0][static_cast<std::size_t>(a)].norm() == 0.0);
}

TEST_CASE("twofold amplitudes: spot value, zero channel, linearity") {
  HiggsVector ups = HiggsVector::Ones(1);
  InteractionState st = abelianState(0.0, 0.6, 1.0, 1.0, ups);
  initialHats(st);
  twofoldAmplitudes(st);

  // r=0, s=0.6: the coefficient multiplying rho(b2) hatU1 is +0.6i
  Complex c2 = twofoldCoefficient(2, st.geom);
  CHECK(std::abs(c2 - Complex(0, 0.6)) < 1e-12);
  // and the (1,3) coefficient flips sign
  Complex c3 = twofoldCoefficient(3, st.geom);
  CHECK(std::abs(c3 - Complex(0, -0.6)) < 1e-12);

  // hatU12 = c2 * rho(b2) hatU1 with rho(b2) = i for the inclusion on U(1)
  CHECK(std::abs(st.hatU12(0) - c2 * I) < 1e-12);
  CHECK(st.hatU23.norm() == 0.0);

  // linear scaling in b2
  InteractionState st2 = abelianState(0.0, 0.6, 2.0, 1.0, ups);
  initialHats(st2);
  twofoldAmplitudes(st2);
  CHECK(std::abs(st2.hatU12(0) - 2.0 * st.hatU12(0)) < 1e-12);
}

TEST_CASE("twofold/threefold coefficients agree with exact rational arithmetic") {
  // r = s = 3/5 gives the exact pairs a(r) = a(s) = 4/5
  Rational r(3, 5), a(4, 5);
  auto [re, im] = threefoldCoefficientExact(r, a, r, a);
  Complex floatv = threefoldCoefficient(0.6, 0.6);
  CHECK(std::abs(floatv.real() - re.toDouble()) < 1e-12);
  CHECK(std::abs(floatv.imag() - im.toDouble()) < 1e-12);

  for (int k = 2; k <= 3; ++k) {
    auto [tre, tim] = twofoldCoefficientExact(k, r, a, r, a);
    InteractionGeometry g = buildInteractionGeometry(0.6, 0.6, 0.25);
    Complex f = twofoldCoefficient(k, g);
    CHECK(tre.isZero());
    CHECK(std::abs(f.imag() - tim.toDouble()) < 1e-12);
    CHECK(std::abs(f.real()) < 1e-12);
  }

  // a second exact point: r = 5/13, s = 3/5
  Rational r2(5, 13), a2(12, 13), s2(3, 5), as2(4, 5);
  auto [re2, im2] = threefoldCoefficientExact(r2, a2, s2, as2);
  Complex f2 = threefoldCoefficient(5.0 / 13.0, 0.6);
  CHECK(std::abs(f2.real() - re2.toDouble()) < 1e-12);
  CHECK(std::abs(f2.imag() - im2.toDouble()) < 1e-12);

  CHECK_THROWS(threefoldCoefficientExact(Rational(1, 2), Rational(1, 2), s2, as2));
}

TEST_CASE("threefold amplitude: structural zeros and the small-angle limit") {
  HiggsVector ups(1);
  ups(0) = Complex(0.3, -0.8);
  double b2v = 0.9, b3v = -0.6;

  // the limit value: 2 rho(b3) rho(b2) hatU1 = 2 (i b3)(i b2) ups
  Complex cb = 2.0 * (I * b3v) * (I * b2v);
  std::vector<double> ss = {0.2, 0.1, 0.05, 0.025};
  std::vector<double> remainder;
  for (double s : ss) {
    InteractionState st = abelianState(0.3, s, b2v, b3v, ups);
    initialHats(st);
    twofoldAmplitudes(st);
    threefoldAmplitude(st);
    for (int a = 0; a < 4; ++a) CHECK(st.hatW123[static_cast<std::size_t>(a)].norm() == 0.0);
    CHECK(st.hatU23.norm() == 0.0);
    remainder.push_back((st.hatU123 - cb * ups).norm());
    CHECK(std::abs(st.cbScalar() - cb.real()) < 1e-14);
  }
  for (std::size_t i = 1; i < remainder.size(); ++i) CHECK(remainder[i] < remainder[i - 1]);
  CHECK(logLogSlope(ss, remainder) >= 1.0);
}

TEST_CASE("centre sources in the full standard-model group reduce to the abelian formula") {
  GroupSpec sm = GroupSpec::standardModel();
  RepSpec rep = RepSpec::SMHiggs(3);
  InteractionGeometry g = buildInteractionGeometry(0.2, 0.15, 0.25);
  std::mt19937_64 rng(149);
  HiggsVector ups = randomHiggsVector(2, rng);
  double x2 = 0.7, x3 = -0.3;
  InteractionState st = makeCentreScenario(g, sm, rep, centreElement(sm, x2),
                                           centreElement(sm, x3), ups);
  initialHats(st);
  twofoldAmplitudes(st);
  threefoldAmplitude(st);
  // centre action scalar is i * nY * x
  CHECK(std::abs(st.centreActionScalar(2) - I * 3.0 * x2) < 1e-14);
  Complex coeff = threefoldCoefficientViaPairings(g);
  HiggsVector expect = coeff * (I * 3.0 * x2) * (I * 3.0 * x3) * ups;
  CHECK((st.hatU123 - expect).norm() < 1e-12);
  for (int a = 0; a < 4; ++a) CHECK(st.hatW123[static_cast<std::size_t>(a)].norm() == 0.0);
}

TEST_CASE("display coefficient equals the independent pairing assembly") {
  std::mt19937_64 rng(151);
  std::uniform_real_distribution<double> rDist(-0.8, 0.8), sDist(0.02, 0.5);
  for (int it = 0; it < 40; ++it) {
    double r = rDist(rng), s = sDist(rng);
    InteractionGeometry g = buildInteractionGeometry(r, s, 0.25);
    Complex viaPairings = threefoldCoefficientViaPairings(g);
    Complex viaClosedForm = threefoldCoefficient(r, s);
    CHECK(std::abs(viaPairings - viaClosedForm) <
          1e-12 * std::max(1.0, std::abs(viaClosedForm)));
  }
}

TEST_CASE("propagateToZ: trivial background and ratio structure") {
  GroupSpec u1 = GroupSpec::u1();
  RepSpec inc = RepSpec::Inclusion();
  InteractionGeometry g = buildInteractionGeometry(0.0, 0.2, 0.25);
  HiggsVector ups(1);
  ups(0) = Complex(0.5, 0.1);
  InteractionState st = makeCentreScenario(g, u1, inc, centreElement(u1, 0.8),
                                           centreElement(u1, 0.5), ups);
  initialHats(st);
  twofoldAmplitudes(st);
  threefoldAmplitude(st);

  ConnectionField zero = ConnectionField::zero(u1);
  HiggsField zeroPhi = HiggsField::zero(1);
  PropagatedObservable obs = propagateToZ(st, zero, zeroPhi, {1e-10});
  CHECK((obs.higgsComponent - obs.cb * ups).norm() < 1e-10);
  CHECK(obs.ymComponent.norm() < 1e-12);
  CHECK(!obs.scale.isUnit());  // carries the opaque normalization symbol

  // with a nontrivial pair, the two channels reproduce the transport blocks
  std::mt19937_64 rng(157);
  ConnectionField A = randomSmoothConnection(u1, rng, 0.4);
  HiggsField Phi = randomSmoothHiggs(1, rng, 0.5);
  PropagatedObservable obs2 = propagateToZ(st, A, Phi, {1e-10});
  LightRay in = LightRay::fromEndpoints(g.x[0], g.y);
  LightRay outLeg = LightRay::fromEndpoints(g.y, g.z);
  Matrix pIn = transportRep(A, inc, in, {1e-10});
  BlockTransport leg = coupledTransport(A, Phi, inc, 0, outLeg, {1e-10});
  HiggsVector expectH = obs2.cb * (leg.pRho * (pIn * ups));
  CHECK((obs2.higgsComponent - expectH).norm() < 1e-9);
  AlgebraElement expectY = obs2.cb * leg.applyBlock12(HiggsVector(pIn * ups));
  CHECK((obs2.ymComponent - expectY).norm() < 1e-9);
  // the cb scalar cancels in the channel ratio
  double ratio = obs2.ymComponent.norm() / obs2.higgsComponent.norm();
  double ratioNoCb = expectY.norm() / expectH.norm();
  CHECK(ratio == doctest::Approx(ratioNoCb).epsilon(1e-12));
}

TEST_CASE("adjoint-channel bracket observable") {
  GroupSpec ew = GroupSpec::su2u1();
  std::mt19937_64 rng(163);
  auto idMap = [](const AlgebraElement& x) { return x; };

  AlgebraElement b1 = randomAlgebraElement(ew, rng);
  CHECK(adChannelBracketObservable(b1, 2.5 * b1, idMap).norm() < 1e-12);

  GroupSpec u1 = GroupSpec::u1();
  AlgebraElement c1 = randomAlgebraElement(u1, rng), c2 = randomAlgebraElement(u1, rng);
  CHECK(adChannelBracketObservable(c1, c2, idMap).norm() == 0.0);

  GroupSpec su2 = GroupSpec::su2();
  auto basis = algebraBasis(su2);
  AlgebraElement expect = bracket(basis[1], bracket(basis[0], basis[1]));
  CHECK((adChannelBracketObservable(basis[0], basis[1], idMap) - expect).norm() < 1e-15);
}

TEST_CASE("opaque scale bookkeeping") {
  OpaqueScale a = OpaqueScale::symbol("alpha");
  OpaqueScale b = OpaqueScale::symbol("iota");
  CHECK((a * b / a / b).isUnit());
  CHECK(!(a * b).isUnit());
  CHECK((a * b).str() == "alpha*iota");
}
