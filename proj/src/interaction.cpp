#include "ymhlab/interaction.hpp"

#include <cmath>
#include <sstream>

namespace ymhlab {

namespace {
const Complex kI(0.0, 1.0);

AlgebraOneForm zeroOneForm(const GroupSpec& s) {
  return AlgebraOneForm{AlgebraElement(s), AlgebraElement(s), AlgebraElement(s),
                        AlgebraElement(s)};
}
}  // namespace

OpaqueScale OpaqueScale::operator*(const OpaqueScale& o) const {
  OpaqueScale r = *this;
  for (const auto& [k, v] : o.exps_) {
    r.exps_[k] += v;
    if (r.exps_[k] == 0) r.exps_.erase(k);
  }
  return r;
}

OpaqueScale OpaqueScale::operator/(const OpaqueScale& o) const {
  OpaqueScale r = *this;
  for (const auto& [k, v] : o.exps_) {
    r.exps_[k] -= v;
    if (r.exps_[k] == 0) r.exps_.erase(k);
  }
  return r;
}

bool OpaqueScale::isUnit() const { return exps_.empty(); }

std::string OpaqueScale::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : exps_) {
    if (!first) os << "*";
    os << k;
    if (v != 1) os << "^" << v;
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

Complex InteractionState::centreActionScalar(int k) const {
  Matrix m = rhoStar(b[static_cast<std::size_t>(k - 1)], rep);
  Complex mu = m(0, 0);
  if ((m - mu * Matrix::Identity(m.rows(), m.cols())).norm() > 1e-12 * std::max(1.0, m.norm()))
    throw std::invalid_argument("centre source does not act as a scalar in this representation");
  return mu;
}

double InteractionState::cbScalar() const {
  Complex c = 2.0 * centreActionScalar(3) * centreActionScalar(2);
  if (std::abs(c.imag()) > 1e-12 * std::max(1.0, std::abs(c)))
    throw std::logic_error("cbScalar: expected a real value");
  return c.real();
}

InteractionState makeCentreScenario(const InteractionGeometry& geom, const GroupSpec& spec,
                                    const RepSpec& rep, const AlgebraElement& b2,
                                    const AlgebraElement& b3, const HiggsVector& upsilon1) {
  InteractionState s;
  s.geom = geom;
  s.spec = spec;
  s.rep = rep;
  const int d = rep.dim(spec);
  s.b = {AlgebraElement(spec), b2, b3};
  s.upsilon = {upsilon1, HiggsVector::Zero(d), HiggsVector::Zero(d)};
  s.omega[0] = Covector::Zero();
  s.omega[1] = Covector(geom.s, 0, 1, 0);
  s.omega[2] = Covector(-geom.s, 0, 1, 0);

  // scenario invariants
  for (int k = 2; k <= 3; ++k) {
    const AlgebraElement& bk = s.b[static_cast<std::size_t>(k - 1)];
    auto [z, perp] = centreDecompose(bk);
    if (!perp.isZero(1e-12))
      throw std::invalid_argument("makeCentreScenario: gauge sources must be centre-valued");
    if (bk.isZero(0.0))
      throw std::invalid_argument("makeCentreScenario: gauge sources must be nonzero");
  }
  if (upsilon1.size() != d)
    throw std::invalid_argument("makeCentreScenario: Higgs source dimension mismatch");
  s.scale = OpaqueScale();
  return s;
}

void initialHats(InteractionState& s, const Matrix* pYX1) {
  for (int k = 0; k < 3; ++k) s.hatW[static_cast<std::size_t>(k)] = zeroOneForm(s.spec);
  const int d = s.rep.dim(s.spec);
  for (int k = 2; k <= 3; ++k) {
    const Covector& w = s.omega[static_cast<std::size_t>(k - 1)];
    for (int a = 0; a < 4; ++a)
      s.hatW[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(a)] =
          w(a) * s.b[static_cast<std::size_t>(k - 1)];
  }
  s.hatU[0] = pYX1 ? HiggsVector(*pYX1 * s.upsilon[0]) : s.upsilon[0];
  s.hatU[1] = HiggsVector::Zero(d);
  s.hatU[2] = HiggsVector::Zero(d);
  s.hatsReady = true;
}

Complex twofoldCoefficient(int k, const InteractionGeometry& g) {
  if (k != 2 && k != 3) throw std::invalid_argument("twofoldCoefficient: k must be 2 or 3");
  double sign = (k == 2) ? -1.0 : 1.0;  // (-1)^k * (-1)
  double sb = sigmaBoxInverse(g.etaPairSum(0, k - 1));
  return sign * 2.0 * kI * g.kappa(0) * g.s * sb;
}

void twofoldAmplitudes(InteractionState& s) {
  if (!s.hatsReady) throw std::logic_error("twofoldAmplitudes: initialHats not done");
  const int d = s.rep.dim(s.spec);
  Matrix r2 = rhoStar(s.b[1], s.rep);
  Matrix r3 = rhoStar(s.b[2], s.rep);
  s.hatU12 = twofoldCoefficient(2, s.geom) * (r2 * s.hatU[0]);
  s.hatU13 = twofoldCoefficient(3, s.geom) * (r3 * s.hatU[0]);
  s.hatU23 = HiggsVector::Zero(d);
  s.twofoldReady = true;
}

Complex threefoldCoefficient(double r, double s) {
  InteractionGeometry g;
  g.r = r;
  g.s = s;
  double ar = std::sqrt(1.0 - r * r);
  double as = std::sqrt(1.0 - s * s);
  g.xi[0] = Covector(1, 1, 0, 0);
  g.xi[1] = Covector(1, as, s, 0);
  g.xi[2] = Covector(1, as, -s, 0);
  g.eta = Covector(1, -ar, r, 0);
  g.kappa = splittingCoefficientsClosedForm(r, s);
  return threefoldCoefficientViaPairings(g);
}

Complex threefoldCoefficientViaPairings(const InteractionGeometry& g) {
  const double s = g.s;
  const double k1 = g.kappa(0), k2 = g.kappa(1), k3 = g.kappa(2);
  double sb13 = sigmaBoxInverse(g.etaPairSum(0, 2));
  double sb12 = sigmaBoxInverse(g.etaPairSum(0, 1));
  return -2.0 * kI * k1 * (k1 + 2.0 * k3) * s * s * sb13 +
         -2.0 * kI * k1 * (k1 + 2.0 * k2) * s * s * sb12 + 2.0 * (1.0 + s * s);
}

std::pair<Rational, Rational> twofoldCoefficientExact(int k, const Rational& r,
                                                      const Rational& ar, const Rational& s,
                                                      const Rational& as) {
  // kappa in exact arithmetic
  Rational one(1);
  Rational k1 = one - (one + ar) / (one - as);
  Rational k2 = (one + ar) / (Rational(2) * (one - as)) + r / (Rational(2) * s);
  Rational k3 = (one + ar) / (Rational(2) * (one - as)) - r / (Rational(2) * s);
  Rational kk = (k == 2) ? k2 : k3;
  Rational sb = one / (Rational(2) * (ar + as) * kk);
  Rational sign = (k == 2) ? Rational(-1) : Rational(1);
  // purely imaginary: sign * 2 kappa_1 s sb * i
  return {Rational(0), sign * Rational(2) * k1 * s * sb};
}

std::pair<Rational, Rational> threefoldCoefficientExact(const Rational& r, const Rational& ar,
                                                        const Rational& s, const Rational& as) {
  Rational one(1);
  if (!(ar * ar + r * r == one) || !(as * as + s * s == one))
    throw std::invalid_argument("threefoldCoefficientExact: (r, a(r)) must be exact unit pairs");
  Rational k1 = one - (one + ar) / (one - as);
  Rational k2 = (one + ar) / (Rational(2) * (one - as)) + r / (Rational(2) * s);
  Rational k3 = (one + ar) / (Rational(2) * (one - as)) - r / (Rational(2) * s);
  Rational sb12 = one / (Rational(2) * (ar + as) * k2);
  Rational sb13 = one / (Rational(2) * (ar + as) * k3);
  Rational re = Rational(2) * (one + s * s);
  Rational im = -(Rational(2) * k1 * (k1 + Rational(2) * k3) * s * s * sb13) -
                (Rational(2) * k1 * (k1 + Rational(2) * k2) * s * s * sb12);
  return {re, im};
}

void threefoldAmplitude(InteractionState& s) {
  if (!s.twofoldReady) throw std::logic_error("threefoldAmplitude: twofoldAmplitudes not done");
  s.hatW123 = zeroOneForm(s.spec);
  Complex coeff = threefoldCoefficientViaPairings(s.geom);
  Matrix r2 = rhoStar(s.b[1], s.rep);
  Matrix r3 = rhoStar(s.b[2], s.rep);
  s.threefoldCoefficient = coeff;
  s.hatU123 = coeff * (r2 * (r3 * s.hatU[0]));
  s.threefoldReady = true;
}

PropagatedObservable propagateToZ(const InteractionState& s, const ConnectionField& A,
                                  const HiggsField& Phi, const TransportOptions& opt) {
  if (!s.threefoldReady) throw std::logic_error("propagateToZ: threefoldAmplitude not done");
  PropagatedObservable out;
  out.cb = s.cbScalar();
  out.scale = s.scale * OpaqueScale::symbol("C_alpha");

  LightRay in = LightRay::fromEndpoints(s.geom.x[0], s.geom.y);
  LightRay outLeg = LightRay::fromEndpoints(s.geom.y, s.geom.z);
  Matrix pIn = transportRep(A, s.rep, in, opt);
  HiggsVector transported = pIn * s.upsilon[0];

  BlockTransport leg = coupledTransport(A, Phi, s.rep, 0, outLeg, opt);
  out.higgsComponent = out.cb * (leg.pRho * transported);
  out.ymComponent = out.cb * leg.applyBlock12(transported);
  return out;
}

AlgebraElement adChannelBracketObservable(
    const AlgebraElement& b1, const AlgebraElement& b2,
    const std::function<AlgebraElement(const AlgebraElement&)>& sAd) {
  return sAd(bracket(b2, bracket(b1, b2)));
}

}  // namespace ymhlab
