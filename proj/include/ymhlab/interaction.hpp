// Principal-symbol calculus for the threefold interaction of singular waves
// driven by two centre-valued gauge sources and one Higgs source: rescaled
// initial symbols, two-fold and three-fold amplitudes, the small-angle limit,
// and propagation of the limiting symbol to the observation point.
#pragma once

#include <complex>
#include <map>
#include <string>

#include "ymhlab/algebra.hpp"
#include "ymhlab/fields.hpp"
#include "ymhlab/geometry.hpp"
#include "ymhlab/rational.hpp"
#include "ymhlab/transport.hpp"

namespace ymhlab {

// Opaque positive normalization constants tracked as exponent maps; only
// products and ratios are meaningful, never numeric values.
class OpaqueScale {
 public:
  OpaqueScale() = default;
  static OpaqueScale symbol(const std::string& name) {
    OpaqueScale s;
    s.exps_[name] = 1;
    return s;
  }
  OpaqueScale operator*(const OpaqueScale& o) const;
  OpaqueScale operator/(const OpaqueScale& o) const;
  bool isUnit() const;
  std::string str() const;

 private:
  std::map<std::string, int> exps_;
};

struct InteractionState {
  InteractionGeometry geom;
  GroupSpec spec;
  RepSpec rep;

  // sources: b1 = 0 and upsilon2 = upsilon3 = 0; b2, b3 centre-valued
  std::array<AlgebraElement, 3> b;
  std::array<HiggsVector, 3> upsilon;

  std::array<Covector, 3> omega;  // omega_1 = 0, omega_k = (-1)^k s dx^0 + dx^2

  // rescaled symbols at the interaction point
  std::array<AlgebraOneForm, 3> hatW;
  std::array<HiggsVector, 3> hatU;
  bool hatsReady = false;

  HiggsVector hatU12, hatU13, hatU23;
  bool twofoldReady = false;

  AlgebraOneForm hatW123;
  HiggsVector hatU123;
  Complex threefoldCoefficient{0, 0};
  bool threefoldReady = false;

  OpaqueScale scale;  // accumulated opaque normalization

  // rho_*(b_k) must act as a scalar on W; returns that scalar
  Complex centreActionScalar(int k) const;
  // C_b = 2 * (scalar of b3) * (scalar of b2); real by anti-Hermiticity
  double cbScalar() const;
};

InteractionState makeCentreScenario(const InteractionGeometry& geom, const GroupSpec& spec,
                                    const RepSpec& rep, const AlgebraElement& b2,
                                    const AlgebraElement& b3, const HiggsVector& upsilon1);

// hatW_k = omega_k b_k (k = 2,3), hatU_1 = P^{A,rho}_{y<-x1} upsilon_1.
// pYX1 defaults to the identity (zero connection).
void initialHats(InteractionState& s, const Matrix* pYX1 = nullptr);

// hatU_{1k} = (-1)^k (-2i) kappa_1 s sigmaBoxInverse(eta_{1k}) rho_*(b_k) hatU_1;
// hatU_23 = 0 and every hatW_{kl} = 0 identically.
void twofoldAmplitudes(InteractionState& s);

// Higgs-channel three-fold amplitude; the gauge channel is identically zero.
void threefoldAmplitude(InteractionState& s);

// coefficient multiplying rho_*(b2) rho_*(b3) hatU_1
Complex threefoldCoefficient(double r, double s);
// independent assembly from covector pairings (cross-check path)
Complex threefoldCoefficientViaPairings(const InteractionGeometry& g);
// exact evaluation at rational points with rational a(r), a(s)
std::pair<Rational, Rational> threefoldCoefficientExact(const Rational& r, const Rational& ar,
                                                        const Rational& s, const Rational& as);
std::pair<Rational, Rational> twofoldCoefficientExact(int k, const Rational& r,
                                                      const Rational& ar, const Rational& s,
                                                      const Rational& as);

Complex twofoldCoefficient(int k, const InteractionGeometry& g);  // k = 2 or 3

// Limiting observable transported to z: the Higgs channel carries
// C_b S^{A,rho} upsilon_1, the gauge channel C_b block12(P^{A,rho} upsilon_1).
// Both are defined modulo one common opaque normalization.
struct PropagatedObservable {
  AlgebraElement ymComponent;
  HiggsVector higgsComponent;
  double cb = 0;
  OpaqueScale scale;
};
PropagatedObservable propagateToZ(const InteractionState& s, const ConnectionField& A,
                                  const HiggsField& Phi, const TransportOptions& opt = {});

// S_Ad applied to the nested bracket [b2, [b1, b2]]
AlgebraElement adChannelBracketObservable(const AlgebraElement& b1, const AlgebraElement& b2,
                                          const std::function<AlgebraElement(const AlgebraElement&)>& sAd);

}  // namespace ymhlab
