// Minkowski R^{1+3} causal structure: the causal diamond and the observation
// cylinder, lightlike rays and broken triples, the Hodge star on
// constant-coefficient forms, and the covector-splitting geometry used by the
// interaction calculus.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <vector>

namespace ymhlab {

using SpacetimePoint = Eigen::Vector4d;  // (t, x1, x2, x3)
using Covector = Eigen::Vector4d;        // (xi_0, xi_1, xi_2, xi_3)
using FourVector = Eigen::Vector4d;

inline double spatialNorm(const SpacetimePoint& p) { return p.tail<3>().norm(); }

// signature (-, +, +, +)
double minkowskiPair(const Covector& a, const Covector& b);
FourVector raiseIndex(const Covector& xi);
Covector lowerIndex(const FourVector& v);

// xi^alpha xi_alpha; throws "characteristic covector" when lightlike
double sigmaBox(const Covector& xi);
double sigmaBoxInverse(const Covector& xi);

bool inDiamond(const SpacetimePoint& p);
bool inDiamondInterior(const SpacetimePoint& p);
bool inObservationSet(const SpacetimePoint& p, double eps0);

enum class CausalRelation { Equal, Before, After, Spacelike };
CausalRelation causalOrder(const SpacetimePoint& x, const SpacetimePoint& y);

struct LightRay {
  SpacetimePoint base = SpacetimePoint::Zero();
  Covector direction = Covector::Zero();  // lightlike covector
  double t1 = 0.0, t2 = 1.0;

  SpacetimePoint point(double t) const { return base + t * raiseIndex(direction); }
  FourVector velocity() const { return raiseIndex(direction); }
  void validate(double tol = 1e-12) const;

  // segment from x to y parametrized over [0,1]
  static LightRay fromEndpoints(const SpacetimePoint& x, const SpacetimePoint& y);
};

struct BrokenTriple {
  SpacetimePoint x, y, z;
  void validate(double eps0) const;
};

// Constant-coefficient k-form, components over sorted index combinations.
struct KForm {
  int k = 0;
  Eigen::VectorXd comp;  // size C(4,k)

  static KForm zero(int k);
  static const std::vector<std::array<int, 4>>& combos(int k);
};

KForm hodgeStar(const KForm& w);
// (-1)^{k(4-k)} * sgn(det g); the sign table for star∘star
int hodgeStarSquareSign(int k);

// Splitting eta = sum_k kappa_k xi_k of the observation covector over the
// three incoming lightlike covectors.
Eigen::Vector3d splittingCoefficientsSolve(double r, double s);
Eigen::Vector3d splittingCoefficientsClosedForm(double r, double s);

struct InteractionGeometry {
  double r = 0, s = 0, eps0 = 0.25;
  std::array<Covector, 3> xi;  // xi_1, xi_2, xi_3
  Covector eta;
  Eigen::Vector3d kappa;
  std::array<SpacetimePoint, 3> x;  // x_1, x_2, x_3
  SpacetimePoint y, z;

  Covector etaComponent(int k) const { return kappa(k) * xi[static_cast<std::size_t>(k)]; }
  Covector etaPairSum(int k, int l) const { return etaComponent(k) + etaComponent(l); }
};

// Places the broken-ray configuration inside the diamond for the given
// (r, s, eps0); throws when no candidate placement fits.
InteractionGeometry buildInteractionGeometry(double r, double s, double eps0 = 0.25);

}  // namespace ymhlab
