// Gauge actions, the temporal gauge, and pointwise covariant calculus:
// curvature, covariant (co)derivatives, field-equation residuals, the
// relative Lorenz residual, and the source compatibility residual.
#pragma once

#include "ymhlab/algebra.hpp"
#include "ymhlab/fields.hpp"
#include "ymhlab/geometry.hpp"

namespace ymhlab {

// Section of the group bundle. dlog, when present, returns U^{-1} d_a U
// exactly; otherwise central differences with step fdStep are used.
struct GaugeField {
  GroupSpec spec;
  std::function<GroupElement(const SpacetimePoint&)> value;
  std::function<AlgebraElement(const SpacetimePoint&, int)> dlog;
  double fdStep = 1e-4;

  AlgebraElement logDerivative(const SpacetimePoint& p, int a) const;

  static GaugeField identity(const GroupSpec& s);
  // U(x) = exp(theta(x) X), with exact dlog
  static GaugeField exponential(const AlgebraElement& X, const SepScalar& theta);
  // pointwise product U V with combined exact dlog when both carry one
  static GaugeField product(const GaugeField& U, const GaugeField& V);
};

// (A, Phi) . U = (U^{-1} dU + U^{-1} A U, rho(U^{-1}) Phi)
std::pair<ConnectionField, HiggsField> applyGauge(const ConnectionField& A,
                                                  const HiggsField& Phi, const RepSpec& rep,
                                                  const GaugeField& U);

struct TemporalGaugeOptions {
  double odeStep = 1e-3;   // RK4 step for the time integration
  double fdStep = 1e-4;    // spatial derivative step for the returned gauge
};

// Gauge with vanishing time component, built by integrating dU/dt = -V_0 U
// from the lower light cone t = |x| - 1. The returned connection's time
// component cancels exactly by construction.
struct TemporalGaugeResult {
  GaugeField U;
  ConnectionField A;
  HiggsField Phi;
};
TemporalGaugeResult temporalGauge(const ConnectionField& V, const HiggsField& Psi,
                                  const RepSpec& rep, const TemporalGaugeOptions& opt = {});

// ---- pointwise covariant calculus -------------------------------------

using AlgebraTwoForm = std::array<AlgebraElement, 6>;  // index pairs 01,02,03,12,13,23
int twoFormIndex(int a, int b);  // sign-carrying lookup handled by caller

// F = dA + 1/2 [A, A]; derivatives of A are exact when available, else
// central differences with the given step.
AlgebraTwoForm curvature(const ConnectionField& A, const SpacetimePoint& p);

// covariant coderivative of a g-valued 1-form J: -d^a J_a - [A^a, J_a],
// with the outer derivative realized by a central stencil of width h
AlgebraElement coDifferentialOneForm(const ConnectionField& A, const ConnectionField& J,
                                     const SpacetimePoint& p, double h);

// (D_A^* F)_beta = -d^a F_{a beta} - [A^a, F_{a beta}], central stencil h on F
AlgebraOneForm coDifferentialCurvature(const ConnectionField& A, const SpacetimePoint& p,
                                       double h);

HiggsVector covariantDerivative(const ConnectionField& A, const HiggsField& Phi,
                                const RepSpec& rep, const SpacetimePoint& p, int a);

// Field-equation operators evaluated pointwise with exact derivatives; used
// to manufacture compatible sources from arbitrary smooth pairs (V, Psi).
AlgebraOneForm ymOperatorExact(const ConnectionField& A, const HiggsField& Phi,
                               const RepSpec& rep, const SpacetimePoint& p);
HiggsVector higgsOperatorExact(const ConnectionField& A, const HiggsField& Phi,
                               const RepSpec& rep, const SpacetimePoint& p);
// Same operators with all outer derivatives by central stencils of width h.
AlgebraOneForm ymOperatorStencil(const ConnectionField& A, const HiggsField& Phi,
                                 const RepSpec& rep, const SpacetimePoint& p, double h);
HiggsVector higgsOperatorStencil(const ConnectionField& A, const HiggsField& Phi,
                                 const RepSpec& rep, const SpacetimePoint& p, double h);

ConnectionField ymSourceField(const ConnectionField& A, const HiggsField& Phi,
                              const RepSpec& rep);
HiggsField higgsSourceField(const ConnectionField& A, const HiggsField& Phi, const RepSpec& rep);

// || D_A^* W ||_Ad samples over the given points
std::vector<double> lorenzResidual(const ConnectionField& A, const ConnectionField& W,
                                   const std::vector<SpacetimePoint>& pts, double h);

// || D_V^* J - couplingForm(F, Psi) ||_Ad samples
std::vector<double> compatibilityResidual(const ConnectionField& V, const HiggsField& Psi,
                                          const ConnectionField& J, const HiggsField& F,
                                          const RepSpec& rep,
                                          const std::vector<SpacetimePoint>& pts, double h);

// uniform lattice over a centered sub-box of the diamond
std::vector<SpacetimePoint> sampleGrid(int perAxis, double halfWidthTime = 0.35,
                                       double halfWidthSpace = 0.35);

}  // namespace ymhlab
