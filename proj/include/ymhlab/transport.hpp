// Parallel transports along lightlike rays: the group transport, its image
// under a representation, the coupled transport carrying a Higgs block, and
// broken-ray transforms over two-leg paths. Integrators are fixed-step RK4
// with step halving until the requested tolerance is met.
#pragma once

#include "ymhlab/algebra.hpp"
#include "ymhlab/fields.hpp"
#include "ymhlab/geometry.hpp"

namespace ymhlab {

struct TransportOptions {
  double tol = 1e-9;
  int initialSteps = 64;
  int maxSteps = 1 << 15;
};

GroupElement transportGroup(const ConnectionField& A, const LightRay& ray,
                            const TransportOptions& opt = {});

Matrix transportRep(const ConnectionField& A, const RepSpec& rep, const LightRay& ray,
                    const TransportOptions& opt = {});

// Upper-triangular fundamental solution of the coupled transport for one
// fixed component index beta. The (2,1) block is identically zero.
struct BlockTransport {
  GroupSpec spec;
  RepSpec rep;
  int beta = 0;
  Eigen::MatrixXd pAd;      // n x n, algebra basis coordinates
  Eigen::MatrixXd block12;  // n x 2d, real Higgs coordinates -> algebra coords
  Matrix pRho;              // d x d complex

  AlgebraElement applyAd(const AlgebraElement& w) const;
  AlgebraElement applyBlock12(const HiggsVector& v) const;
  HiggsVector applyRho(const HiggsVector& v) const;

  // composition along concatenated rays (this = later leg)
  BlockTransport composeAfter(const BlockTransport& first) const;

  double orthogonalityDefect() const;  // pAd against the weighted Gram
  double unitarityDefect() const;
  double upperTriangularViolation() const { return 0.0; }  // structural zero
};

BlockTransport coupledTransport(const ConnectionField& A, const HiggsField& Phi,
                                const RepSpec& rep, int beta, const LightRay& ray,
                                const TransportOptions& opt = {});

// Same map obtained by integrating the single ODE of the combined connection
// on g (+) W; serves as an internal cross-check of coupledTransport.
BlockTransport coupledTransportViaAmbient(const ConnectionField& A, const HiggsField& Phi,
                                          const RepSpec& rep, int beta, const LightRay& ray,
                                          const TransportOptions& opt = {});

// (1,2) block from the explicit Duhamel integral, composite Simpson on the
// integrator grid.
Eigen::MatrixXd duhamelBlock12(const ConnectionField& A, const HiggsField& Phi,
                               const RepSpec& rep, int beta, const LightRay& ray,
                               const TransportOptions& opt = {});

Matrix brokenTransform(const ConnectionField& A, const RepSpec& rep, const BrokenTriple& triple,
                       const TransportOptions& opt = {});

// One sample of the weighted-integral data along a fixed line through z.
struct RayFamilySample {
  SpacetimePoint y;
  double ty = 0;           // physical start time of the leg y -> z
  BlockTransport leg;      // transport of the leg y -> z
};

struct HiggsReconstruction {
  std::vector<SpacetimePoint> points;
  std::vector<HiggsVector> values;
};

// Reconstructs the Higgs field along a 1-parameter family of starting times
// on one fixed line through z: solves the coupling-form system for the
// weighted integral, removes the transport weight with a fixed trivialization
// anchored at z, applies a second-order difference in the start time, and
// rotates back. Samples must be uniformly spaced in ty with spacing h.
HiggsReconstruction reconstructHiggs(const ConnectionField& A, const RepSpec& rep,
                                     const SpacetimePoint& z,
                                     const std::vector<RayFamilySample>& samples, double h,
                                     const TransportOptions& opt = {});

// Least-squares solve of couplingForm(v_j, I) = g_j over a real basis v_j;
// requires a fully charged representation.
HiggsVector solveCouplingSystem(const GroupSpec& spec, const RepSpec& rep,
                                const std::vector<AlgebraElement>& rhs);

}  // namespace ymhlab
