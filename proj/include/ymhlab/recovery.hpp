// End-to-end synthetic inverse experiments: generate broken-ray transforms
// and coupled-transport data from a hidden field pair, run the Higgs
// reconstruction over ray families, and score against the ground truth.
#pragma once

#include <optional>

#include "ymhlab/interaction.hpp"
#include "ymhlab/transport.hpp"

namespace ymhlab {

struct Scenario {
  GroupSpec spec;
  RepSpec rep;
  ConnectionField hiddenA;
  HiggsField hiddenPhi;
  double eps0 = 0.25;
  std::vector<std::pair<double, double>> rsSweep;  // (r, s) geometries
  std::uint64_t seed = 1;
  TransportOptions transport;
};

struct PreconditionReport {
  bool centreNontrivial = false;
  bool fullyCharged = false;
  bool centreMeetsKernelTrivially = false;
  bool adPlusRhoFaithful = false;
  int kernelDimRhoStar = 0;
  bool allSatisfied() const {
    return centreNontrivial && fullyCharged && centreMeetsKernelTrivially && adPlusRhoFaithful;
  }
};
PreconditionReport checkFaithfulRecoveryPrecondition(const Scenario& sc);

struct TripleData {
  BrokenTriple triple;
  Eigen::MatrixXd sAd;  // adjoint-channel broken transform, basis coordinates
  Matrix sRho;          // representation-channel broken transform
};

struct RayFamilyData {
  SpacetimePoint z;
  Covector direction;  // covector of the line through z (future-pointing legs)
  double h = 0;        // spacing of the start-time samples
  std::vector<RayFamilySample> samples;
};

struct Dataset {
  std::vector<TripleData> triples;
  std::vector<RayFamilyData> families;
};

// Transforms and coupled-transport samples over the scenario's geometries.
Dataset forwardData(const Scenario& sc, int samplesPerFamily = 9, double sampleSpacing = 5e-3);

struct RecoveryReport {
  double maxError = 0;
  double rmsError = 0;
  int pointCount = 0;
  std::vector<SpacetimePoint> points;
  std::vector<HiggsVector> estimates;
  std::vector<HiggsVector> truth;
};

// Runs the reconstruction on every ray family; the hidden connection is
// passed through to the reconstruction step, whose transform inversion lives
// outside this artifact.
RecoveryReport recoverPhi(const Scenario& sc, const Dataset& data);

// family of start times along one line through z, uniformly spaced
RayFamilyData buildRayFamily(const Scenario& sc, const SpacetimePoint& z,
                             const Eigen::Vector3d& spatialDir, int samples, double spacing,
                             double legSpan);

}  // namespace ymhlab
