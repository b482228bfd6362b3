#include "ymhlab/recovery.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ymhlab {

PreconditionReport checkFaithfulRecoveryPrecondition(const Scenario& sc) {
  PreconditionReport r;
  const auto mask = centreBasisMask(sc.spec);
  for (bool b : mask) r.centreNontrivial = r.centreNontrivial || b;
  r.fullyCharged = isFullyCharged(sc.spec, sc.rep);
  r.centreMeetsKernelTrivially = centreMeetsKernelTrivially(sc.spec, sc.rep);
  r.adPlusRhoFaithful = isFaithfulAdPlusRho(sc.spec, sc.rep);
  r.kernelDimRhoStar = kernelDimRhoStar(sc.spec, sc.rep);
  return r;
}

RayFamilyData buildRayFamily(const Scenario& sc, const SpacetimePoint& z,
                             const Eigen::Vector3d& spatialDir, int samples, double spacing,
                             double legSpan) {
  if (samples < 3) throw std::invalid_argument("buildRayFamily: need at least 3 samples");
  if (!inObservationSet(z, sc.eps0))
    throw std::invalid_argument("buildRayFamily: z must lie in the observation set");
  Eigen::Vector3d dir = spatialDir.normalized();
  RayFamilyData fam;
  fam.z = z;
  fam.h = spacing;
  // past-directed leg starts: y = z - c*(1, dir), lightlike
  FourVector v;
  v << 1.0, dir(0), dir(1), dir(2);
  fam.direction = lowerIndex(v);
  for (int i = 0; i < samples; ++i) {
    double c = legSpan + spacing * i;
    RayFamilySample s;
    s.y = z - c * v;
    s.ty = s.y(0);
    fam.samples.push_back(s);
  }
  return fam;
}

Dataset forwardData(const Scenario& sc, int samplesPerFamily, double sampleSpacing) {
  Dataset out;
  // broken triples over the (r, s) sweep
  for (auto [r, s] : sc.rsSweep) {
    InteractionGeometry g = buildInteractionGeometry(r, s, sc.eps0);
    TripleData td;
    td.triple = {g.x[0], g.y, g.z};
    td.triple.validate(sc.eps0);
    Matrix sAdC = brokenTransform(sc.hiddenA, RepSpec::Adjoint(), td.triple, sc.transport);
    td.sAd = sAdC.real();
    td.sRho = brokenTransform(sc.hiddenA, sc.rep, td.triple, sc.transport);
    out.triples.push_back(std::move(td));
  }

  // coupled-transport sample families through a few observation points
  std::mt19937_64 rng(sc.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int families = 3;
  for (int f = 0; f < families; ++f) {
    SpacetimePoint z(0.25 + 0.05 * f, 0.05 * uni(rng), 0.05 * uni(rng), 0.05 * uni(rng));
    Eigen::Vector3d dir(uni(rng), uni(rng), 0.4 * uni(rng));
    if (dir.norm() < 1e-3) dir << 1, 0, 0;
    RayFamilyData fam =
        buildRayFamily(sc, z, dir, samplesPerFamily, sampleSpacing, 0.45);
    const int m = static_cast<int>(fam.samples.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < m; ++i) {
      auto& smp = fam.samples[static_cast<std::size_t>(i)];
      LightRay leg = LightRay::fromEndpoints(smp.y, fam.z);
      smp.leg = coupledTransport(sc.hiddenA, sc.hiddenPhi, sc.rep, 0, leg, sc.transport);
    }
    out.families.push_back(std::move(fam));
  }
  return out;
}

RecoveryReport recoverPhi(const Scenario& sc, const Dataset& data) {
  RecoveryReport rep;
  double sumSq = 0;
  for (const auto& fam : data.families) {
    HiggsReconstruction rec =
        reconstructHiggs(sc.hiddenA, sc.rep, fam.z, fam.samples, fam.h, sc.transport);
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
      HiggsVector truth = sc.hiddenPhi.value(rec.points[i]);
      double err = (rec.values[i] - truth).norm();
      rep.maxError = std::max(rep.maxError, err);
      sumSq += err * err;
      ++rep.pointCount;
      rep.points.push_back(rec.points[i]);
      rep.estimates.push_back(rec.values[i]);
      rep.truth.push_back(truth);
    }
  }
  rep.rmsError = rep.pointCount ? std::sqrt(sumSq / rep.pointCount) : 0.0;
  return rep;
}

}  // namespace ymhlab
