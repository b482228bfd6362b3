// Timing comparison of the serial reference kernels against the OpenMP
// parallel ones: one leapfrog evolution and one residual-sampling sweep.
// The two paths must produce identical results; timings are printed per run.
#include <chrono>
#include <cstring>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ymhlab/ymh_pde.hpp"

using namespace ymhlab;

namespace {

double timeIt(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int nx = argc > 1 ? std::atoi(argv[1]) : 33;
  if (nx % 2 == 0) ++nx;

  GroupSpec ew = GroupSpec::su2u1();
  RepSpec rep = RepSpec::Electroweak(3);
  AlgebraTables tab = AlgebraTables::build(ew, rep);

  std::mt19937_64 rng(42);
  ConnectionField A = randomSmoothConnection(ew, rng, 0.3, 2, true);
  HiggsVector vac(2);
  vac << Complex(0, 0), Complex(1, 0);
  HiggsField Phi = HiggsField::constant(vac);

  SourceSpec src = SourceSpec::zero(tab);
  src.amplitude = 1e-3;
  src.radius = 0.2;
  src.timeCenter = -0.65;
  src.timeWidth = 0.25;
  std::normal_distribution<double> dist;
  for (auto& d : src.dirJ)
    for (int i = 0; i < tab.n; ++i) d(i) = dist(rng);
  for (int i = 0; i < 2 * tab.d; ++i) src.dirF(i) = dist(rng);

  Grid g;
  g.L = 1.0;
  g.nx = nx;
  g.tEnd = -0.4;

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::cout << "grid " << nx << "^3, steps " << g.steps() << ", threads " << threads << "\n";

  EvolveOptions serial;
  serial.policy = ExecPolicy::Serial;
  EvolveOptions parallel;
  parallel.policy = ExecPolicy::Parallel;

  EvolutionResult rs, rp;
  double ts = timeIt([&] { rs = solvePerturbed(A, Phi, tab, src, g, serial); });
  double tp = timeIt([&] { rp = solvePerturbed(A, Phi, tab, src, g, parallel); });
  bool same = rs.current.w == rp.current.w && rs.current.u == rp.current.u &&
              rs.current.j0 == rp.current.j0;
  std::cout << "leapfrog evolution   serial " << ts << " s   parallel " << tp << " s   speedup "
            << ts / tp << "   identical " << (same ? "yes" : "NO") << "\n";

  // residual sampling sweep
  const Complex I(0, 1);
  GroupSpec u1 = GroupSpec::u1();
  RepSpec inc = RepSpec::Inclusion();
  AlgebraElement gen(u1);
  gen.blocks[0](0, 0) = I;
  SepScalar p1;
  p1.f[0] = Factor1D::trig(0.4, 0.3, 0.0, 0.9, 0.2);
  p1.f[1] = Factor1D::trig(0.5, -0.2, 0.1, 1.2, 0.7);
  ConnectionField Am = makeConnection(u1, {ConnectionTerm{1, gen, p1}});
  HiggsVector e0(1);
  e0(0) = 1.0;
  HiggsTerm ht;
  ht.direction = e0;
  ht.profile.f[0] = Factor1D::trig(0.6, 0.2, 0.5, 1.0, 0.1);
  HiggsField Pm = makeHiggs(1, {ht});
  auto pts = sampleGrid(5, 0.2, 0.2);

  ReducedResiduals rrs, rrp;
  double us = timeIt([&] { rrs = reducedTemporalResiduals(Am, Pm, inc, pts, 1.0 / 16,
                                                          ExecPolicy::Serial); });
  double up = timeIt([&] { rrp = reducedTemporalResiduals(Am, Pm, inc, pts, 1.0 / 16,
                                                          ExecPolicy::Parallel); });
  bool same2 = rrs.constraint == rrp.constraint && rrs.ymReduced == rrp.ymReduced &&
               rrs.higgsReduced == rrp.higgsReduced;
  std::cout << "residual sampling    serial " << us << " s   parallel " << up << " s   speedup "
            << us / up << "   identical " << (same2 ? "yes" : "NO") << "\n";
  return (same && same2) ? 0 : 1;
}
