// Batch experiment runner: each subcommand executes one verification suite,
// writes <out>/report.json (plus CSV series where applicable), and exits 0
// only when every metric passes. Config parse errors exit with 2.
#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ymhlab/gauge.hpp"
#include "ymhlab/interaction.hpp"
#include "ymhlab/recovery.hpp"
#include "ymhlab/report.hpp"
#include "ymhlab/transport.hpp"
#include "ymhlab/ymh_pde.hpp"

using namespace ymhlab;

namespace {

const Complex kI(0.0, 1.0);

struct RunContext {
  ExperimentConfig cfg;
  std::mt19937_64 rng;
  explicit RunContext(const ExperimentConfig& c) : cfg(c), rng(c.seed) {}
};

void runAlgebraChecks(RunContext& ctx, MetricSet& m) {
  struct Case {
    const char* name;
    GroupSpec spec;
    RepSpec rep;
  };
  std::vector<Case> cases = {{"electroweak3", GroupSpec::su2u1(), RepSpec::Electroweak(3)},
                             {"smhiggs3", GroupSpec::standardModel(), RepSpec::SMHiggs(3)},
                             {"adjoint", GroupSpec::su2u1(), RepSpec::Adjoint()}};
  int samples = ctx.cfg.gridOverride > 0 ? ctx.cfg.gridOverride : 1000;
  double tol = ctx.cfg.tolSet ? ctx.cfg.tolOverride : 1e-9;
  for (const auto& c : cases) {
    int d = c.rep.dim(c.spec);
    double worstId = 0, worstEq = 0, worstChain = 0;
    for (int it = 0; it < samples; ++it) {
      HiggsVector v = randomHiggsVector(d, ctx.rng);
      HiggsVector w = randomHiggsVector(d, ctx.rng);
      worstId = std::max(worstId, couplingFormResidual(v, w, c.spec, c.rep));
      GroupElement g = randomGroupElement(c.spec, ctx.rng);
      Matrix rg = rho(g, c.rep);
      AlgebraElement lhs = adjointAction(g, couplingForm(v, w, c.spec, c.rep));
      AlgebraElement rhs = couplingForm(rg * v, rg * w, c.spec, c.rep);
      worstEq = std::max(worstEq, (lhs - rhs).norm());
      AlgebraElement x = randomAlgebraElement(c.spec, ctx.rng);
      worstChain = std::max(
          worstChain,
          (rhoStar(adjointAction(g, x), c.rep) - rg * rhoStar(x, c.rep) * rg.adjoint()).norm());
    }
    m.addUpperBound(std::string("coupling_identity_") + c.name, worstId, tol);
    m.addUpperBound(std::string("coupling_equivariance_") + c.name, worstEq, tol);
    m.addUpperBound(std::string("chain_rule_") + c.name, worstChain, tol);
  }
  m.addBoolean("ew3_fully_charged", isFullyCharged(GroupSpec::su2u1(), RepSpec::Electroweak(3)),
               true);
  m.addBoolean("ew3_kernel_trivial",
               kernelDimRhoStar(GroupSpec::su2u1(), RepSpec::Electroweak(3)) == 0, true);
  m.addBoolean("sm3_fully_charged",
               isFullyCharged(GroupSpec::standardModel(), RepSpec::SMHiggs(3)), true);
  m.addBoolean("sm3_kernel_strong",
               kernelDimRhoStar(GroupSpec::standardModel(), RepSpec::SMHiggs(3)) == 8, true);
  m.addBoolean("sm3_ad_plus_rho_faithful",
               isFaithfulAdPlusRho(GroupSpec::standardModel(), RepSpec::SMHiggs(3)), true);
  m.addBoolean("hypercharge0_centre_meets_kernel",
               centreMeetsKernelTrivially(GroupSpec::su2u1(), RepSpec::Electroweak(0)), false);

  // optional custom case described by the scenario block
  if (ctx.cfg.scenario.is_object() && ctx.cfg.scenario.contains("factors")) {
    GroupSpec spec = groupSpecFromJson(ctx.cfg.scenario);
    RepSpec rep = repSpecFromJson(ctx.cfg.scenario);
    rep.validate(spec);
    int d = rep.dim(spec);
    double worst = 0;
    for (int it = 0; it < samples; ++it) {
      HiggsVector v = randomHiggsVector(d, ctx.rng);
      HiggsVector w = randomHiggsVector(d, ctx.rng);
      worst = std::max(worst, couplingFormResidual(v, w, spec, rep));
    }
    m.addUpperBound("coupling_identity_scenario", worst, tol);
    m.addBoolean("scenario_fully_charged", isFullyCharged(spec, rep), true);
  }
}

void runTransportChecks(RunContext& ctx, MetricSet& m) {
  GroupSpec ew = GroupSpec::su2u1();
  RepSpec rep = RepSpec::Electroweak(3);
  int cases = ctx.cfg.gridOverride > 0 ? ctx.cfg.gridOverride : 100;
  double tol = ctx.cfg.tolSet ? ctx.cfg.tolOverride : 1e-8;
  LightRay ray = LightRay::fromEndpoints(SpacetimePoint(-0.3, 0.1, 0.0, 0.0),
                                         SpacetimePoint(0.4, 0.4, 0.6, 0.2));
  double worstRoute = 0, worstReparam = 0, worstUnitarity = 0;
  for (int it = 0; it < cases; ++it) {
    ConnectionField A = randomSmoothConnection(ew, ctx.rng, 0.35);
    HiggsField Phi = randomSmoothHiggs(2, ctx.rng, 0.5);
    int beta = static_cast<int>(ctx.rng() % 4);
    BlockTransport ode = coupledTransport(A, Phi, rep, beta, ray, {1e-9});
    BlockTransport amb = coupledTransportViaAmbient(A, Phi, rep, beta, ray, {1e-9});
    Eigen::MatrixXd duh = duhamelBlock12(A, Phi, rep, beta, ray, {1e-9});
    worstRoute = std::max({worstRoute, (ode.pAd - amb.pAd).norm(), (ode.block12 - amb.block12).norm(),
                           (ode.pRho - amb.pRho).norm(), (ode.block12 - duh).norm()});
    worstUnitarity = std::max({worstUnitarity, ode.unitarityDefect(), ode.orthogonalityDefect()});
    if (it % 10 == 0) {
      for (double lambda : {0.5, 2.0, 7.0}) {
        LightRay scaled{ray.base, lambda * ray.direction, 0.0, 1.0 / lambda};
        BlockTransport other = coupledTransport(A, Phi, rep, beta, scaled, {1e-10});
        worstReparam = std::max({worstReparam, (ode.pAd - other.pAd).norm(),
                                 (ode.block12 - other.block12).norm(),
                                 (ode.pRho - other.pRho).norm()});
      }
    }
  }
  m.addUpperBound("route_agreement", worstRoute, tol);
  m.addUpperBound("reparametrization", worstReparam, 1e-9);
  m.addUpperBound("diagonal_defect", worstUnitarity, 1e-9);
  m.addUpperBound("lower_left_block", 0.0, 0.0);  // structural zero

  // sample transform matrices for downstream tooling
  ConnectionField As = randomSmoothConnection(ew, ctx.rng, 0.35);
  HiggsField Ps = randomSmoothHiggs(2, ctx.rng, 0.5);
  BlockTransport sample = coupledTransport(As, Ps, rep, 0, ray, {1e-9});
  Json art;
  art["p_rho"] = matrixToJson(sample.pRho);
  art["p_ad"] = matrixToJson(Matrix(sample.pAd.cast<Complex>()));
  art["block12"] = matrixToJson(Matrix(sample.block12.cast<Complex>()));
  std::ofstream ts(std::filesystem::path(ctx.cfg.outDir) / "transforms.json");
  ts << art.dump(2) << "\n";
}

void runGaugeChecks(RunContext& ctx, MetricSet& m) {
  GroupSpec ew = GroupSpec::su2u1();
  RepSpec rep = RepSpec::Electroweak(3);

  // temporal gauge output
  ConnectionField V = randomSmoothConnection(ew, ctx.rng, 0.4);
  HiggsField Psi = randomSmoothHiggs(2, ctx.rng, 0.5);
  TemporalGaugeResult tg = temporalGauge(V, Psi, rep, {5e-3, 1e-4});
  double worstT = 0;
  for (const auto& q : sampleGrid(2, 0.3, 0.3)) worstT = std::max(worstT, tg.A.value(q)[0].norm());
  m.addUpperBound("temporal_time_component", worstT, 1e-8);

  // compatibility identity on a manufactured pair
  ConnectionField J = ymSourceField(V, Psi, rep);
  HiggsField F = higgsSourceField(V, Psi, rep);
  auto pts = sampleGrid(2, 0.25, 0.25);
  std::vector<double> hs = {1.0 / 8, 1.0 / 16, 1.0 / 32};
  std::vector<double> errs;
  for (double h : hs) {
    double worst = 0;
    for (double r : compatibilityResidual(V, Psi, J, F, rep, pts, h)) worst = std::max(worst, r);
    errs.push_back(worst);
  }
  m.addLowerBound("compatibility_slope", logLogSlope(hs, errs), 1.9);

  // gauge covariance of the field-equation residuals
  GaugeField U = GaugeField::exponential(randomAlgebraElement(ew, ctx.rng), [] {
    SepScalar s;
    s.f[0] = Factor1D::trig(0.4, 0.1, 0.2, 0.8, 0.3);
    s.f[1] = Factor1D::trig(0.3, -0.2, 0.6, 1.1, 0.9);
    return s;
  }());
  auto [Ag, Phig] = applyGauge(V, Psi, rep, U);
  double worstCov = 0;
  for (const auto& p : sampleGrid(2, 0.2, 0.2)) {
    AlgebraOneForm res = ymOperatorStencil(V, Psi, rep, p, 1e-3);
    AlgebraOneForm resG = ymOperatorStencil(Ag, Phig, rep, p, 1e-3);
    GroupElement u = U.value(p);
    for (int b = 0; b < 4; ++b)
      worstCov = std::max(worstCov, (resG[static_cast<std::size_t>(b)] -
                                     adjointAction(u.inverse(), res[static_cast<std::size_t>(b)]))
                                        .norm());
    HiggsVector hres = higgsOperatorStencil(V, Psi, rep, p, 1e-3);
    HiggsVector hresG = higgsOperatorStencil(Ag, Phig, rep, p, 1e-3);
    worstCov = std::max(worstCov, (hresG - rho(u.inverse(), rep) * hres).norm());
  }
  m.addUpperBound("residual_covariance", worstCov, 1e-6);

  // transport covariance with a finite-difference gauge derivative
  GaugeField Ufd = U;
  Ufd.dlog = nullptr;  // force the finite-difference budget
  auto [Afd, PhiFd] = applyGauge(V, Psi, rep, Ufd);
  SpacetimePoint x(-0.2, 0.1, 0, 0);
  SpacetimePoint y = x + 0.5 * SpacetimePoint(1, -1, 0, 0);
  LightRay leg = LightRay::fromEndpoints(x, y);
  Matrix p0 = transportRep(V, rep, leg, {1e-10});
  Matrix pg = transportRep(Afd, rep, leg, {1e-10});
  Matrix expect = rho(Ufd.value(y).inverse(), rep) * p0 * rho(Ufd.value(x), rep);
  m.addUpperBound("transport_covariance", (pg - expect).norm(), 1e-6);
}

void runInteractionSweep(RunContext& ctx, MetricSet& m, std::vector<std::vector<double>>& csv) {
  double r = 0.3;
  std::vector<double> sList = {0.2, 0.1, 0.05, 0.025};
  if (ctx.cfg.scenario.is_object()) {
    if (ctx.cfg.scenario.contains("r")) r = ctx.cfg.scenario["r"].get<double>();
    if (ctx.cfg.scenario.contains("s_list"))
      sList = ctx.cfg.scenario["s_list"].get<std::vector<double>>();
  }

  GroupSpec u1 = GroupSpec::u1();
  RepSpec inc = RepSpec::Inclusion();
  HiggsVector ups(1);
  ups(0) = Complex(0.3, -0.8);
  AlgebraElement b2(u1), b3(u1);
  b2.blocks[0](0, 0) = kI * 0.9;
  b3.blocks[0](0, 0) = kI * (-0.6);
  Complex cb = 2.0 * (kI * (-0.6)) * (kI * 0.9);

  std::vector<double> remainder;
  double structuralZeros = 0;
  for (double s : sList) {
    InteractionGeometry g = buildInteractionGeometry(r, s, 0.25);
    InteractionState st = makeCentreScenario(g, u1, inc, b2, b3, ups);
    initialHats(st);
    twofoldAmplitudes(st);
    threefoldAmplitude(st);
    remainder.push_back((st.hatU123 - cb * ups).norm());
    for (int a = 0; a < 4; ++a)
      structuralZeros =
          std::max(structuralZeros, st.hatW123[static_cast<std::size_t>(a)].norm());
    structuralZeros = std::max(structuralZeros, st.hatU23.norm());
    csv.push_back({s, remainder.back(), std::abs(cb)});
  }
  m.addLowerBound("limit_slope", logLogSlope(sList, remainder), 1.0);
  m.addUpperBound("structural_zeros", structuralZeros, 0.0);
  {
    InteractionGeometry g0 = buildInteractionGeometry(r, sList.front(), 0.25);
    std::ofstream gj(std::filesystem::path(ctx.cfg.outDir) / "geometry.json");
    gj << interactionGeometryToJson(g0).dump(2) << "\n";
  }

  // exact-arithmetic checkpoints
  Rational rr(3, 5), ra(4, 5);
  auto [re, im] = threefoldCoefficientExact(rr, ra, rr, ra);
  Complex f = threefoldCoefficient(0.6, 0.6);
  m.addUpperBound("exact_vs_float",
                  std::hypot(f.real() - re.toDouble(), f.imag() - im.toDouble()), 1e-12);

  // two-fold spot value at r = 0, s = 0.6
  InteractionGeometry g06 = buildInteractionGeometry(0.0, 0.6, 0.25);
  m.addUpperBound("twofold_spot", std::abs(twofoldCoefficient(2, g06) - Complex(0, 0.6)), 1e-12);

  // splitting coefficients: closed form against the solve
  std::uniform_real_distribution<double> rDist(-0.9, 0.9), sDist(0.01, 0.5);
  double worstK = 0;
  for (int it = 0; it < 200; ++it) {
    double rs = rDist(ctx.rng), ss = sDist(ctx.rng);
    worstK = std::max(worstK, (splittingCoefficientsSolve(rs, ss) -
                               splittingCoefficientsClosedForm(rs, ss))
                                  .cwiseAbs()
                                  .maxCoeff());
  }
  m.addUpperBound("kappa_closed_form", worstK, 1e-10);
  Eigen::Vector3d spot = splittingCoefficientsSolve(0.0, 0.6);
  m.addUpperBound("kappa_spot",
                  (spot - Eigen::Vector3d(-9, 5, 5)).cwiseAbs().maxCoeff(), 1e-10);
  Covector eta12 = spot(0) * Covector(1, 1, 0, 0) + spot(1) * Covector(1, 0.8, 0.6, 0);
  m.addUpperBound("sigma_box_spot", std::abs(sigmaBoxInverse(eta12) - 1.0 / 18.0), 1e-12);
}

void runYmhEvolve(RunContext& ctx, MetricSet& m) {
  GroupSpec ew = GroupSpec::su2u1();
  RepSpec rep = RepSpec::Electroweak(3);
  AlgebraTables tab = AlgebraTables::build(ew, rep);
  ConnectionField A = ConnectionField::zero(ew);
  HiggsVector vac(2);
  vac << Complex(0, 0), Complex(1, 0);
  HiggsField Phi = HiggsField::constant(vac);

  Grid g;
  g.L = 1.0;
  g.nx = ctx.cfg.gridOverride > 0 ? ctx.cfg.gridOverride : 25;
  if (g.nx % 2 == 0) ++g.nx;
  g.tEnd = -0.2;

  EvolutionResult zero = solvePerturbed(A, Phi, tab, SourceSpec::zero(tab), g, {});
  m.addUpperBound("zero_source", zero.maxAbs(), 1e-12);

  SourceSpec src = SourceSpec::zero(tab);
  src.amplitude = 1e-3;
  src.radius = 0.2;
  src.timeCenter = -0.65;
  src.timeWidth = 0.25;
  std::normal_distribution<double> dist;
  for (auto& dd : src.dirJ)
    for (int i = 0; i < tab.n; ++i) dd(i) = dist(ctx.rng);
  for (int i = 0; i < 2 * tab.d; ++i) src.dirF(i) = dist(ctx.rng);
  EvolutionResult res = solvePerturbed(A, Phi, tab, src, g, {});
  m.addUpperBound("finite_speed_leak", res.maxAbsOutsideInfluence, 1e-12);
  m.addLowerBound("response_present", res.maxAbs(), 1e-12);

  // reduced temporal-gauge residual slopes on a manufactured pair
  GroupSpec u1 = GroupSpec::u1();
  RepSpec inc = RepSpec::Inclusion();
  AlgebraElement gen(u1);
  gen.blocks[0](0, 0) = kI;
  SepScalar p1, p2;
  p1.f[0] = Factor1D::trig(0.4, 0.3, 0.0, 0.9, 0.2);
  p1.f[1] = Factor1D::trig(0.5, -0.2, 0.1, 1.2, 0.7);
  p2.f[0] = Factor1D::trig(-0.3, 0.4, 0.1, 1.1, 0.5);
  p2.f[3] = Factor1D::trig(0.2, 0.5, 0.3, 0.7, 0.9);
  ConnectionField Am = makeConnection(u1, {ConnectionTerm{1, gen, p1}, ConnectionTerm{2, gen, p2}});
  HiggsVector e0(1);
  e0(0) = 1.0;
  HiggsTerm ht;
  ht.direction = e0;
  ht.profile.f[0] = Factor1D::trig(0.6, 0.2, 0.5, 1.0, 0.1);
  ht.profile.f[1] = Factor1D::trig(0.2, 0.4, 0.6, 0.9, 0.8);
  ht.hasImag = false;
  HiggsField Pm = makeHiggs(1, {ht});
  auto pts = sampleGrid(3, 0.2, 0.2);
  std::vector<double> hs = {1.0 / 8, 1.0 / 16, 1.0 / 32};
  std::vector<double> ec, ey, eh;
  double elim = 0;
  for (double h : hs) {
    ReducedResiduals rr = reducedTemporalResiduals(Am, Pm, inc, pts, h);
    ec.push_back(rr.constraint);
    ey.push_back(rr.ymReduced);
    eh.push_back(rr.higgsReduced);
    elim = std::max(elim, rr.eliminationId);
  }
  m.addLowerBound("constraint_slope", logLogSlope(hs, ec), 1.9);
  m.addLowerBound("reduced_ym_slope", logLogSlope(hs, ey), 1.9);
  m.addLowerBound("reduced_higgs_slope", logLogSlope(hs, eh), 1.9);
  m.addUpperBound("elimination_identity", elim, 1e-8);

  bool wantLin = ctx.cfg.scenario.is_object() && ctx.cfg.scenario.value("linearization", false);
  if (wantLin) {
    Grid gl;
    gl.L = 1.0;
    gl.nx = 33;  // dx = 1/16
    gl.tEnd = -0.3;
    const double eps = 1e-3;
    SourceSpec unit = src;
    unit.amplitude = 1.0;
    SourceSpec plus = unit, minus = unit;
    plus.amplitude = eps;
    minus.amplitude = -eps;
    EvolutionResult rp = solvePerturbed(A, Phi, tab, plus, gl, {});
    EvolutionResult rm = solvePerturbed(A, Phi, tab, minus, gl, {});
    EvolutionResult rl = solveLinearized(A, Phi, tab, unit, gl, {});
    double scale = 0, diff = 0;
    for (std::size_t i = 0; i < rl.current.w.size(); ++i) {
      double der = (rp.current.w[i] - rm.current.w[i]) / (2.0 * eps);
      scale = std::max(scale, std::abs(rl.current.w[i]));
      diff = std::max(diff, std::abs(der - rl.current.w[i]));
    }
    for (std::size_t i = 0; i < rl.current.u.size(); ++i) {
      double der = (rp.current.u[i] - rm.current.u[i]) / (2.0 * eps);
      scale = std::max(scale, std::abs(rl.current.u[i]));
      diff = std::max(diff, std::abs(der - rl.current.u[i]));
    }
    double budget = 10.0 * (eps * eps + gl.dx() * gl.dx());
    m.addUpperBound("linearization_consistency", scale > 0 ? diff / scale : 1.0, budget);
  }

  bool wantCompat = ctx.cfg.scenario.is_object() && ctx.cfg.scenario.value("compatibility", false);
  if (wantCompat) {
    SourceSpec cs = src;
    cs.amplitude = 1e-2;
    auto residAt = [&](int nx) {
      Grid gc;
      gc.L = 1.0;
      gc.nx = nx;
      gc.tEnd = -0.45;  // source still active one level back
      double rawDt = gc.dt();
      int steps = static_cast<int>(std::ceil((gc.tEnd - gc.t0) / rawDt));
      gc.cfl *= ((gc.tEnd - gc.t0) / steps) / rawDt;
      EvolutionResult rr = solvePerturbed(A, Phi, tab, cs, gc, {});
      return evolvedCompatibilityResidual(rr, A, Phi, tab, cs);
    };
    double coarse = residAt(25);
    double fine = residAt(49);
    m.addLowerBound("evolved_compatibility_ratio", coarse / std::max(fine, 1e-300), 2.2);
  }

  // grid snapshot dump: flat little-endian float64 with a small header
  std::filesystem::path bin = std::filesystem::path(ctx.cfg.outDir) / "state.bin";
  std::ofstream out(bin, std::ios::binary);
  if (out) {
    std::int64_t dims[4] = {g.nx, g.nx, g.nx, 4 * tab.n};
    double steps[2] = {g.dt(), g.dx()};
    out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    out.write(reinterpret_cast<const char*>(steps), sizeof(steps));
    out.write(reinterpret_cast<const char*>(res.current.w.data()),
              static_cast<std::streamsize>(res.current.w.size() * sizeof(double)));
    Json meta;
    meta["dims"] = {g.nx, g.nx, g.nx, 4 * tab.n};
    meta["dt"] = g.dt();
    meta["dx"] = g.dx();
    meta["t_final"] = res.tFinal;
    std::ofstream mo(std::filesystem::path(ctx.cfg.outDir) / "state.json");
    mo << meta.dump(2) << "\n";
  }
}

void runRecoverHiggs(RunContext& ctx, MetricSet& m, std::vector<std::vector<double>>& csv) {
  std::string variant = "constant";
  if (ctx.cfg.scenario.is_object() && ctx.cfg.scenario.contains("case"))
    variant = ctx.cfg.scenario["case"].get<std::string>();

  Scenario sc;
  sc.spec = GroupSpec::su2u1();
  sc.rep = RepSpec::Electroweak(3);
  sc.eps0 = 0.25;
  sc.rsSweep = {{0.0, 0.3}, {0.4, 0.2}};
  sc.seed = ctx.cfg.seed;
  sc.transport.tol = 1e-11;

  PreconditionReport pre = checkFaithfulRecoveryPrecondition(sc);
  m.addBoolean("preconditions", pre.allSatisfied(), true);

  if (variant == "constant") {
    HiggsVector phi0(2);
    phi0 << Complex(0.3, -0.2), Complex(0.9, 0.1);
    sc.hiddenA = ConnectionField::zero(sc.spec);
    sc.hiddenPhi = HiggsField::constant(phi0);
    Dataset data = forwardData(sc, 5, 5e-3);
    RecoveryReport rep = recoverPhi(sc, data);
    double tol = ctx.cfg.tolSet ? ctx.cfg.tolOverride : 1e-8;
    m.addUpperBound("max_error", rep.maxError, tol);
    m.addUpperBound("rms_error", rep.rmsError, tol);
  } else if (variant == "polynomial") {
    HiggsTerm term;
    term.direction = randomHiggsVector(2, ctx.rng);
    term.profile.f[0] = Factor1D::poly({0.4, 0.5, 0.3});
    term.profile.f[1] = Factor1D::poly({1.0, -0.4});
    term.profileImag.f[0] = Factor1D::poly({0.2, -0.1});
    term.hasImag = true;
    sc.hiddenPhi = makeHiggs(2, {term});
    AlgebraElement centreDir(sc.spec);
    centreDir.blocks[1](0, 0) = kI;
    SepScalar prof;
    prof.f[0] = Factor1D::trig(0.3, 0.2, 0.2, 0.9, 0.1);
    prof.f[1] = Factor1D::trig(0.2, 0.3, 0.3, 0.7, 0.5);
    sc.hiddenA = makeConnection(sc.spec, {ConnectionTerm{1, centreDir, prof}});
    std::vector<double> hsteps = {4e-3, 2e-3, 1e-3};
    std::vector<double> errs;
    for (double h : hsteps) {
      Dataset data = forwardData(sc, 7, h);
      RecoveryReport rep = recoverPhi(sc, data);
      errs.push_back(rep.rmsError);
      csv.push_back({h, rep.rmsError, rep.maxError});
    }
    m.addUpperBound("rms_error_at_h3", errs.back(), 1e-4);
    m.addLowerBound("h_sweep_slope", logLogSlope(hsteps, errs), 1.9);
  } else if (variant == "electroweak") {
    sc.hiddenA = randomSmoothConnection(sc.spec, ctx.rng, 0.3, 3, true);
    sc.hiddenPhi = randomSmoothHiggs(2, ctx.rng, 0.5);
    Dataset data = forwardData(sc, 7, 1e-3);
    RecoveryReport rep = recoverPhi(sc, data);
    m.addUpperBound("rms_error", rep.rmsError, 1e-3);
    csv.push_back({1e-3, rep.rmsError, rep.maxError});
  } else {
    throw std::invalid_argument("recover-higgs: unknown scenario case '" + variant + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale verification suites for coupled gauge-Higgs fields"};
  app.require_subcommand(1);

  std::string configPath, outDir = ".";
  std::uint64_t seed = 0;
  bool seedGiven = false;
  int gridOverride = 0;
  double tolOverride = 0;
  bool tolGiven = false;

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--config", configPath, "JSON config file");
    sub->add_option("--out", outDir, "output directory");
    sub->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) {
      seedGiven = true;
    });
    sub->add_option("--grid", gridOverride, "grid / sample-count override");
    sub->add_option("--tol", tolOverride, "tolerance override")->each([&](const std::string&) {
      tolGiven = true;
    });
  };

  std::vector<std::string> names = {"algebra-checks", "transport-checks", "gauge-checks",
                                    "interaction-sweep", "ymh-evolve", "recover-higgs"};
  for (const auto& n : names) addCommon(app.add_subcommand(n));

  CLI11_PARSE(app, argc, argv);

  int cap = threadCapFromEnvironment();
#ifdef _OPENMP
  if (cap > 0) omp_set_num_threads(cap);
#else
  (void)cap;
#endif

  std::string sub = app.get_subcommands().front()->get_name();

  ExperimentConfig cfg;
  try {
    if (!configPath.empty()) {
      cfg = ExperimentConfig::fromJsonFile(configPath);
      if (cfg.experiment != sub)
        throw std::invalid_argument("config experiment '" + cfg.experiment +
                                    "' does not match subcommand '" + sub + "'");
    } else {
      cfg.experiment = sub;
    }
    if (seedGiven) {
      cfg.seed = seed;
      cfg.seedSet = true;
    }
    if (!outDir.empty()) cfg.outDir = outDir;
    if (gridOverride) cfg.gridOverride = gridOverride;
    if (tolGiven) {
      cfg.tolOverride = tolOverride;
      cfg.tolSet = true;
    }
    if (!cfg.seedSet)
      throw std::invalid_argument("a seed is required (config key 'seed' or --seed)");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::filesystem::create_directories(cfg.outDir);
    auto tStart = std::chrono::steady_clock::now();
    RunContext ctx(cfg);
    MetricSet metrics;
    std::vector<std::vector<double>> csv;
    if (sub == "algebra-checks") runAlgebraChecks(ctx, metrics);
    else if (sub == "transport-checks") runTransportChecks(ctx, metrics);
    else if (sub == "gauge-checks") runGaugeChecks(ctx, metrics);
    else if (sub == "interaction-sweep") runInteractionSweep(ctx, metrics, csv);
    else if (sub == "ymh-evolve") runYmhEvolve(ctx, metrics);
    else if (sub == "recover-higgs") runRecoverHiggs(ctx, metrics, csv);

    if (!csv.empty())
      writeCsv((std::filesystem::path(cfg.outDir) / "series.csv").string(),
               {"x", "value", "aux"}, csv);
    double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tStart).count();
    Json rep = writeReport(cfg, metrics,
                           (std::filesystem::path(cfg.outDir) / "report.json").string(),
                           runtime);
    std::cout << "runtime_s " << runtime << "\n";
    for (const auto& [name, metric] : metrics.metrics())
      std::cout << (metric.pass ? "[pass] " : "[FAIL] ") << name << " = " << metric.value
                << (metric.atLeast ? " >= " : " <= ") << metric.tolerance << "\n";
    std::cout << (metrics.allPass() ? "OK" : "FAILED") << "\n";
    return metrics.allPass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
