// Coarse-grid direct solver for the perturbed gauge-Higgs system in the
// relative Lorenz gauge: leapfrog time stepping with per-step fixed-point
// iteration of the nonlinearity, a midpoint sub-integration for the time
// component of the gauge current, and the linearized companion solver.
// Spatial updates are data-parallel; a serial reference path is kept for
// testing against the OpenMP path.
#pragma once

#include <functional>
#include <vector>

#include "ymhlab/algebra.hpp"
#include "ymhlab/fields.hpp"
#include "ymhlab/gauge.hpp"

namespace ymhlab {

enum class ExecPolicy { Serial, Parallel };

// Dense coordinate tables for fast grid kernels.
struct AlgebraTables {
  GroupSpec spec;
  RepSpec rep;
  int n = 0;  // algebra dimension
  int d = 0;  // complex Higgs dimension
  std::vector<double> gram;       // n
  std::vector<double> structure;  // n*n*n, [i*n*n + j*n + k]
  struct BracketEntry {
    int i, j, k;
    double c;
  };
  std::vector<BracketEntry> structureNz;  // nonzero structure constants
  std::vector<Eigen::MatrixXd> rhoReal;   // n matrices, 2d x 2d
  std::vector<double> rhoFlat;            // n * (2d)^2, row-major per matrix

  static AlgebraTables build(const GroupSpec& spec, const RepSpec& rep);

  void bracketAcc(const double* x, const double* y, double* out, double scale = 1.0) const;
  void rhoApplyAcc(const double* x, const double* w, double* out, double scale = 1.0) const;
  // coupling form in coordinates: out_i += scale * Re<v, rho(E_i) w> / G_ii
  void couplingAcc(const double* v, const double* w, double* out, double scale = 1.0) const;
};

struct Grid {
  double L = 1.5;       // spatial half-width
  int nx = 25;          // nodes per axis (odd)
  double cfl = 0.95;    // fraction of the dx/sqrt(3) limit
  double t0 = -1.0;
  double tEnd = 0.0;

  double dx() const { return 2.0 * L / (nx - 1); }
  double dt() const { return cfl * dx() / std::sqrt(3.0); }
  int steps() const { return static_cast<int>(std::ceil((tEnd - t0) / dt() - 1e-9)); }
  long nodes() const { return static_cast<long>(nx) * nx * nx; }
  long index(int i, int j, int k) const {
    return (static_cast<long>(i) * nx + j) * nx + k;
  }
  SpacetimePoint point(double t, int i, int j, int k) const {
    return SpacetimePoint(t, -L + i * dx(), -L + j * dx(), -L + k * dx());
  }
  void validate() const;
};

// Compactly supported C^2 bump sources: one algebra direction per spatial
// component and one Higgs direction, sharing a space-time window.
struct SourceSpec {
  double amplitude = 1e-3;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.3;
  double timeCenter = -0.6;
  double timeWidth = 0.2;
  std::array<Eigen::VectorXd, 3> dirJ;  // algebra coords per spatial component
  Eigen::VectorXd dirF;                 // real Higgs coords (2d)

  double bump(double t, const Eigen::Vector3d& x) const;
  Eigen::Vector3d bumpSpatialGrad(double t, const Eigen::Vector3d& x) const;
  bool activeAt(double t, const Eigen::Vector3d& x) const;

  static SourceSpec zero(const AlgebraTables& tab);
};

struct EvolveOptions {
  ExecPolicy policy = ExecPolicy::Parallel;
  int picardMax = 8;
  double picardTol = 1e-10;
  bool trackInfluenceMask = true;
};

// Snapshot of one time level in basis coordinates.
struct LevelData {
  std::vector<double> w;   // nodes * 4 * n
  std::vector<double> u;   // nodes * 2d
  std::vector<double> j0;  // nodes * n
};

struct EvolutionResult {
  Grid grid;
  double tFinal = 0;
  LevelData current;             // level at tFinal
  LevelData previous;            // level at tFinal - dt
  std::vector<double> j0TwoBack; // gauge-current time component at tFinal - 2 dt
  std::vector<char> influence;   // per node, 1 where the discrete cone reached
  double maxAbsOutsideInfluence = 0;
  int totalPicardIterations = 0;

  double maxAbs() const;
};

EvolutionResult solvePerturbed(const ConnectionField& A, const HiggsField& Phi,
                               const AlgebraTables& tab, const SourceSpec& src,
                               const Grid& grid, const EvolveOptions& opt = {});

EvolutionResult solveLinearized(const ConnectionField& A, const HiggsField& Phi,
                                const AlgebraTables& tab, const SourceSpec& src,
                                const Grid& grid, const EvolveOptions& opt = {});

// ---- pointwise nonlinear terms (closed-form fields, per-degree split) ----

struct NonlinearTerms {
  AlgebraOneForm gaugeQuadratic;   // bracket terms quadratic in W
  AlgebraOneForm gaugeCubic;       // bracket terms cubic in W
  AlgebraOneForm mixed1, mixed2, mixed3;  // coupling-form terms, degree 1..3
  HiggsVector higgs1, higgs2, higgs3;     // Higgs channel, degree 1..3
};

NonlinearTerms evalNonlinearTerms(const ConnectionField& A, const HiggsField& Phi,
                                  const ConnectionField& W, const HiggsField& Upsilon,
                                  const RepSpec& rep, const SpacetimePoint& p, double h);

// ---- reduced temporal-gauge residual suite (pointwise, stencil width h) ----

struct ReducedResiduals {
  double constraint = 0;     // max norm over samples
  double ymReduced = 0;      // spatial components of the first-order system
  double higgsReduced = 0;   // time-differentiated Higgs channel
  double eliminationId = 0;  // discrete derivative-elimination identity
};

ReducedResiduals reducedTemporalResiduals(const ConnectionField& A, const HiggsField& Phi,
                                          const RepSpec& rep,
                                          const std::vector<SpacetimePoint>& pts, double h,
                                          ExecPolicy policy = ExecPolicy::Parallel);

// Discrete compatibility defect of an evolved solution, evaluated one level
// back with a centered time difference of the gauge-current component; max
// norm over interior nodes.
double evolvedCompatibilityResidual(const EvolutionResult& res, const ConnectionField& A,
                                    const HiggsField& Phi, const AlgebraTables& tab,
                                    const SourceSpec& src);

// least-squares slope of log(err) against log(h)
double logLogSlope(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace ymhlab
