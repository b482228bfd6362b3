#include "ymhlab/ymh_pde.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ymhlab {

namespace {
constexpr int kMaxAlg = 16;    // largest algebra dimension handled by kernels
constexpr int kMaxHiggs = 32;  // largest 2d

inline double metricDiag(int a) { return a == 0 ? -1.0 : 1.0; }
}  // namespace

AlgebraTables AlgebraTables::build(const GroupSpec& spec, const RepSpec& rep) {
  AlgebraTables t;
  t.spec = spec;
  t.rep = rep;
  const auto basis = algebraBasis(spec);
  t.n = static_cast<int>(basis.size());
  t.d = rep.dim(spec);
  if (t.n > kMaxAlg) throw std::invalid_argument("AlgebraTables: algebra too large for kernels");
  if (2 * t.d > kMaxHiggs) throw std::invalid_argument("AlgebraTables: Higgs space too large");
  t.gram = algebraGramDiagonal(spec);
  t.structure.assign(static_cast<std::size_t>(t.n) * t.n * t.n, 0.0);
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < t.n; ++j) {
      AlgebraElement b = bracket(basis[static_cast<std::size_t>(i)],
                                 basis[static_cast<std::size_t>(j)]);
      for (int k = 0; k < t.n; ++k)
        t.structure[static_cast<std::size_t>((i * t.n + j) * t.n + k)] =
            adInner(b, basis[static_cast<std::size_t>(k)]) / t.gram[static_cast<std::size_t>(k)];
    }
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < t.n; ++j)
      for (int k = 0; k < t.n; ++k) {
        double c = t.structure[static_cast<std::size_t>((i * t.n + j) * t.n + k)];
        if (c != 0.0) t.structureNz.push_back({i, j, k, c});
      }
  const int m2 = 2 * t.d;
  t.rhoFlat.assign(static_cast<std::size_t>(t.n) * m2 * m2, 0.0);
  for (int i = 0; i < t.n; ++i) {
    Matrix m = rhoStar(basis[static_cast<std::size_t>(i)], rep);
    Eigen::MatrixXd r(m2, m2);
    r.topLeftCorner(t.d, t.d) = m.real();
    r.topRightCorner(t.d, t.d) = -m.imag();
    r.bottomLeftCorner(t.d, t.d) = m.imag();
    r.bottomRightCorner(t.d, t.d) = m.real();
    t.rhoReal.push_back(r);
    for (int a = 0; a < m2; ++a)
      for (int b = 0; b < m2; ++b)
        t.rhoFlat[static_cast<std::size_t>((i * m2 + a) * m2 + b)] = r(a, b);
  }
  return t;
}

void AlgebraTables::bracketAcc(const double* x, const double* y, double* out,
                               double scale) const {
  for (const BracketEntry& e : structureNz) out[e.k] += scale * e.c * x[e.i] * y[e.j];
}

void AlgebraTables::rhoApplyAcc(const double* x, const double* w, double* out,
                                double scale) const {
  const int m = 2 * d;
  for (int i = 0; i < n; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* r = rhoFlat.data() + static_cast<std::size_t>(i) * m * m;
    for (int a = 0; a < m; ++a) {
      double acc = 0;
      const double* row = r + a * m;
      for (int b = 0; b < m; ++b) acc += row[b] * w[b];
      out[a] += scale * xi * acc;
    }
  }
}

void AlgebraTables::couplingAcc(const double* v, const double* w, double* out,
                                double scale) const {
  const int m = 2 * d;
  for (int i = 0; i < n; ++i) {
    const double* r = rhoFlat.data() + static_cast<std::size_t>(i) * m * m;
    double acc = 0;
    for (int a = 0; a < m; ++a) {
      double rw = 0;
      const double* row = r + a * m;
      for (int b = 0; b < m; ++b) rw += row[b] * w[b];
      acc += v[a] * rw;
    }
    out[i] += scale * acc / gram[static_cast<std::size_t>(i)];
  }
}

void Grid::validate() const {
  if (nx < 5 || nx % 2 == 0) throw std::invalid_argument("Grid: nx must be odd and >= 5");
  if (!(L > 0)) throw std::invalid_argument("Grid: L must be positive");
  if (!(cfl > 0 && cfl <= 1.0)) throw std::invalid_argument("Grid: need 0 < cfl <= 1");
  if (dt() > dx() / std::sqrt(3.0) + 1e-15)
    throw std::invalid_argument("Grid: time step violates the stability limit");
  if (!(tEnd > t0)) throw std::invalid_argument("Grid: tEnd must exceed t0");
}

double SourceSpec::bump(double t, const Eigen::Vector3d& x) const {
  double ut = (t - timeCenter) / timeWidth;
  double qt = 1.0 - ut * ut;
  if (qt <= 0) return 0;
  double ux = (x - center).squaredNorm() / (radius * radius);
  double qx = 1.0 - ux;
  if (qx <= 0) return 0;
  qt = qt * qt * qt;
  qx = qx * qx * qx;
  return amplitude * qt * qx;
}

Eigen::Vector3d SourceSpec::bumpSpatialGrad(double t, const Eigen::Vector3d& x) const {
  double ut = (t - timeCenter) / timeWidth;
  double qt = 1.0 - ut * ut;
  if (qt <= 0) return Eigen::Vector3d::Zero();
  double ux = (x - center).squaredNorm() / (radius * radius);
  double qx = 1.0 - ux;
  if (qx <= 0) return Eigen::Vector3d::Zero();
  qt = qt * qt * qt;
  double dq = 3.0 * qx * qx * (-2.0 / (radius * radius));
  return amplitude * qt * dq * (x - center);
}

bool SourceSpec::activeAt(double t, const Eigen::Vector3d& x) const {
  double ut = (t - timeCenter) / timeWidth;
  if (ut * ut >= 1.0) return false;
  return (x - center).squaredNorm() < radius * radius;
}

SourceSpec SourceSpec::zero(const AlgebraTables& tab) {
  SourceSpec s;
  s.amplitude = 0;
  for (auto& v : s.dirJ) v = Eigen::VectorXd::Zero(tab.n);
  s.dirF = Eigen::VectorXd::Zero(2 * tab.d);
  return s;
}

double EvolutionResult::maxAbs() const {
  double m = 0;
  for (double v : current.w) m = std::max(m, std::abs(v));
  for (double v : current.u) m = std::max(m, std::abs(v));
  for (double v : current.j0) m = std::max(m, std::abs(v));
  return m;
}

namespace {

struct BackgroundLevel {
  // per node caches in basis coordinates
  std::vector<double> A;     // 4 * n
  std::vector<double> dA;    // 16 * n, (alpha*4 + beta)
  std::vector<double> F;     // 6 * n, pairs 01,02,03,12,13,23
  std::vector<double> phi;   // 2d
  std::vector<double> dphi;  // 4 * 2d
};

int pairIndex(int a, int b) {
  static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return table[a][b];
}

void fillBackground(const ConnectionField& A, const HiggsField& Phi, const AlgebraTables& tab,
                    const Grid& g, double t, bool needDerivs, BackgroundLevel& bg,
                    ExecPolicy policy) {
  const long N = g.nodes();
  const int n = tab.n, m = 2 * tab.d;
  bg.A.assign(static_cast<std::size_t>(N) * 4 * n, 0.0);
  bg.phi.assign(static_cast<std::size_t>(N) * m, 0.0);
  if (needDerivs) {
    bg.dA.assign(static_cast<std::size_t>(N) * 16 * n, 0.0);
    bg.F.assign(static_cast<std::size_t>(N) * 6 * n, 0.0);
    bg.dphi.assign(static_cast<std::size_t>(N) * 4 * m, 0.0);
  }
  if (A.identicallyZero && Phi.isConstant) {
    // constant caches; only the Higgs value needs writing
    Eigen::VectorXd pr = higgsToReal(Phi.value(SpacetimePoint::Zero()));
    for (long node = 0; node < N; ++node)
      std::memcpy(bg.phi.data() + node * m, pr.data(), sizeof(double) * m);
    return;
  }
  const int nx = g.nx;
  if (A.coordValue && Phi.coordValue && (!needDerivs || (A.coordDeriv1 && Phi.coordDeriv1))) {
    // allocation-free path through the coordinate evaluators
#ifdef _OPENMP
#pragma omp parallel for collapse(2) if (policy == ExecPolicy::Parallel)
#endif
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < nx; ++j)
        for (int k = 0; k < nx; ++k) {
          long node = g.index(i, j, k);
          SpacetimePoint p = g.point(t, i, j, k);
          double* aout = bg.A.data() + node * 4 * n;
          A.coordValue(p, aout);
          Phi.coordValue(p, bg.phi.data() + node * m);
          if (!needDerivs) continue;
          double da[4][4 * kMaxAlg];
          for (int al = 0; al < 4; ++al) {
            A.coordDeriv1(p, al, da[al]);
            std::memcpy(bg.dA.data() + (node * 16 + al * 4) * n, da[al],
                        sizeof(double) * 4 * n);
            Phi.coordDeriv1(p, al, bg.dphi.data() + (node * 4 + al) * m);
          }
          int at = 0;
          for (int x1 = 0; x1 < 4; ++x1)
            for (int x2 = x1 + 1; x2 < 4; ++x2) {
              double* fout = bg.F.data() + (node * 6 + at) * n;
              for (int q = 0; q < n; ++q)
                fout[q] = da[x1][x2 * n + q] - da[x2][x1 * n + q];
              tab.bracketAcc(aout + x1 * n, aout + x2 * n, fout, 1.0);
              ++at;
            }
        }
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for collapse(2) if (policy == ExecPolicy::Parallel)
#endif
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j)
      for (int k = 0; k < nx; ++k) {
        long node = g.index(i, j, k);
        SpacetimePoint p = g.point(t, i, j, k);
        AlgebraOneForm a = A.value(p);
        for (int b = 0; b < 4; ++b) {
          Eigen::VectorXd c = basisCoordinates(a[static_cast<std::size_t>(b)]);
          std::memcpy(bg.A.data() + (node * 4 + b) * n, c.data(), sizeof(double) * n);
        }
        HiggsVector ph = Phi.value(p);
        Eigen::VectorXd pr = higgsToReal(ph);
        std::memcpy(bg.phi.data() + node * m, pr.data(), sizeof(double) * m);
        if (!needDerivs) continue;
        std::array<AlgebraOneForm, 4> da;
        for (int al = 0; al < 4; ++al) {
          da[static_cast<std::size_t>(al)] = A.deriv1(p, al);
          for (int b = 0; b < 4; ++b) {
            Eigen::VectorXd c =
                basisCoordinates(da[static_cast<std::size_t>(al)][static_cast<std::size_t>(b)]);
            std::memcpy(bg.dA.data() + (node * 16 + al * 4 + b) * n, c.data(),
                        sizeof(double) * n);
          }
          Eigen::VectorXd dp = higgsToReal(Phi.deriv1(p, al));
          std::memcpy(bg.dphi.data() + (node * 4 + al) * m, dp.data(), sizeof(double) * m);
        }
        int at = 0;
        for (int x1 = 0; x1 < 4; ++x1)
          for (int x2 = x1 + 1; x2 < 4; ++x2) {
            AlgebraElement f =
                da[static_cast<std::size_t>(x1)][static_cast<std::size_t>(x2)] -
                da[static_cast<std::size_t>(x2)][static_cast<std::size_t>(x1)] +
                bracket(a[static_cast<std::size_t>(x1)], a[static_cast<std::size_t>(x2)]);
            Eigen::VectorXd c = basisCoordinates(f);
            std::memcpy(bg.F.data() + (node * 6 + at) * n, c.data(), sizeof(double) * n);
            ++at;
          }
      }
}

struct SourceLevel {
  std::vector<double> J;     // 3 * n (spatial components)
  std::vector<double> F;     // 2d
  std::vector<double> divJ;  // n  (sum_j d_j J_j)
  std::vector<char> active;
};

void fillSource(const SourceSpec& src, const AlgebraTables& tab, const Grid& g, double t,
                SourceLevel& s, ExecPolicy policy) {
  const long N = g.nodes();
  const int n = tab.n, m = 2 * tab.d;
  s.J.assign(static_cast<std::size_t>(N) * 3 * n, 0.0);
  s.F.assign(static_cast<std::size_t>(N) * m, 0.0);
  s.divJ.assign(static_cast<std::size_t>(N) * n, 0.0);
  s.active.assign(static_cast<std::size_t>(N), 0);
  if (src.amplitude == 0.0) return;
  const int nx = g.nx;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) if (policy == ExecPolicy::Parallel)
#endif
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j)
      for (int k = 0; k < nx; ++k) {
        long node = g.index(i, j, k);
        SpacetimePoint p = g.point(t, i, j, k);
        Eigen::Vector3d x = p.tail<3>();
        if (!src.activeAt(t, x)) continue;
        s.active[static_cast<std::size_t>(node)] = 1;
        double b = src.bump(t, x);
        Eigen::Vector3d gb = src.bumpSpatialGrad(t, x);
        for (int jj = 0; jj < 3; ++jj) {
          for (int c = 0; c < n; ++c) {
            s.J[(node * 3 + jj) * n + c] = b * src.dirJ[static_cast<std::size_t>(jj)](c);
            s.divJ[node * n + c] += gb(jj) * src.dirJ[static_cast<std::size_t>(jj)](c);
          }
        }
        for (int c = 0; c < m; ++c) s.F[node * m + c] = b * src.dirF(c);
      }
}

struct Levels {
  std::vector<double> Wm, Wc, WpA, WpB;
  std::vector<double> Um, Uc, UpA, UpB;
  std::vector<double> J0m, J0c, J0pA, J0pB;
};

// Shared per-node scratch of fixed capacity.
struct Scratch {
  double dU[4][kMaxHiggs];  // time/space derivatives of the Higgs perturbation
  double lapW[4][kMaxAlg];
  double lapU[kMaxHiggs];
};

struct KernelArgs {
  const Grid* g;
  const AlgebraTables* tab;
  const BackgroundLevel* bg;
  const SourceLevel* srcN;
  const Levels* lv;
  const std::vector<double>* WpGuess;
  const std::vector<double>* UpGuess;
  double dt, dx;
  bool linearized;
};

// Leapfrog update of one interior node; writes 4n + 2d doubles.
void updateNode(const KernelArgs& ka, int i, int j, int k, double* outW, double* outU) {
  const Grid& g = *ka.g;
  const AlgebraTables& tab = *ka.tab;
  const int n = tab.n, m = 2 * tab.d;
  const long node = g.index(i, j, k);
  const double dx2 = ka.dx * ka.dx;
  const double twodt = 2.0 * ka.dt;
  Scratch sc;

  const double* Wc = ka.lv->Wc.data();
  const double* Wm = ka.lv->Wm.data();
  const double* Uc = ka.lv->Uc.data();
  const double* Um = ka.lv->Um.data();
  const double* Wg = ka.WpGuess->data();
  const double* Ug = ka.UpGuess->data();

  auto wAt = [&](long nd, int beta) { return Wc + (nd * 4 + beta) * n; };
  auto uAt = [&](long nd) { return Uc + nd * m; };

  const long nxp = g.index(i + 1, j, k), nxm = g.index(i - 1, j, k);
  const long nyp = g.index(i, j + 1, k), nym = g.index(i, j - 1, k);
  const long nzp = g.index(i, j, k + 1), nzm = g.index(i, j, k - 1);
  const long nb[3][2] = {{nxp, nxm}, {nyp, nym}, {nzp, nzm}};

  // Laplacians
  for (int b = 0; b < 4; ++b) {
    const double* c = wAt(node, b);
    for (int q = 0; q < n; ++q) sc.lapW[b][q] = -6.0 * c[q];
    for (int ax = 0; ax < 3; ++ax) {
      const double* p1 = wAt(nb[ax][0], b);
      const double* m1 = wAt(nb[ax][1], b);
      for (int q = 0; q < n; ++q) sc.lapW[b][q] += p1[q] + m1[q];
    }
    for (int q = 0; q < n; ++q) sc.lapW[b][q] /= dx2;
  }
  // spatial first derivatives of W: store in a local array
  double dWsp[3][4][kMaxAlg];
  for (int ax = 0; ax < 3; ++ax)
    for (int b = 0; b < 4; ++b) {
      const double* p1 = wAt(nb[ax][0], b);
      const double* m1 = wAt(nb[ax][1], b);
      for (int q = 0; q < n; ++q) dWsp[ax][b][q] = (p1[q] - m1[q]) / (2.0 * ka.dx);
    }
  double dWt[4][kMaxAlg];
  for (int b = 0; b < 4; ++b) {
    const double* gp = Wg + (node * 4 + b) * n;
    const double* mm = Wm + (node * 4 + b) * n;
    for (int q = 0; q < n; ++q) dWt[b][q] = (gp[q] - mm[q]) / twodt;
  }
  // dW[alpha][beta]: alpha 0 = time
  auto dWof = [&](int al, int b) -> const double* {
    return al == 0 ? dWt[b] : dWsp[al - 1][b];
  };

  for (int q = 0; q < m; ++q) {
    sc.lapU[q] = -6.0 * uAt(node)[q];
    sc.dU[0][q] = (Ug[node * m + q] - Um[node * m + q]) / twodt;
  }
  for (int ax = 0; ax < 3; ++ax) {
    const double* p1 = uAt(nb[ax][0]);
    const double* m1 = uAt(nb[ax][1]);
    for (int q = 0; q < m; ++q) {
      sc.lapU[q] += p1[q] + m1[q];
      sc.dU[ax + 1][q] = (p1[q] - m1[q]) / (2.0 * ka.dx);
    }
  }
  for (int q = 0; q < m; ++q) sc.lapU[q] /= dx2;

  const double* Abg = ka.bg->A.data() + node * 4 * n;
  const double* dAbg = ka.bg->dA.data() + node * 16 * n;
  const double* Fbg = ka.bg->F.data() + node * 6 * n;
  const double* phi = ka.bg->phi.data() + node * m;
  const double* dphi = ka.bg->dphi.data() + node * 4 * m;
  auto Ab = [&](int b) { return Abg + b * n; };
  auto dAb = [&](int al, int b) { return dAbg + (al * 4 + b) * n; };

  // divergence-with-raised-index of the background: sum_a s_a dA[a][a]
  double divA[kMaxAlg];
  for (int q = 0; q < n; ++q)
    divA[q] = -dAb(0, 0)[q] + dAb(1, 1)[q] + dAb(2, 2)[q] + dAb(3, 3)[q];

  // covariant derivative of the background Higgs: (dphi + rho(A)phi)_alpha
  double dAphi[4][kMaxHiggs];
  for (int al = 0; al < 4; ++al) {
    for (int q = 0; q < m; ++q) dAphi[al][q] = dphi[al * m + q];
    tab.rhoApplyAcc(Ab(al), phi, dAphi[al], 1.0);
  }

  // covariant derivative of the Higgs perturbation
  double dAU[4][kMaxHiggs];
  for (int al = 0; al < 4; ++al) {
    for (int q = 0; q < m; ++q) dAU[al][q] = sc.dU[al][q];
    tab.rhoApplyAcc(Ab(al), uAt(node), dAU[al], 1.0);
  }

  const double* Wnode[4];
  for (int b = 0; b < 4; ++b) Wnode[b] = wAt(node, b);
  const double* Unode = uAt(node);

  double rhoWphi[4][kMaxHiggs];  // rho(W_beta) phi
  double rhoWU[4][kMaxHiggs];    // rho(W_beta) U
  for (int b = 0; b < 4; ++b) {
    for (int q = 0; q < m; ++q) {
      rhoWphi[b][q] = 0;
      rhoWU[b][q] = 0;
    }
    tab.rhoApplyAcc(Wnode[b], phi, rhoWphi[b], 1.0);
    tab.rhoApplyAcc(Wnode[b], Unode, rhoWU[b], 1.0);
  }

  double phiU2Re = 0;  // Re<phi, U>
  for (int q = 0; q < m; ++q) phiU2Re += phi[q] * Unode[q];
  double phi2 = 0, U2 = 0;
  for (int q = 0; q < m; ++q) {
    phi2 += phi[q] * phi[q];
    U2 += Unode[q] * Unode[q];
  }

  // ---- gauge channel ----
  for (int b = 0; b < 4; ++b) {
    double rhs[kMaxAlg];
    for (int q = 0; q < n; ++q) rhs[q] = sc.lapW[b][q];

    // lower-order part of the connection wave operator (sign-flipped onto rhs)
    // -[divA, W_b]
    tab.bracketAcc(divA, Wnode[b], rhs, 1.0);
    // -2 [A^a, dW_a b]
    for (int al = 0; al < 4; ++al)
      tab.bracketAcc(Ab(al), dWof(al, b), rhs, 2.0 * metricDiag(al));
    // +[d^a A_b - d_b A^a, W_a] summed over a
    for (int al = 0; al < 4; ++al) {
      double coeffArr[kMaxAlg];
      for (int q = 0; q < n; ++q)
        coeffArr[q] = metricDiag(al) * dAb(al, b)[q] - metricDiag(al) * dAb(b, al)[q];
      tab.bracketAcc(coeffArr, Wnode[al], rhs, -1.0);
    }
    // -[A^a, [A_a, W_b]] + [A^a, [A_b, W_a]] - [A_b, [A^a, W_a]]
    for (int al = 0; al < 4; ++al) {
      double inner1[kMaxAlg] = {0};
      tab.bracketAcc(Ab(al), Wnode[b], inner1, 1.0);
      tab.bracketAcc(Ab(al), inner1, rhs, metricDiag(al));
      double inner2[kMaxAlg] = {0};
      tab.bracketAcc(Ab(b), Wnode[al], inner2, 1.0);
      tab.bracketAcc(Ab(al), inner2, rhs, -metricDiag(al));
      double inner3[kMaxAlg] = {0};
      tab.bracketAcc(Ab(al), Wnode[al], inner3, metricDiag(al));
      tab.bracketAcc(Ab(b), inner3, rhs, 1.0);
    }

    // -star[W, star F] = +sum_a s_a [W_a, F_ab]  (moved to rhs)
    for (int al = 0; al < 4; ++al) {
      if (al == b) continue;
      double Fab[kMaxAlg];
      int pi = pairIndex(al, b);
      double sgn = (al < b) ? 1.0 : -1.0;
      for (int q = 0; q < n; ++q) Fab[q] = sgn * Fbg[pi * n + q];
      tab.bracketAcc(Wnode[al], Fab, rhs, metricDiag(al));
    }

    if (!ka.linearized) {
      // quadratic and cubic self-interactions of W (moved to rhs with minus)
      for (int al = 0; al < 4; ++al) {
        const double s = metricDiag(al);
        // +s( [dW_a a, W_b] + [W_a, dW_a b] )  from -1/2 D*[W,W]
        tab.bracketAcc(dWof(al, al), Wnode[b], rhs, s);
        tab.bracketAcc(Wnode[al], dWof(al, b), rhs, s);
        // +s [A_a, [W_a, W_b]]
        double ww[kMaxAlg] = {0};
        tab.bracketAcc(Wnode[al], Wnode[b], ww, 1.0);
        tab.bracketAcc(Ab(al), ww, rhs, s);
        // +s [W_a, (D_A W)_ab]
        double dawFull[kMaxAlg];
        for (int q = 0; q < n; ++q) dawFull[q] = dWof(al, b)[q] - dWof(b, al)[q];
        tab.bracketAcc(Ab(al), Wnode[b], dawFull, 1.0);
        tab.bracketAcc(Ab(b), Wnode[al], dawFull, -1.0);
        tab.bracketAcc(Wnode[al], dawFull, rhs, s);
        // +s [W_a, [W_a, W_b]]
        tab.bracketAcc(Wnode[al], ww, rhs, s);
      }
    }

    // coupling-form terms (moved to rhs with minus)
    // degree 1: -J(dAU_b, phi) - J(dAphi_b, U) - J(rho(W_b)phi, phi)
    tab.couplingAcc(dAU[b], phi, rhs, -1.0);
    tab.couplingAcc(dAphi[b], Unode, rhs, -1.0);
    tab.couplingAcc(rhoWphi[b], phi, rhs, -1.0);
    if (!ka.linearized) {
      tab.couplingAcc(dAU[b], Unode, rhs, -1.0);
      tab.couplingAcc(rhoWU[b], phi, rhs, -1.0);
      tab.couplingAcc(rhoWphi[b], Unode, rhs, -1.0);
      tab.couplingAcc(rhoWU[b], Unode, rhs, -1.0);
    }

    // source: time component from the integrated gauge current, spatial from src
    if (b == 0) {
      const double* j0 = ka.lv->J0c.data() + node * n;
      for (int q = 0; q < n; ++q) rhs[q] += j0[q];
    } else {
      const double* js = ka.srcN->J.data() + (node * 3 + (b - 1)) * n;
      for (int q = 0; q < n; ++q) rhs[q] += js[q];
    }

    const double* cm = Wm + (node * 4 + b) * n;
    const double* cc = wAt(node, b);
    for (int q = 0; q < n; ++q)
      outW[b * n + q] = 2.0 * cc[q] - cm[q] + ka.dt * ka.dt * rhs[q];
  }

  // ---- Higgs channel ----
  {
    double rhs[kMaxHiggs];
    for (int q = 0; q < m; ++q) rhs[q] = sc.lapU[q];
    // -m(U): +2 rho(A^a) dU_a + rho(divA) U + rho(A^a) rho(A_a) U
    for (int al = 0; al < 4; ++al)
      tab.rhoApplyAcc(Ab(al), sc.dU[al], rhs, 2.0 * metricDiag(al));
    tab.rhoApplyAcc(divA, Unode, rhs, 1.0);
    for (int al = 0; al < 4; ++al) {
      double t1[kMaxHiggs] = {0};
      tab.rhoApplyAcc(Ab(al), Unode, t1, 1.0);
      tab.rhoApplyAcc(Ab(al), t1, rhs, metricDiag(al));
    }

    // degree-1 couplings: -N1 = rho(divW)phi + rho(W_a)dphi^a + rho(A^a)rho(W_a)phi
    //                         + rho(W^a)(dAphi)_a - 2Re<phi,U>phi - (phi^2-1)U
    double divW[kMaxAlg];
    for (int q = 0; q < n; ++q)
      divW[q] = -dWof(0, 0)[q] + dWof(1, 1)[q] + dWof(2, 2)[q] + dWof(3, 3)[q];
    tab.rhoApplyAcc(divW, phi, rhs, 1.0);
    for (int al = 0; al < 4; ++al) {
      tab.rhoApplyAcc(Wnode[al], dphi + al * m, rhs, metricDiag(al));
      double t1[kMaxHiggs] = {0};
      tab.rhoApplyAcc(Wnode[al], phi, t1, 1.0);
      tab.rhoApplyAcc(Ab(al), t1, rhs, metricDiag(al));
      tab.rhoApplyAcc(Wnode[al], dAphi[al], rhs, metricDiag(al));
    }
    for (int q = 0; q < m; ++q)
      rhs[q] += -2.0 * phiU2Re * phi[q] - (phi2 - 1.0) * Unode[q];

    if (!ka.linearized) {
      // -N2
      for (int al = 0; al < 4; ++al) {
        double t1[kMaxHiggs] = {0};
        tab.rhoApplyAcc(Wnode[al], phi, t1, 1.0);
        tab.rhoApplyAcc(Wnode[al], t1, rhs, metricDiag(al));  // +rho(W^a)rho(W_a)phi
        tab.rhoApplyAcc(Wnode[al], dAU[al], rhs, metricDiag(al));
        double t2[kMaxHiggs] = {0};
        tab.rhoApplyAcc(Wnode[al], Unode, t2, 1.0);
        tab.rhoApplyAcc(Ab(al), t2, rhs, metricDiag(al));
        tab.rhoApplyAcc(Wnode[al], sc.dU[al], rhs, metricDiag(al));
      }
      tab.rhoApplyAcc(divW, Unode, rhs, 1.0);
      for (int q = 0; q < m; ++q)
        rhs[q] += -2.0 * phiU2Re * Unode[q] - U2 * phi[q];
      // -N3
      for (int al = 0; al < 4; ++al) {
        double t1[kMaxHiggs] = {0};
        tab.rhoApplyAcc(Wnode[al], Unode, t1, 1.0);
        tab.rhoApplyAcc(Wnode[al], t1, rhs, metricDiag(al));
      }
      for (int q = 0; q < m; ++q) rhs[q] += -U2 * Unode[q];
    }

    const double* fs = ka.srcN->F.data() + node * m;
    for (int q = 0; q < m; ++q) rhs[q] += fs[q];

    const double* cm = Um + node * m;
    for (int q = 0; q < m; ++q)
      outU[q] = 2.0 * Unode[q] - cm[q] + ka.dt * ka.dt * rhs[q];
  }
}

// midpoint update of the gauge-current time component at one node
void updateJ0Node(const AlgebraTables& tab, long node, double dt,
                  const double* AhalfNode, const double* phiHalfNode,
                  const SourceLevel& srcH, const Levels& lv, const std::vector<double>& WpG,
                  const std::vector<double>& UpG, const std::vector<double>& J0pG,
                  bool linearized, double* out) {
  const int n = tab.n, m = 2 * tab.d;
  double Wh[kMaxAlg * 4];
  double Uh[kMaxHiggs];
  for (int b = 0; b < 4; ++b)
    for (int q = 0; q < n; ++q)
      Wh[b * n + q] =
          0.5 * (lv.Wc[(node * 4 + b) * n + q] + WpG[(node * 4 + b) * n + q]);
  for (int q = 0; q < m; ++q) Uh[q] = 0.5 * (lv.Uc[node * m + q] + UpG[node * m + q]);
  double J0h[kMaxAlg];
  for (int q = 0; q < n; ++q)
    J0h[q] = 0.5 * (lv.J0c[node * n + q] + J0pG[node * n + q]);

  double rhs[kMaxAlg] = {0};
  // -[A_0, J0] - [W_0, J0]
  double a0[kMaxAlg];
  for (int q = 0; q < n; ++q) a0[q] = AhalfNode[q];  // component 0 stored first
  tab.bracketAcc(a0, J0h, rhs, -1.0);
  if (!linearized) tab.bracketAcc(Wh, J0h, rhs, -1.0);
  // +div J + [A_j, J_j] (+ [W_j, J_j])
  const double* divj = srcH.divJ.data() + node * n;
  for (int q = 0; q < n; ++q) rhs[q] += divj[q];
  for (int jj = 0; jj < 3; ++jj) {
    const double* jsrc = srcH.J.data() + (node * 3 + jj) * n;
    tab.bracketAcc(AhalfNode + (jj + 1) * n, jsrc, rhs, 1.0);
    if (!linearized) tab.bracketAcc(Wh + (jj + 1) * n, jsrc, rhs, 1.0);
  }
  // +coupling(F, U) + coupling(F, phi)
  const double* fs = srcH.F.data() + node * m;
  if (!linearized) tab.couplingAcc(fs, Uh, rhs, 1.0);
  tab.couplingAcc(fs, phiHalfNode, rhs, 1.0);

  for (int q = 0; q < n; ++q) out[q] = lv.J0c[node * n + q] + dt * rhs[q];
}

EvolutionResult evolve(const ConnectionField& A, const HiggsField& Phi,
                       const AlgebraTables& tab, const SourceSpec& src, const Grid& grid,
                       const EvolveOptions& opt, bool linearized) {
  grid.validate();
  if (A.spec != tab.spec) throw std::invalid_argument("evolve: GroupSpec mismatch");
  const long N = grid.nodes();
  const int n = tab.n, m = 2 * tab.d;
  const double dt = grid.dt(), dx = grid.dx();
  const int steps = grid.steps();
  const int nx = grid.nx;

  Levels lv;
  auto zeroW = [&] { return std::vector<double>(static_cast<std::size_t>(N) * 4 * n, 0.0); };
  auto zeroU = [&] { return std::vector<double>(static_cast<std::size_t>(N) * m, 0.0); };
  auto zeroJ = [&] { return std::vector<double>(static_cast<std::size_t>(N) * n, 0.0); };
  lv.Wm = zeroW();
  lv.Wc = zeroW();
  lv.WpA = zeroW();
  lv.WpB = zeroW();
  lv.Um = zeroU();
  lv.Uc = zeroU();
  lv.UpA = zeroU();
  lv.UpB = zeroU();
  lv.J0m = zeroJ();
  lv.J0c = zeroJ();
  lv.J0pA = zeroJ();
  lv.J0pB = zeroJ();

  std::vector<char> mask(static_cast<std::size_t>(N), 0);
  std::vector<char> maskNext(static_cast<std::size_t>(N), 0);

  BackgroundLevel bg, bgHalfLight;
  SourceLevel srcN, srcH;
  EvolutionResult res;
  res.grid = grid;

  int totalPicard = 0;
  double t = grid.t0;
  for (int stepIdx = 1; stepIdx <= steps; ++stepIdx) {
    // level n = stepIdx-th current; produce level at t + dt
    fillBackground(A, Phi, tab, grid, t, true, bg, opt.policy);
    fillSource(src, tab, grid, t, srcN, opt.policy);
    fillSource(src, tab, grid, t + 0.5 * dt, srcH, opt.policy);
    fillBackground(A, Phi, tab, grid, t + 0.5 * dt, false, bgHalfLight, opt.policy);

    KernelArgs ka;
    ka.g = &grid;
    ka.tab = &tab;
    ka.bg = &bg;
    ka.srcN = &srcN;
    ka.lv = &lv;
    ka.dt = dt;
    ka.dx = dx;
    ka.linearized = linearized;

    // initial guess: previous-level extrapolation
    lv.WpA = lv.Wc;
    lv.UpA = lv.Uc;
    lv.J0pA = lv.J0c;

    double change = 0;
    int it = 0;
    for (it = 0; it < opt.picardMax; ++it) {
      ka.WpGuess = &lv.WpA;
      ka.UpGuess = &lv.UpA;
      change = 0;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) reduction(max : change) \
    if (opt.policy == ExecPolicy::Parallel)
#endif
      for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < nx - 1; ++j)
          for (int k = 1; k < nx - 1; ++k) {
            long node = grid.index(i, j, k);
            double outW[4 * kMaxAlg];
            double outU[kMaxHiggs];
            updateNode(ka, i, j, k, outW, outU);
            double localChange = 0;
            for (int b = 0; b < 4; ++b)
              for (int q = 0; q < n; ++q) {
                double& dst = lv.WpB[(node * 4 + b) * n + q];
                double nv = outW[b * n + q];
                localChange = std::max(localChange, std::abs(nv - lv.WpA[(node * 4 + b) * n + q]));
                dst = nv;
              }
            for (int q = 0; q < m; ++q) {
              double nv = outU[q];
              localChange = std::max(localChange, std::abs(nv - lv.UpA[node * m + q]));
              lv.UpB[node * m + q] = nv;
            }
            double outJ[kMaxAlg];
            updateJ0Node(tab, node, dt, bgHalfLight.A.data() + node * 4 * n,
                         bgHalfLight.phi.data() + node * m, srcH, lv, lv.WpB, lv.UpB,
                         lv.J0pA, linearized, outJ);
            for (int q = 0; q < n; ++q) {
              localChange = std::max(localChange, std::abs(outJ[q] - lv.J0pA[node * n + q]));
              lv.J0pB[node * n + q] = outJ[q];
            }
            change = std::max(change, localChange);
          }
      std::swap(lv.WpA, lv.WpB);
      std::swap(lv.UpA, lv.UpB);
      std::swap(lv.J0pA, lv.J0pB);
      ++totalPicard;
      if (change <= opt.picardTol) break;
      if (!std::isfinite(change) || change > 1e6)
        throw std::runtime_error("evolve: fixed-point divergence (source amplitude too large)");
    }

    // influence mask: dilate by the stencil and add active sources
    if (opt.trackInfluenceMask) {
#ifdef _OPENMP
#pragma omp parallel for collapse(2) if (opt.policy == ExecPolicy::Parallel)
#endif
      for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nx; ++j)
          for (int k = 0; k < nx; ++k) {
            long node = grid.index(i, j, k);
            char v = mask[static_cast<std::size_t>(node)];
            if (!v) {
              if (i > 0 && mask[static_cast<std::size_t>(grid.index(i - 1, j, k))]) v = 1;
              else if (i < nx - 1 && mask[static_cast<std::size_t>(grid.index(i + 1, j, k))]) v = 1;
              else if (j > 0 && mask[static_cast<std::size_t>(grid.index(i, j - 1, k))]) v = 1;
              else if (j < nx - 1 && mask[static_cast<std::size_t>(grid.index(i, j + 1, k))]) v = 1;
              else if (k > 0 && mask[static_cast<std::size_t>(grid.index(i, j, k - 1))]) v = 1;
              else if (k < nx - 1 && mask[static_cast<std::size_t>(grid.index(i, j, k + 1))]) v = 1;
            }
            if (!v && (srcN.active[static_cast<std::size_t>(node)] ||
                       srcH.active[static_cast<std::size_t>(node)]))
              v = 1;
            maskNext[static_cast<std::size_t>(node)] = v;
          }
      std::swap(mask, maskNext);
    }

    // rotate levels
    std::swap(lv.Wm, lv.Wc);
    std::swap(lv.Wc, lv.WpA);
    std::swap(lv.Um, lv.Uc);
    std::swap(lv.Uc, lv.UpA);
    std::swap(lv.J0m, lv.J0c);
    std::swap(lv.J0c, lv.J0pA);
    t += dt;
  }

  res.tFinal = t;
  res.current.w = lv.Wc;
  res.current.u = lv.Uc;
  res.current.j0 = lv.J0c;
  res.previous.w = lv.Wm;
  res.previous.u = lv.Um;
  res.previous.j0 = lv.J0m;
  res.j0TwoBack = lv.J0pA;  // after the final rotation this holds level n-2
  res.influence = mask;
  res.totalPicardIterations = totalPicard;

  if (opt.trackInfluenceMask) {
    double worst = 0;
    for (long node = 0; node < N; ++node) {
      if (mask[static_cast<std::size_t>(node)]) continue;
      for (int b = 0; b < 4; ++b)
        for (int q = 0; q < n; ++q)
          worst = std::max(worst, std::abs(lv.Wc[(node * 4 + b) * n + q]));
      for (int q = 0; q < m; ++q)
        worst = std::max(worst, std::abs(lv.Uc[node * m + q]));
      for (int q = 0; q < n; ++q)
        worst = std::max(worst, std::abs(lv.J0c[node * n + q]));
    }
    res.maxAbsOutsideInfluence = worst;
  }
  return res;
}

}  // namespace

EvolutionResult solvePerturbed(const ConnectionField& A, const HiggsField& Phi,
                               const AlgebraTables& tab, const SourceSpec& src,
                               const Grid& grid, const EvolveOptions& opt) {
  return evolve(A, Phi, tab, src, grid, opt, false);
}

EvolutionResult solveLinearized(const ConnectionField& A, const HiggsField& Phi,
                                const AlgebraTables& tab, const SourceSpec& src,
                                const Grid& grid, const EvolveOptions& opt) {
  return evolve(A, Phi, tab, src, grid, opt, true);
}

// ---------------------------------------------------------------------------
// pointwise nonlinear terms on closed-form fields

namespace {

SpacetimePoint shifted(const SpacetimePoint& p, int a, double h) {
  SpacetimePoint q = p;
  q(a) += h;
  return q;
}

}  // namespace

NonlinearTerms evalNonlinearTerms(const ConnectionField& A, const HiggsField& Phi,
                                  const ConnectionField& W, const HiggsField& Upsilon,
                                  const RepSpec& rep, const SpacetimePoint& p, double h) {
  const GroupSpec& spec = A.spec;
  NonlinearTerms out{
      {AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec)},
      {AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec)},
      {AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec)},
      {AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec)},
      {AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec)},
      HiggsVector::Zero(Phi.dim),
      HiggsVector::Zero(Phi.dim),
      HiggsVector::Zero(Phi.dim)};

  AlgebraOneForm a = A.value(p);
  AlgebraOneForm w = W.value(p);
  std::array<AlgebraOneForm, 4> dw;
  for (int al = 0; al < 4; ++al) dw[static_cast<std::size_t>(al)] = W.deriv1(p, al);
  HiggsVector phi = Phi.value(p);
  HiggsVector ups = Upsilon.value(p);
  std::array<HiggsVector, 4> dphi, dups;
  for (int al = 0; al < 4; ++al) {
    dphi[static_cast<std::size_t>(al)] = Phi.deriv1(p, al);
    dups[static_cast<std::size_t>(al)] = Upsilon.deriv1(p, al);
  }
  (void)h;

  auto s = [](int al) { return metricDiag(al); };
  auto wof = [&](int al) -> const AlgebraElement& { return w[static_cast<std::size_t>(al)]; };
  auto aof = [&](int al) -> const AlgebraElement& { return a[static_cast<std::size_t>(al)]; };

  for (int b = 0; b < 4; ++b) {
    AlgebraElement quad(spec), cubic(spec);
    for (int al = 0; al < 4; ++al) {
      // 1/2 D_A^*[W,W]: -d^a[W_a, W_b] - [A^a, [W_a, W_b]]
      AlgebraElement ww = bracket(wof(al), wof(b));
      quad -= s(al) * (bracket(dw[static_cast<std::size_t>(al)][static_cast<std::size_t>(al)],
                               wof(b)) +
                       bracket(wof(al),
                               dw[static_cast<std::size_t>(al)][static_cast<std::size_t>(b)]) +
                       bracket(aof(al), ww));
      // star[W, star D_A W]: -[W^a, (D_A W)_ab]
      AlgebraElement daw =
          dw[static_cast<std::size_t>(al)][static_cast<std::size_t>(b)] -
          dw[static_cast<std::size_t>(b)][static_cast<std::size_t>(al)] +
          bracket(aof(al), wof(b)) - bracket(aof(b), wof(al));
      quad -= s(al) * bracket(wof(al), daw);
      // 1/2 star[W, star[W,W]]: -[W^a, [W_a, W_b]]
      cubic -= s(al) * bracket(wof(al), ww);
    }
    out.gaugeQuadratic[static_cast<std::size_t>(b)] = quad;
    out.gaugeCubic[static_cast<std::size_t>(b)] = cubic;

    HiggsVector dAUb = dups[static_cast<std::size_t>(b)] + rhoStar(aof(b), rep) * ups;
    HiggsVector dAPhib = dphi[static_cast<std::size_t>(b)] + rhoStar(aof(b), rep) * phi;
    out.mixed1[static_cast<std::size_t>(b)] =
        couplingForm(dAUb, phi, spec, rep) + couplingForm(dAPhib, ups, spec, rep) +
        couplingForm(rhoStar(wof(b), rep) * phi, phi, spec, rep);
    out.mixed2[static_cast<std::size_t>(b)] =
        couplingForm(dAUb, ups, spec, rep) +
        couplingForm(rhoStar(wof(b), rep) * ups, phi, spec, rep) +
        couplingForm(rhoStar(wof(b), rep) * phi, ups, spec, rep);
    out.mixed3[static_cast<std::size_t>(b)] =
        couplingForm(rhoStar(wof(b), rep) * ups, ups, spec, rep);
  }

  // Higgs channel
  HiggsVector n1 = HiggsVector::Zero(Phi.dim);
  HiggsVector n2 = HiggsVector::Zero(Phi.dim);
  HiggsVector n3 = HiggsVector::Zero(Phi.dim);
  for (int al = 0; al < 4; ++al) {
    Matrix rw = rhoStar(wof(al), rep);
    Matrix ra = rhoStar(aof(al), rep);
    Matrix rdw = rhoStar(dw[static_cast<std::size_t>(al)][static_cast<std::size_t>(al)], rep);
    HiggsVector dAPhi = dphi[static_cast<std::size_t>(al)] + ra * phi;
    HiggsVector dAUps = dups[static_cast<std::size_t>(al)] + ra * ups;
    // d_A^*(rho(W)phi) and the contraction term
    n1 += s(al) * (-(rdw * phi) - rw * dphi[static_cast<std::size_t>(al)] - ra * (rw * phi)) -
          s(al) * (rw * dAPhi);
    n2 += -s(al) * (rw * (rw * phi)) +
          s(al) * (-(rdw * ups) - rw * dups[static_cast<std::size_t>(al)] - ra * (rw * ups)) -
          s(al) * (rw * dAUps);
    n3 += -s(al) * (rw * (rw * ups));
  }
  double re = higgsInner(phi, ups).real();
  double p2 = higgsInner(phi, phi).real();
  double u2 = higgsInner(ups, ups).real();
  n1 += 2.0 * re * phi + (p2 - 1.0) * ups;
  n2 += 2.0 * re * ups + u2 * phi;
  n3 += u2 * ups;
  out.higgs1 = n1;
  out.higgs2 = n2;
  out.higgs3 = n3;
  return out;
}

// ---------------------------------------------------------------------------
// reduced temporal-gauge residuals

namespace {

struct ReducedOps {
  const ConnectionField* A;
  const HiggsField* Phi;
  const RepSpec* rep;
  double h;

  AlgebraElement Acomp(const SpacetimePoint& p, int j) const {
    return A->value(p)[static_cast<std::size_t>(j)];
  }
  AlgebraElement dAcomp(const SpacetimePoint& p, int a, int j) const {
    return (1.0 / (2.0 * h)) * (A->value(shifted(p, a, h))[static_cast<std::size_t>(j)] -
                                A->value(shifted(p, a, -h))[static_cast<std::size_t>(j)]);
  }
  HiggsVector dPhi(const SpacetimePoint& p, int a) const {
    return (Phi->value(shifted(p, a, h)) - Phi->value(shifted(p, a, -h))) / (2.0 * h);
  }
  AlgebraElement div(const SpacetimePoint& p) const {
    AlgebraElement out(A->spec);
    for (int j = 1; j < 4; ++j) out += dAcomp(p, j, j);
    return out;
  }
  AlgebraElement tildeN0(const SpacetimePoint& p) const {
    AlgebraElement out(A->spec);
    for (int j = 1; j < 4; ++j) out += bracket(Acomp(p, j), dAcomp(p, 0, j));
    out += couplingForm(dPhi(p, 0), Phi->value(p), A->spec, *rep);
    return out;
  }
  AlgebraElement tildeNj(const SpacetimePoint& p, int j) const {
    AlgebraElement out(A->spec);
    AlgebraElement dv = div(p);
    out -= bracket(dv, Acomp(p, j));
    for (int a = 1; a < 4; ++a) {
      out -= 2.0 * bracket(Acomp(p, a), dAcomp(p, a, j));
      out += bracket(Acomp(p, a), dAcomp(p, j, a));
      out -= bracket(Acomp(p, a), bracket(Acomp(p, a), Acomp(p, j)));
    }
    HiggsVector cov = dPhi(p, j) + rhoStar(Acomp(p, j), *rep) * Phi->value(p);
    out += couplingForm(cov, Phi->value(p), A->spec, *rep);
    return out;
  }
  AlgebraElement boxA(const SpacetimePoint& p, int j) const {
    // d_t^2 - Laplacian with width-h central stencils
    AlgebraElement out(A->spec);
    for (int a = 0; a < 4; ++a) {
      AlgebraElement second =
          (1.0 / (h * h)) *
          (A->value(shifted(p, a, h))[static_cast<std::size_t>(j)] -
           2.0 * Acomp(p, j) + A->value(shifted(p, a, -h))[static_cast<std::size_t>(j)]);
      out += (a == 0 ? 1.0 : -1.0) * second;
    }
    return out;
  }
  HiggsVector boxPhi(const SpacetimePoint& p) const {
    HiggsVector out = HiggsVector::Zero(Phi->dim);
    for (int a = 0; a < 4; ++a) {
      HiggsVector second = (Phi->value(shifted(p, a, h)) - 2.0 * Phi->value(p) +
                            Phi->value(shifted(p, a, -h))) /
                           (h * h);
      out += (a == 0 ? 1.0 : -1.0) * second;
    }
    return out;
  }
  // time-differentiated zero-order package of the Higgs channel
  HiggsVector higgsLower(const SpacetimePoint& p) const {
    HiggsVector phi = Phi->value(p);
    HiggsVector out = HiggsVector::Zero(Phi->dim);
    for (int a = 1; a < 4; ++a) {
      Matrix ra = rhoStar(Acomp(p, a), *rep);
      out += -2.0 * (ra * dPhi(p, a)) - ra * (ra * phi);
    }
    out += -(rhoStar(div(p), *rep) * phi);
    double s = higgsInner(phi, phi).real();
    out += (s - 1.0) * phi;
    return out;
  }
};

}  // namespace

ReducedResiduals reducedTemporalResiduals(const ConnectionField& A, const HiggsField& Phi,
                                          const RepSpec& rep,
                                          const std::vector<SpacetimePoint>& pts, double h,
                                          ExecPolicy policy) {
  // temporal-gauge check on a coarse probe
  for (const auto& p : pts) {
    if (A.value(p)[0].norm() > 1e-10)
      throw std::invalid_argument("reducedTemporalResiduals: connection not in temporal gauge");
    break;
  }
  ReducedOps ops{&A, &Phi, &rep, h};
  const int P = static_cast<int>(pts.size());
  std::vector<double> c(static_cast<std::size_t>(P)), ym(static_cast<std::size_t>(P)),
      hg(static_cast<std::size_t>(P)), el(static_cast<std::size_t>(P));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) if (policy == ExecPolicy::Parallel)
#endif
  for (int ip = 0; ip < P; ++ip) {
    const SpacetimePoint& p = pts[static_cast<std::size_t>(ip)];
    AlgebraOneForm Jexact = ymOperatorExact(A, Phi, rep, p);

    // constraint: d_0(div A) + N~_0 - J_0
    AlgebraElement ddiv =
        (1.0 / (2.0 * h)) * (ops.div(shifted(p, 0, h)) - ops.div(shifted(p, 0, -h)));
    c[static_cast<std::size_t>(ip)] = (ddiv + ops.tildeN0(p) - Jexact[0]).norm();

    // spatial reduced equations: d_j(div A) + box A_j + N~_j = J_j
    double worstYm = 0;
    for (int j = 1; j < 4; ++j) {
      AlgebraElement dj =
          (1.0 / (2.0 * h)) * (ops.div(shifted(p, j, h)) - ops.div(shifted(p, j, -h)));
      AlgebraElement r = dj + ops.boxA(p, j) + ops.tildeNj(p, j) -
                         Jexact[static_cast<std::size_t>(j)];
      worstYm = std::max(worstYm, r.norm());
    }
    ym[static_cast<std::size_t>(ip)] = worstYm;

    // Higgs channel differentiated in time
    auto lowerAt = [&](const SpacetimePoint& q) { return ops.higgsLower(q); };
    HiggsVector dtLower =
        (lowerAt(shifted(p, 0, h)) - lowerAt(shifted(p, 0, -h))) / (2.0 * h);
    auto boxPhiAt = [&](const SpacetimePoint& q) { return ops.boxPhi(q); };
    HiggsVector dtBox =
        (boxPhiAt(shifted(p, 0, h)) - boxPhiAt(shifted(p, 0, -h))) / (2.0 * h);
    auto fExact = [&](const SpacetimePoint& q) { return higgsOperatorExact(A, Phi, rep, q); };
    HiggsVector dtF = (fExact(shifted(p, 0, h)) - fExact(shifted(p, 0, -h))) / (2.0 * h);
    hg[static_cast<std::size_t>(ip)] = (dtBox + dtLower - dtF).norm();

    // discrete derivative-elimination identity
    double worstEl = 0;
    for (int j = 1; j < 4; ++j) {
      auto lhsYm = [&](const SpacetimePoint& q) {
        AlgebraElement dj =
            (1.0 / (2.0 * h)) * (ops.div(shifted(q, j, h)) - ops.div(shifted(q, j, -h)));
        return dj + ops.boxA(q, j) + ops.tildeNj(q, j);
      };
      auto lhsC = [&](const SpacetimePoint& q) {
        AlgebraElement dd =
            (1.0 / (2.0 * h)) * (ops.div(shifted(q, 0, h)) - ops.div(shifted(q, 0, -h)));
        return dd + ops.tildeN0(q);
      };
      AlgebraElement combo =
          (1.0 / (2.0 * h)) * (lhsYm(shifted(p, 0, h)) - lhsYm(shifted(p, 0, -h))) -
          (1.0 / (2.0 * h)) * (lhsC(shifted(p, j, h)) - lhsC(shifted(p, j, -h)));
      auto boxAAt = [&](const SpacetimePoint& q) { return ops.boxA(q, j); };
      AlgebraElement red2 =
          (1.0 / (2.0 * h)) * (boxAAt(shifted(p, 0, h)) - boxAAt(shifted(p, 0, -h))) +
          (1.0 / (2.0 * h)) * (ops.tildeNj(shifted(p, 0, h), j) -
                               ops.tildeNj(shifted(p, 0, -h), j)) -
          (1.0 / (2.0 * h)) *
              (ops.tildeN0(shifted(p, j, h)) - ops.tildeN0(shifted(p, j, -h)));
      worstEl = std::max(worstEl, (combo - red2).norm());
    }
    el[static_cast<std::size_t>(ip)] = worstEl;
  }

  ReducedResiduals out;
  for (int ip = 0; ip < P; ++ip) {
    out.constraint = std::max(out.constraint, c[static_cast<std::size_t>(ip)]);
    out.ymReduced = std::max(out.ymReduced, ym[static_cast<std::size_t>(ip)]);
    out.higgsReduced = std::max(out.higgsReduced, hg[static_cast<std::size_t>(ip)]);
    out.eliminationId = std::max(out.eliminationId, el[static_cast<std::size_t>(ip)]);
  }
  return out;
}

double evolvedCompatibilityResidual(const EvolutionResult& res, const ConnectionField& A,
                                    const HiggsField& Phi, const AlgebraTables& tab,
                                    const SourceSpec& src) {
  // evaluated over the source neighbourhood on a fixed probe lattice shared
  // by refinements of the same box (spacing 1/6), so refinement runs compare
  // the same functional
  const double regionRadius = 1.5 * src.radius;
  const double probeSpacing = 1.0 / 6.0;
  const Grid& g = res.grid;
  const int n = tab.n, m = 2 * tab.d;
  const double dt = g.dt();
  const double tEval = res.tFinal - dt;  // level F-1, centered difference over F and F-2
  const int nx = g.nx;

  BackgroundLevel bg;
  fillBackground(A, Phi, tab, g, tEval, false, bg, ExecPolicy::Parallel);
  SourceLevel srcL;
  fillSource(src, tab, g, tEval, srcL, ExecPolicy::Parallel);

  double worst = 0;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) reduction(max : worst)
#endif
  for (int i = 1; i < nx - 1; ++i)
    for (int j = 1; j < nx - 1; ++j)
      for (int k = 1; k < nx - 1; ++k) {
        long node = g.index(i, j, k);
        SpacetimePoint p = g.point(tEval, i, j, k);
        if ((p.tail<3>() - src.center).norm() > regionRadius) continue;
        bool onProbe = true;
        for (int c = 1; c <= 3; ++c) {
          double q = p(c) / probeSpacing;
          if (std::abs(q - std::lround(q)) > 1e-9) onProbe = false;
        }
        if (!onProbe) continue;
        double r[kMaxAlg];
        // centered time derivative of the gauge-current component
        for (int q = 0; q < n; ++q)
          r[q] = (res.current.j0[node * n + q] - res.j0TwoBack[node * n + q]) / (2.0 * dt);
        const double* j0 = res.previous.j0.data() + node * n;
        const double* a0 = bg.A.data() + node * 4 * n;
        const double* w0 = res.previous.w.data() + (node * 4 + 0) * n;
        tab.bracketAcc(a0, j0, r, 1.0);
        tab.bracketAcc(w0, j0, r, 1.0);
        const double* divj = srcL.divJ.data() + node * n;
        for (int q = 0; q < n; ++q) r[q] -= divj[q];
        for (int jj = 0; jj < 3; ++jj) {
          const double* js = srcL.J.data() + (node * 3 + jj) * n;
          tab.bracketAcc(a0 + (jj + 1) * n, js, r, -1.0);
          const double* wj = res.previous.w.data() + (node * 4 + jj + 1) * n;
          tab.bracketAcc(wj, js, r, -1.0);
        }
        const double* fs = srcL.F.data() + node * m;
        const double* uPrev = res.previous.u.data() + node * m;
        tab.couplingAcc(fs, uPrev, r, -1.0);
        tab.couplingAcc(fs, bg.phi.data() + node * m, r, -1.0);
        for (int q = 0; q < n; ++q) worst = std::max(worst, std::abs(r[q]));
      }
  return worst;
}

double logLogSlope(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2)
    throw std::invalid_argument("logLogSlope: need matching sample arrays");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double npts = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    double x = std::log(h[i]);
    double y = std::log(std::max(err[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
}

}  // namespace ymhlab
