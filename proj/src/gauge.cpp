#include "ymhlab/gauge.hpp"

#include <cmath>

namespace ymhlab {

namespace {

SpacetimePoint shifted(const SpacetimePoint& p, int a, double h) {
  SpacetimePoint q = p;
  q(a) += h;
  return q;
}

// project a raw finite-difference matrix back into the algebra block shape
AlgebraElement projectToAlgebra(const GroupSpec& spec, std::vector<Matrix> raw) {
  AlgebraElement out(spec);
  for (std::size_t f = 0; f < raw.size(); ++f) {
    Matrix m = 0.5 * (raw[f] - raw[f].adjoint().eval());
    if (spec.factors[f] != FactorKind::U1)
      m -= (m.trace() / static_cast<double>(m.rows())) * Matrix::Identity(m.rows(), m.cols());
    out.blocks[f] = m;
  }
  return out;
}

double metricDiag(int a) { return a == 0 ? -1.0 : 1.0; }

}  // namespace

AlgebraElement GaugeField::logDerivative(const SpacetimePoint& p, int a) const {
  if (dlog) return dlog(p, a);
  GroupElement up = value(shifted(p, a, fdStep));
  GroupElement um = value(shifted(p, a, -fdStep));
  GroupElement u = value(p);
  std::vector<Matrix> raw;
  for (std::size_t f = 0; f < u.blocks.size(); ++f)
    raw.push_back(u.blocks[f].adjoint() * (up.blocks[f] - um.blocks[f]) / (2.0 * fdStep));
  return projectToAlgebra(spec, std::move(raw));
}

GaugeField GaugeField::identity(const GroupSpec& s) {
  GaugeField g;
  g.spec = s;
  g.value = [s](const SpacetimePoint&) { return GroupElement::identity(s); };
  g.dlog = [s](const SpacetimePoint&, int) { return AlgebraElement(s); };
  return g;
}

GaugeField GaugeField::exponential(const AlgebraElement& X, const SepScalar& theta) {
  GaugeField g;
  g.spec = X.spec;
  g.value = [X, theta](const SpacetimePoint& p) { return expMap(theta.value(p) * X); };
  g.dlog = [X, theta](const SpacetimePoint& p, int a) { return theta.d1(p, a) * X; };
  return g;
}

GaugeField GaugeField::product(const GaugeField& U, const GaugeField& V) {
  if (U.spec != V.spec) throw std::invalid_argument("GaugeField::product: GroupSpec mismatch");
  GaugeField g;
  g.spec = U.spec;
  auto uv = U.value;
  auto vv = V.value;
  g.value = [uv, vv](const SpacetimePoint& p) { return uv(p) * vv(p); };
  if (U.dlog && V.dlog) {
    auto ud = U.dlog;
    auto vd = V.dlog;
    g.dlog = [uv, vv, ud, vd](const SpacetimePoint& p, int a) {
      GroupElement v = vv(p);
      (void)uv;
      return adjointAction(v.inverse(), ud(p, a)) + vd(p, a);
    };
  }
  return g;
}

std::pair<ConnectionField, HiggsField> applyGauge(const ConnectionField& A,
                                                  const HiggsField& Phi, const RepSpec& rep,
                                                  const GaugeField& U) {
  if (A.spec != U.spec) throw std::invalid_argument("applyGauge: GroupSpec mismatch");
  ConnectionField out;
  out.spec = A.spec;
  GaugeField Ucopy = U;
  ConnectionField Acopy = A;
  out.value = [Acopy, Ucopy](const SpacetimePoint& p) {
    GroupElement u = Ucopy.value(p);
    GroupElement uinv = u.inverse();
    AlgebraOneForm a = Acopy.value(p);
    AlgebraOneForm r;
    for (int b = 0; b < 4; ++b)
      r[static_cast<std::size_t>(b)] =
          Ucopy.logDerivative(p, b) + adjointAction(uinv, a[static_cast<std::size_t>(b)]);
    return r;
  };

  HiggsField hout;
  hout.dim = Phi.dim;
  HiggsField Pcopy = Phi;
  RepSpec repc = rep;
  hout.value = [Pcopy, Ucopy, repc](const SpacetimePoint& p) {
    return HiggsVector(rho(Ucopy.value(p).inverse(), repc) * Pcopy.value(p));
  };
  return {out, hout};
}

TemporalGaugeResult temporalGauge(const ConnectionField& V, const HiggsField& Psi,
                                  const RepSpec& rep, const TemporalGaugeOptions& opt) {
  GroupSpec spec = V.spec;
  ConnectionField Vc = V;
  double step = opt.odeStep;

  auto evalU = [Vc, spec, step](const SpacetimePoint& p) -> GroupElement {
    double t0 = spatialNorm(p) - 1.0;
    double t1 = p(0);
    GroupElement u = GroupElement::identity(spec);
    double span = t1 - t0;
    if (span == 0.0) return u;
    int n = std::max(8, static_cast<int>(std::ceil(std::abs(span) / step)));
    double h = span / n;
    SpacetimePoint q = p;
    const std::size_t nf = u.blocks.size();
    for (int k = 0; k < n; ++k) {
      double t = t0 + k * h;
      q(0) = t;
      AlgebraElement a1 = Vc.value(q)[0];
      q(0) = t + 0.5 * h;
      AlgebraElement a2 = Vc.value(q)[0];
      q(0) = t + h;
      AlgebraElement a4 = Vc.value(q)[0];
      for (std::size_t f = 0; f < nf; ++f) {
        const Matrix& uf = u.blocks[f];
        Matrix k1 = -a1.blocks[f] * uf;
        Matrix k2 = -a2.blocks[f] * (uf + 0.5 * h * k1);
        Matrix k3 = -a2.blocks[f] * (uf + 0.5 * h * k2);
        Matrix k4 = -a4.blocks[f] * (uf + h * k3);
        u.blocks[f] = uf + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
    return u;
  };

  GaugeField U;
  U.spec = spec;
  U.fdStep = opt.fdStep;
  U.value = evalU;
  double fd = opt.fdStep;
  U.dlog = [evalU, Vc, spec, fd](const SpacetimePoint& p, int a) -> AlgebraElement {
    GroupElement u = evalU(p);
    if (a == 0) {
      // dU/dt = -V_0 U, so U^{-1} dU/dt = -Ad_{U^{-1}} V_0
      return -1.0 * adjointAction(u.inverse(), Vc.value(p)[0]);
    }
    SpacetimePoint pp = p, pm = p;
    pp(a) += fd;
    pm(a) -= fd;
    GroupElement up = evalU(pp), um = evalU(pm);
    std::vector<Matrix> raw;
    for (std::size_t f = 0; f < u.blocks.size(); ++f)
      raw.push_back(u.blocks[f].adjoint() * (up.blocks[f] - um.blocks[f]) / (2.0 * fd));
    return projectToAlgebra(spec, std::move(raw));
  };

  auto [Aout, PhiOut] = applyGauge(V, Psi, rep, U);
  return {U, Aout, PhiOut};
}

int twoFormIndex(int a, int b) {
  static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  int v = table[a][b];
  if (v < 0) throw std::invalid_argument("twoFormIndex: equal indices");
  return v;
}

AlgebraTwoForm curvature(const ConnectionField& A, const SpacetimePoint& p) {
  AlgebraTwoForm F{AlgebraElement(A.spec), AlgebraElement(A.spec), AlgebraElement(A.spec),
                   AlgebraElement(A.spec), AlgebraElement(A.spec), AlgebraElement(A.spec)};
  AlgebraOneForm a = A.value(p);
  std::array<AlgebraOneForm, 4> dA;
  for (int c = 0; c < 4; ++c) dA[static_cast<std::size_t>(c)] = A.deriv1(p, c);
  int at = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      F[static_cast<std::size_t>(at)] =
          dA[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
          dA[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] +
          bracket(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
      ++at;
    }
  return F;
}

AlgebraElement coDifferentialOneForm(const ConnectionField& A, const ConnectionField& J,
                                     const SpacetimePoint& p, double h) {
  AlgebraElement out(A.spec);
  AlgebraOneForm a = A.value(p);
  AlgebraOneForm j = J.value(p);
  for (int c = 0; c < 4; ++c) {
    AlgebraElement dj =
        (1.0 / (2.0 * h)) *
        (J.value(shifted(p, c, h))[static_cast<std::size_t>(c)] -
         J.value(shifted(p, c, -h))[static_cast<std::size_t>(c)]);
    out += metricDiag(c) * (-1.0) * (dj + bracket(a[static_cast<std::size_t>(c)],
                                                  j[static_cast<std::size_t>(c)]));
  }
  return out;
}

namespace {

// exact partial of the curvature component F_{cb}
AlgebraElement curvatureDerivExact(const ConnectionField& A, const SpacetimePoint& p, int a,
                                   int c, int b) {
  AlgebraOneForm d2c = A.deriv2(p, a, c);
  AlgebraOneForm d2b = A.deriv2(p, a, b);
  AlgebraOneForm d1a = A.deriv1(p, a);
  AlgebraOneForm v = A.value(p);
  return d2c[static_cast<std::size_t>(b)] - d2b[static_cast<std::size_t>(c)] +
         bracket(d1a[static_cast<std::size_t>(c)], v[static_cast<std::size_t>(b)]) +
         bracket(v[static_cast<std::size_t>(c)], d1a[static_cast<std::size_t>(b)]);
}

AlgebraElement curvatureComponent(const AlgebraTwoForm& F, int a, int b) {
  if (a == b) throw std::invalid_argument("curvatureComponent: equal indices");
  AlgebraElement v = F[static_cast<std::size_t>(twoFormIndex(a, b))];
  return (a < b) ? v : -1.0 * v;
}

}  // namespace

AlgebraOneForm coDifferentialCurvature(const ConnectionField& A, const SpacetimePoint& p,
                                       double h) {
  AlgebraOneForm out{AlgebraElement(A.spec), AlgebraElement(A.spec), AlgebraElement(A.spec),
                     AlgebraElement(A.spec)};
  AlgebraOneForm a = A.value(p);
  AlgebraTwoForm F = curvature(A, p);
  for (int b = 0; b < 4; ++b) {
    AlgebraElement acc(A.spec);
    for (int c = 0; c < 4; ++c) {
      if (c == b) continue;
      AlgebraTwoForm Fp = curvature(A, shifted(p, c, h));
      AlgebraTwoForm Fm = curvature(A, shifted(p, c, -h));
      AlgebraElement dF =
          (1.0 / (2.0 * h)) * (curvatureComponent(Fp, c, b) - curvatureComponent(Fm, c, b));
      acc += metricDiag(c) * (-1.0) *
             (dF + bracket(a[static_cast<std::size_t>(c)], curvatureComponent(F, c, b)));
    }
    out[static_cast<std::size_t>(b)] = acc;
  }
  return out;
}

HiggsVector covariantDerivative(const ConnectionField& A, const HiggsField& Phi,
                                const RepSpec& rep, const SpacetimePoint& p, int a) {
  return Phi.deriv1(p, a) + rhoStar(A.value(p)[static_cast<std::size_t>(a)], rep) * Phi.value(p);
}

AlgebraOneForm ymOperatorExact(const ConnectionField& A, const HiggsField& Phi,
                               const RepSpec& rep, const SpacetimePoint& p) {
  AlgebraOneForm out{AlgebraElement(A.spec), AlgebraElement(A.spec), AlgebraElement(A.spec),
                     AlgebraElement(A.spec)};
  AlgebraOneForm a = A.value(p);
  AlgebraTwoForm F = curvature(A, p);
  HiggsVector phi = Phi.value(p);
  for (int b = 0; b < 4; ++b) {
    AlgebraElement acc(A.spec);
    for (int c = 0; c < 4; ++c) {
      if (c == b) continue;
      AlgebraElement dF = curvatureDerivExact(A, p, c, c, b);
      acc += metricDiag(c) * (-1.0) *
             (dF + bracket(a[static_cast<std::size_t>(c)], curvatureComponent(F, c, b)));
    }
    acc += couplingForm(covariantDerivative(A, Phi, rep, p, b), phi, A.spec, rep);
    out[static_cast<std::size_t>(b)] = acc;
  }
  return out;
}

HiggsVector higgsOperatorExact(const ConnectionField& A, const HiggsField& Phi,
                               const RepSpec& rep, const SpacetimePoint& p) {
  AlgebraOneForm a = A.value(p);
  HiggsVector phi = Phi.value(p);
  HiggsVector acc = HiggsVector::Zero(phi.size());
  for (int c = 0; c < 4; ++c) {
    Matrix rs = rhoStar(a[static_cast<std::size_t>(c)], rep);
    Matrix rsd = rhoStar(A.deriv1(p, c)[static_cast<std::size_t>(c)], rep);
    acc -= metricDiag(c) * (Phi.deriv2(p, c, c) + rsd * phi + 2.0 * (rs * Phi.deriv1(p, c)) +
                            rs * (rs * phi));
  }
  double s = higgsInner(phi, phi).real();
  return acc + (s - 1.0) * phi;
}

AlgebraOneForm ymOperatorStencil(const ConnectionField& A, const HiggsField& Phi,
                                 const RepSpec& rep, const SpacetimePoint& p, double h) {
  AlgebraOneForm out = coDifferentialCurvature(A, p, h);
  HiggsVector phi = Phi.value(p);
  for (int b = 0; b < 4; ++b) {
    HiggsVector dphi = (Phi.value(shifted(p, b, h)) - Phi.value(shifted(p, b, -h))) / (2.0 * h);
    HiggsVector cov = dphi + rhoStar(A.value(p)[static_cast<std::size_t>(b)], rep) * phi;
    out[static_cast<std::size_t>(b)] += couplingForm(cov, phi, A.spec, rep);
  }
  return out;
}

HiggsVector higgsOperatorStencil(const ConnectionField& A, const HiggsField& Phi,
                                 const RepSpec& rep, const SpacetimePoint& p, double h) {
  auto covAt = [&](const SpacetimePoint& q, int c) -> HiggsVector {
    HiggsVector dphi = (Phi.value(shifted(q, c, h)) - Phi.value(shifted(q, c, -h))) / (2.0 * h);
    return dphi + rhoStar(A.value(q)[static_cast<std::size_t>(c)], rep) * Phi.value(q);
  };
  HiggsVector phi = Phi.value(p);
  HiggsVector acc = HiggsVector::Zero(phi.size());
  AlgebraOneForm a = A.value(p);
  for (int c = 0; c < 4; ++c) {
    HiggsVector d = (covAt(shifted(p, c, h), c) - covAt(shifted(p, c, -h), c)) / (2.0 * h);
    acc -= metricDiag(c) * (d + rhoStar(a[static_cast<std::size_t>(c)], rep) * covAt(p, c));
  }
  double s = higgsInner(phi, phi).real();
  return acc + (s - 1.0) * phi;
}

ConnectionField ymSourceField(const ConnectionField& A, const HiggsField& Phi,
                              const RepSpec& rep) {
  ConnectionField J;
  J.spec = A.spec;
  ConnectionField Ac = A;
  HiggsField Pc = Phi;
  RepSpec rc = rep;
  J.value = [Ac, Pc, rc](const SpacetimePoint& p) { return ymOperatorExact(Ac, Pc, rc, p); };
  return J;
}

HiggsField higgsSourceField(const ConnectionField& A, const HiggsField& Phi, const RepSpec& rep) {
  HiggsField F;
  F.dim = Phi.dim;
  ConnectionField Ac = A;
  HiggsField Pc = Phi;
  RepSpec rc = rep;
  F.value = [Ac, Pc, rc](const SpacetimePoint& p) { return higgsOperatorExact(Ac, Pc, rc, p); };
  return F;
}

std::vector<double> lorenzResidual(const ConnectionField& A, const ConnectionField& W,
                                   const std::vector<SpacetimePoint>& pts, double h) {
  std::vector<double> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(coDifferentialOneForm(A, W, p, h).norm());
  return out;
}

std::vector<double> compatibilityResidual(const ConnectionField& V, const HiggsField& Psi,
                                          const ConnectionField& J, const HiggsField& F,
                                          const RepSpec& rep,
                                          const std::vector<SpacetimePoint>& pts, double h) {
  std::vector<double> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    AlgebraElement lhs = coDifferentialOneForm(V, J, p, h);
    AlgebraElement rhs = couplingForm(F.value(p), Psi.value(p), V.spec, rep);
    out.push_back((lhs - rhs).norm());
  }
  return out;
}

std::vector<SpacetimePoint> sampleGrid(int perAxis, double halfWidthTime, double halfWidthSpace) {
  std::vector<SpacetimePoint> pts;
  pts.reserve(static_cast<std::size_t>(perAxis) * perAxis * perAxis * perAxis);
  auto coord = [perAxis](double hw, int i) {
    return perAxis == 1 ? 0.0 : -hw + 2.0 * hw * i / (perAxis - 1);
  };
  for (int it = 0; it < perAxis; ++it)
    for (int ix = 0; ix < perAxis; ++ix)
      for (int iy = 0; iy < perAxis; ++iy)
        for (int iz = 0; iz < perAxis; ++iz)
          pts.emplace_back(coord(halfWidthTime, it), coord(halfWidthSpace, ix),
                           coord(halfWidthSpace, iy), coord(halfWidthSpace, iz));
  return pts;
}

}  // namespace ymhlab
