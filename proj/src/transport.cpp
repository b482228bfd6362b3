#include "ymhlab/transport.hpp"

#include <cmath>

namespace ymhlab {

namespace {

// A(gamma')(t) along the ray, as an algebra element
AlgebraElement pairedConnection(const ConnectionField& A, const LightRay& ray, double t) {
  AlgebraOneForm a = A.value(ray.point(t));
  FourVector v = ray.velocity();
  AlgebraElement out(A.spec);
  for (int alpha = 0; alpha < 4; ++alpha) out += v(alpha) * a[static_cast<std::size_t>(alpha)];
  return out;
}

// RK4 for blockwise matrix ODE u' = -a(t) u with a(t) in the algebra.
GroupElement integrateGroup(const ConnectionField& A, const LightRay& ray, int nSteps) {
  GroupElement u = GroupElement::identity(A.spec);
  const double h = (ray.t2 - ray.t1) / nSteps;
  const std::size_t nf = u.blocks.size();
  for (int k = 0; k < nSteps; ++k) {
    double t = ray.t1 + k * h;
    AlgebraElement a1 = pairedConnection(A, ray, t);
    AlgebraElement a2 = pairedConnection(A, ray, t + 0.5 * h);
    AlgebraElement a4 = pairedConnection(A, ray, t + h);
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
}

double unitarityDefectOf(const GroupElement& g) {
  double worst = 0;
  for (const auto& b : g.blocks)
    worst = std::max(worst, (b.adjoint() * b - Matrix::Identity(b.rows(), b.cols())).norm());
  return worst;
}

Matrix integrateRep(const ConnectionField& A, const RepSpec& rep, const LightRay& ray,
                    int nSteps) {
  const int d = rep.dim(A.spec);
  Matrix u = Matrix::Identity(d, d);
  const double h = (ray.t2 - ray.t1) / nSteps;
  for (int k = 0; k < nSteps; ++k) {
    double t = ray.t1 + k * h;
    Matrix a1 = rhoStar(pairedConnection(A, ray, t), rep);
    Matrix a2 = rhoStar(pairedConnection(A, ray, t + 0.5 * h), rep);
    Matrix a4 = rhoStar(pairedConnection(A, ray, t + h), rep);
    Matrix k1 = -a1 * u;
    Matrix k2 = -a2 * (u + 0.5 * h * k1);
    Matrix k3 = -a2 * (u + 0.5 * h * k2);
    Matrix k4 = -a4 * (u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

Eigen::MatrixXd realify(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  Eigen::MatrixXd r(2 * d, 2 * d);
  r.topLeftCorner(d, d) = m.real();
  r.topRightCorner(d, d) = -m.imag();
  r.bottomLeftCorner(d, d) = m.imag();
  r.bottomRightCorner(d, d) = m.real();
  return r;
}

// ad matrix of a in basis coordinates
Eigen::MatrixXd adMatrix(const AlgebraElement& a) {
  const auto basis = algebraBasis(a.spec);
  const auto gram = algebraGramDiagonal(a.spec);
  const int n = static_cast<int>(basis.size());
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) {
    AlgebraElement bj = bracket(a, basis[static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i)
      m(i, j) = adInner(bj, basis[static_cast<std::size_t>(i)]) / gram[static_cast<std::size_t>(i)];
  }
  return m;
}

// columns: couplingForm(pRho * e_j, phi) in basis coordinates
Eigen::MatrixXd couplingColumns(const GroupSpec& spec, const RepSpec& rep, const Matrix& pRho,
                                const HiggsVector& phi) {
  const int d = static_cast<int>(phi.size());
  const auto basis = realHiggsBasis(d);
  Eigen::MatrixXd m(spec.algebraDim(), 2 * d);
  for (int j = 0; j < 2 * d; ++j) {
    HiggsVector v = pRho * basis[static_cast<std::size_t>(j)];
    m.col(j) = basisCoordinates(couplingForm(v, phi, spec, rep));
  }
  return m;
}

struct CoupledState {
  Eigen::MatrixXd pAd;
  Eigen::MatrixXd b12;
  Matrix pRho;
};

CoupledState integrateCoupled(const ConnectionField& A, const HiggsField& Phi,
                              const RepSpec& rep, int beta, const LightRay& ray, int nSteps) {
  const int n = A.spec.algebraDim();
  const int d = rep.dim(A.spec);
  CoupledState s{Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Zero(n, 2 * d),
                 Matrix::Identity(d, d)};
  const double h = (ray.t2 - ray.t1) / nSteps;
  const double gdotBeta = ray.direction(beta);  // lowered velocity component

  struct Deriv {
    Eigen::MatrixXd dAd, dB;
    Matrix dRho;
  };
  auto rhs = [&](double t, const CoupledState& st) -> Deriv {
    AlgebraElement a = pairedConnection(A, ray, t);
    Eigen::MatrixXd ad = adMatrix(a);
    Matrix rs = rhoStar(a, rep);
    HiggsVector phi = Phi.value(ray.point(t));
    Eigen::MatrixXd cc = couplingColumns(A.spec, rep, st.pRho, phi);
    Deriv dd;
    dd.dAd = -ad * st.pAd;
    dd.dB = -ad * st.b12 - 0.5 * gdotBeta * cc;
    dd.dRho = -rs * st.pRho;
    return dd;
  };

  for (int k = 0; k < nSteps; ++k) {
    double t = ray.t1 + k * h;
    Deriv k1 = rhs(t, s);
    CoupledState s2{s.pAd + 0.5 * h * k1.dAd, s.b12 + 0.5 * h * k1.dB, s.pRho + 0.5 * h * k1.dRho};
    Deriv k2 = rhs(t + 0.5 * h, s2);
    CoupledState s3{s.pAd + 0.5 * h * k2.dAd, s.b12 + 0.5 * h * k2.dB, s.pRho + 0.5 * h * k2.dRho};
    Deriv k3 = rhs(t + 0.5 * h, s3);
    CoupledState s4{s.pAd + h * k3.dAd, s.b12 + h * k3.dB, s.pRho + h * k3.dRho};
    Deriv k4 = rhs(t + h, s4);
    s.pAd += (h / 6.0) * (k1.dAd + 2 * k2.dAd + 2 * k3.dAd + k4.dAd);
    s.b12 += (h / 6.0) * (k1.dB + 2 * k2.dB + 2 * k3.dB + k4.dB);
    s.pRho += (h / 6.0) * (k1.dRho + 2 * k2.dRho + 2 * k3.dRho + k4.dRho);
  }
  return s;
}

double coupledDiff(const CoupledState& a, const CoupledState& b) {
  return std::max({(a.pAd - b.pAd).norm(), (a.b12 - b.b12).norm(), (a.pRho - b.pRho).norm()});
}

}  // namespace

GroupElement transportGroup(const ConnectionField& A, const LightRay& ray,
                            const TransportOptions& opt) {
  ray.validate();
  int n = opt.initialSteps;
  GroupElement prev = integrateGroup(A, ray, n);
  while (n < opt.maxSteps) {
    GroupElement next = integrateGroup(A, ray, 2 * n);
    if (prev.distanceTo(next) <= 0.5 * opt.tol && unitarityDefectOf(next) <= opt.tol) return next;
    prev = next;
    n *= 2;
  }
  if (unitarityDefectOf(prev) <= opt.tol) return prev;
  throw std::runtime_error("transportGroup: integrator did not converge");
}

Matrix transportRep(const ConnectionField& A, const RepSpec& rep, const LightRay& ray,
                    const TransportOptions& opt) {
  ray.validate();
  int n = opt.initialSteps;
  Matrix prev = integrateRep(A, rep, ray, n);
  while (n < opt.maxSteps) {
    Matrix next = integrateRep(A, rep, ray, 2 * n);
    double defect =
        (next.adjoint() * next - Matrix::Identity(next.rows(), next.cols())).norm();
    if ((prev - next).norm() <= 0.5 * opt.tol && defect <= opt.tol) return next;
    prev = next;
    n *= 2;
  }
  throw std::runtime_error("transportRep: integrator did not converge");
}

AlgebraElement BlockTransport::applyAd(const AlgebraElement& w) const {
  return fromBasisCoordinates(spec, pAd * basisCoordinates(w));
}

AlgebraElement BlockTransport::applyBlock12(const HiggsVector& v) const {
  return fromBasisCoordinates(spec, block12 * higgsToReal(v));
}

HiggsVector BlockTransport::applyRho(const HiggsVector& v) const { return pRho * v; }

BlockTransport BlockTransport::composeAfter(const BlockTransport& first) const {
  if (beta != first.beta) throw std::invalid_argument("BlockTransport: beta mismatch");
  BlockTransport out = *this;
  out.pAd = pAd * first.pAd;
  out.block12 = pAd * first.block12 + block12 * realify(first.pRho);
  out.pRho = pRho * first.pRho;
  return out;
}

double BlockTransport::orthogonalityDefect() const {
  const auto gram = algebraGramDiagonal(spec);
  Eigen::VectorXd g(static_cast<int>(gram.size()));
  for (std::size_t i = 0; i < gram.size(); ++i) g(static_cast<int>(i)) = gram[i];
  Eigen::MatrixXd G = g.asDiagonal();
  return (pAd.transpose() * G * pAd - G).norm();
}

double BlockTransport::unitarityDefect() const {
  return (pRho.adjoint() * pRho - Matrix::Identity(pRho.rows(), pRho.cols())).norm();
}

BlockTransport coupledTransport(const ConnectionField& A, const HiggsField& Phi,
                                const RepSpec& rep, int beta, const LightRay& ray,
                                const TransportOptions& opt) {
  ray.validate();
  if (beta < 0 || beta > 3) throw std::invalid_argument("coupledTransport: beta out of range");
  int n = opt.initialSteps;
  CoupledState prev = integrateCoupled(A, Phi, rep, beta, ray, n);
  while (n < opt.maxSteps) {
    CoupledState next = integrateCoupled(A, Phi, rep, beta, ray, 2 * n);
    if (coupledDiff(prev, next) <= 0.5 * opt.tol) {
      BlockTransport out{A.spec, rep, beta, next.pAd, next.b12, next.pRho};
      if (out.unitarityDefect() > opt.tol)
        throw std::runtime_error("coupledTransport: unitarity defect above tolerance");
      return out;
    }
    prev = next;
    n *= 2;
  }
  throw std::runtime_error("coupledTransport: integrator did not converge");
}

BlockTransport coupledTransportViaAmbient(const ConnectionField& A, const HiggsField& Phi,
                                          const RepSpec& rep, int beta, const LightRay& ray,
                                          const TransportOptions& opt) {
  ray.validate();
  const int n = A.spec.algebraDim();
  const int d = rep.dim(A.spec);
  const int m = n + 2 * d;
  const double gdotBeta = ray.direction(beta);

  // generator of the combined connection paired with the velocity
  auto gen = [&](double t) -> Eigen::MatrixXd {
    AlgebraElement a = pairedConnection(A, ray, t);
    HiggsVector phi = Phi.value(ray.point(t));
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
    g.topLeftCorner(n, n) = adMatrix(a);
    g.topRightCorner(n, 2 * d) =
        0.5 * gdotBeta * couplingColumns(A.spec, rep, Matrix::Identity(d, d), phi);
    g.bottomRightCorner(2 * d, 2 * d) = realify(rhoStar(a, rep));
    return g;
  };

  auto integrate = [&](int steps) -> Eigen::MatrixXd {
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(m, m);
    const double h = (ray.t2 - ray.t1) / steps;
    for (int k = 0; k < steps; ++k) {
      double t = ray.t1 + k * h;
      Eigen::MatrixXd g1 = gen(t), g2 = gen(t + 0.5 * h), g4 = gen(t + h);
      Eigen::MatrixXd k1 = -g1 * u;
      Eigen::MatrixXd k2 = -g2 * (u + 0.5 * h * k1);
      Eigen::MatrixXd k3 = -g2 * (u + 0.5 * h * k2);
      Eigen::MatrixXd k4 = -g4 * (u + h * k3);
      u += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return u;
  };

  int steps = opt.initialSteps;
  Eigen::MatrixXd prev = integrate(steps);
  while (steps < opt.maxSteps) {
    Eigen::MatrixXd next = integrate(2 * steps);
    if ((prev - next).norm() <= 0.5 * opt.tol) {
      prev = next;
      break;
    }
    prev = next;
    steps *= 2;
  }
  BlockTransport out;
  out.spec = A.spec;
  out.rep = rep;
  out.beta = beta;
  out.pAd = prev.topLeftCorner(n, n);
  out.block12 = prev.topRightCorner(n, 2 * d);
  Eigen::MatrixXd rr = prev.bottomRightCorner(2 * d, 2 * d);
  Matrix pr(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) pr(r, c) = Complex(rr(r, c), rr(d + r, c));
  out.pRho = pr;
  double lowerLeft = prev.bottomLeftCorner(2 * d, n).norm();
  if (lowerLeft != 0.0)
    throw std::runtime_error("coupledTransportViaAmbient: lower-left block not zero");
  return out;
}

Eigen::MatrixXd duhamelBlock12(const ConnectionField& A, const HiggsField& Phi,
                               const RepSpec& rep, int beta, const LightRay& ray,
                               const TransportOptions& opt) {
  ray.validate();
  const int n = A.spec.algebraDim();
  const int d = rep.dim(A.spec);
  const double gdotBeta = ray.direction(beta);

  auto evaluate = [&](int steps) -> Eigen::MatrixXd {
    // march the group transport and Simpson-accumulate the weighted integrand
    GroupElement u = GroupElement::identity(A.spec);
    const double h = (ray.t2 - ray.t1) / steps;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, 2 * d);
    auto integrand = [&](const GroupElement& ut, double t) -> Eigen::MatrixXd {
      Matrix rinv = rho(ut.inverse(), rep);
      HiggsVector phi = rinv * Phi.value(ray.point(t));
      Eigen::MatrixXd m(n, 2 * d);
      const auto basis = realHiggsBasis(d);
      for (int j = 0; j < 2 * d; ++j)
        m.col(j) = basisCoordinates(
            couplingForm(basis[static_cast<std::size_t>(j)], phi, A.spec, rep));
      return m;
    };
    acc += integrand(u, ray.t1);
    const std::size_t nf = u.blocks.size();
    for (int k = 0; k < steps; ++k) {
      double t = ray.t1 + k * h;
      AlgebraElement a1 = pairedConnection(A, ray, t);
      AlgebraElement a2 = pairedConnection(A, ray, t + 0.5 * h);
      AlgebraElement a4 = pairedConnection(A, ray, t + h);
      for (std::size_t f = 0; f < nf; ++f) {
        const Matrix& uf = u.blocks[f];
        Matrix k1 = -a1.blocks[f] * uf;
        Matrix k2 = -a2.blocks[f] * (uf + 0.5 * h * k1);
        Matrix k3 = -a2.blocks[f] * (uf + 0.5 * h * k2);
        Matrix k4 = -a4.blocks[f] * (uf + h * k3);
        u.blocks[f] = uf + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      double w = (k + 1 == steps) ? 1.0 : ((k % 2 == 0) ? 4.0 : 2.0);
      // Simpson pattern over node values 1,4,2,4,...,2,4,1
      acc += w * integrand(u, t + h);
    }
    Eigen::MatrixXd integral = (h / 3.0) * acc;
    Eigen::MatrixXd pAd = Eigen::MatrixXd::Zero(n, n);
    {
      const auto basis = algebraBasis(A.spec);
      const auto gram = algebraGramDiagonal(A.spec);
      for (int j = 0; j < n; ++j) {
        AlgebraElement gj = adjointAction(u, basis[static_cast<std::size_t>(j)]);
        for (int i = 0; i < n; ++i)
          pAd(i, j) =
              adInner(gj, basis[static_cast<std::size_t>(i)]) / gram[static_cast<std::size_t>(i)];
      }
    }
    return Eigen::MatrixXd(-0.5 * gdotBeta * pAd * integral);
  };

  int steps = std::max(opt.initialSteps, 2);
  if (steps % 2) ++steps;
  Eigen::MatrixXd prev = evaluate(steps);
  while (steps < opt.maxSteps) {
    Eigen::MatrixXd next = evaluate(2 * steps);
    if ((prev - next).norm() <= 0.5 * opt.tol) return next;
    prev = next;
    steps *= 2;
  }
  return prev;
}

Matrix brokenTransform(const ConnectionField& A, const RepSpec& rep, const BrokenTriple& triple,
                       const TransportOptions& opt) {
  LightRay leg1 = LightRay::fromEndpoints(triple.x, triple.y);
  LightRay leg2 = LightRay::fromEndpoints(triple.y, triple.z);
  return transportRep(A, rep, leg2, opt) * transportRep(A, rep, leg1, opt);
}

HiggsVector solveCouplingSystem(const GroupSpec& spec, const RepSpec& rep,
                                const std::vector<AlgebraElement>& rhs) {
  const int d = rep.dim(spec);
  const auto wBasis = realHiggsBasis(d);
  if (rhs.size() != wBasis.size())
    throw std::invalid_argument("solveCouplingSystem: need one value per real basis vector");
  const auto gBasis = algebraBasis(spec);
  const int n = static_cast<int>(gBasis.size());

  // rows: (j, m) pairs; unknown: real coordinates of I
  Eigen::MatrixXd M(2 * d * n, 2 * d);
  Eigen::VectorXd b(2 * d * n);
  for (int j = 0; j < 2 * d; ++j) {
    for (int m = 0; m < n; ++m) {
      int row = j * n + m;
      b(row) = adInner(rhs[static_cast<std::size_t>(j)], gBasis[static_cast<std::size_t>(m)]);
      Matrix rs = rhoStar(gBasis[static_cast<std::size_t>(m)], rep);
      for (int c = 0; c < 2 * d; ++c) {
        HiggsVector e = wBasis[static_cast<std::size_t>(c)];
        M(row, c) = higgsInner(wBasis[static_cast<std::size_t>(j)], rs * e).real();
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw std::runtime_error("solveCouplingSystem: coupling form degenerate for this representation");
  Eigen::VectorXd x = svd.solve(b);
  return higgsFromReal(x);
}

HiggsReconstruction reconstructHiggs(const ConnectionField& A, const RepSpec& rep,
                                     const SpacetimePoint& z,
                                     const std::vector<RayFamilySample>& samples, double h,
                                     const TransportOptions& opt) {
  if (samples.size() < 3)
    throw std::invalid_argument("reconstructHiggs: need at least three samples");
  const int m = static_cast<int>(samples.size());
  const int d = rep.dim(A.spec);
  const auto wBasis = realHiggsBasis(d);

  // signed uniform spacing of the start times
  const double hs = samples[1].ty - samples[0].ty;
  if (std::abs(std::abs(hs) - h) > 1e-9 * std::max(1.0, h))
    throw std::invalid_argument("reconstructHiggs: sample spacing does not match h");
  for (int i = 2; i < m; ++i)
    if (std::abs(samples[static_cast<std::size_t>(i)].ty -
                 samples[static_cast<std::size_t>(i - 1)].ty - hs) > 1e-9 * std::abs(hs))
      throw std::invalid_argument("reconstructHiggs: samples not uniformly spaced");

  std::vector<HiggsVector> weighted(static_cast<std::size_t>(m));
  std::vector<Matrix> rhoU(static_cast<std::size_t>(m));

  for (int i = 0; i < m; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    const double tz = z(0);
    const double dt = tz - s.ty;
    if (!(dt > 0)) throw std::invalid_argument("reconstructHiggs: sample not in the past of z");
    const double gdotBeta = lowerIndex(z - s.y)(s.leg.beta);
    if (std::abs(gdotBeta) < 1e-12)
      throw std::invalid_argument("reconstructHiggs: degenerate beta component");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pAdInv(s.leg.pAd);
    std::vector<AlgebraElement> rhs;
    for (const auto& e : wBasis) {
      Eigen::VectorXd c = s.leg.block12 * higgsToReal(e);
      Eigen::VectorXd undone = pAdInv.solve(c);
      rhs.push_back(fromBasisCoordinates(A.spec, Eigen::VectorXd(-2.0 * dt / gdotBeta * undone)));
    }
    weighted[static_cast<std::size_t>(i)] = solveCouplingSystem(A.spec, rep, rhs);

    // trivialization anchored at z: transport from z back to the sample point
    LightRay back = LightRay::fromEndpoints(z, s.y);
    rhoU[static_cast<std::size_t>(i)] = transportRep(A, rep, back, opt);
  }

  // remove the moving frame, differentiate in ty, rotate back
  std::vector<HiggsVector> anchored(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    anchored[static_cast<std::size_t>(i)] =
        rhoU[static_cast<std::size_t>(i)].inverse() * weighted[static_cast<std::size_t>(i)];

  HiggsReconstruction out;
  for (int i = 0; i < m; ++i) {
    HiggsVector dIdt(d);
    if (i == 0)
      dIdt = (-3.0 * anchored[0] + 4.0 * anchored[1] - anchored[2]) / (2.0 * hs);
    else if (i == m - 1)
      dIdt = (3.0 * anchored[static_cast<std::size_t>(m - 1)] -
              4.0 * anchored[static_cast<std::size_t>(m - 2)] +
              anchored[static_cast<std::size_t>(m - 3)]) /
             (2.0 * hs);
    else
      dIdt = (anchored[static_cast<std::size_t>(i + 1)] -
              anchored[static_cast<std::size_t>(i - 1)]) /
             (2.0 * hs);
    out.points.push_back(samples[static_cast<std::size_t>(i)].y);
    out.values.push_back(-(rhoU[static_cast<std::size_t>(i)] * dIdt));
  }
  return out;
}

}  // namespace ymhlab
