#include "ymhlab/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace ymhlab {

namespace {

constexpr double kRankThreshold = 1e-8;  // relative to largest singular value
const Complex kI(0.0, 1.0);

Matrix pauli(int k) {
  Matrix m(2, 2);
  switch (k) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix gellMann(int k) {
  Matrix m = Matrix::Zero(3, 3);
  switch (k) {
    case 1: m(0, 1) = 1; m(1, 0) = 1; break;
    case 2: m(0, 1) = -kI; m(1, 0) = kI; break;
    case 3: m(0, 0) = 1; m(1, 1) = -1; break;
    case 4: m(0, 2) = 1; m(2, 0) = 1; break;
    case 5: m(0, 2) = -kI; m(2, 0) = kI; break;
    case 6: m(1, 2) = 1; m(2, 1) = 1; break;
    case 7: m(1, 2) = -kI; m(2, 1) = kI; break;
    default:
      m(0, 0) = 1; m(1, 1) = 1; m(2, 2) = -2;
      m /= std::sqrt(3.0);
      break;
  }
  return m;
}

int rankOf(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > kRankThreshold * s(0)) ++r;
  return r;
}

Eigen::MatrixXd realify(const Matrix& m) {
  // complex d x d as real 2d x 2d acting on [Re; Im]
  const int d = static_cast<int>(m.rows());
  Eigen::MatrixXd r(2 * d, 2 * d);
  r.topLeftCorner(d, d) = m.real();
  r.topRightCorner(d, d) = -m.imag();
  r.bottomLeftCorner(d, d) = m.imag();
  r.bottomRightCorner(d, d) = m.real();
  return r;
}

// columns indexed by algebra basis, rows by the real entries of rhoStar(E_i)
Eigen::MatrixXd stackedRhoStarMatrix(const GroupSpec& spec, const RepSpec& rep) {
  const auto basis = algebraBasis(spec);
  const int d = rep.dim(spec);
  Eigen::MatrixXd m(2 * d * d, static_cast<int>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Matrix r = rhoStar(basis[i], rep);
    Eigen::VectorXd col(2 * d * d);
    int at = 0;
    for (int c = 0; c < d; ++c)
      for (int rr = 0; rr < d; ++rr) {
        col(at) = r(rr, c).real();
        col(d * d + at) = r(rr, c).imag();
        ++at;
      }
    m.col(static_cast<int>(i)) = col;
  }
  return m;
}

}  // namespace

int factorMatrixDim(FactorKind k) {
  switch (k) {
    case FactorKind::U1: return 1;
    case FactorKind::SU2: return 2;
    default: return 3;
  }
}

int factorAlgebraDim(FactorKind k) {
  switch (k) {
    case FactorKind::U1: return 1;
    case FactorKind::SU2: return 3;
    default: return 8;
  }
}

GroupSpec::GroupSpec(std::vector<FactorKind> f, std::vector<double> w)
    : factors(std::move(f)), innerWeights(std::move(w)) {
  if (factors.empty()) throw std::invalid_argument("GroupSpec: needs at least one factor");
  if (innerWeights.empty()) innerWeights.assign(factors.size(), 1.0);
  if (innerWeights.size() != factors.size())
    throw std::invalid_argument("GroupSpec: one inner weight per factor");
  for (double v : innerWeights)
    if (!(v > 0.0)) throw std::invalid_argument("GroupSpec: inner weights must be positive");
}

int GroupSpec::algebraDim() const {
  int n = 0;
  for (auto k : factors) n += factorAlgebraDim(k);
  return n;
}

bool GroupSpec::operator==(const GroupSpec& o) const {
  return factors == o.factors && innerWeights == o.innerWeights;
}

AlgebraElement::AlgebraElement(const GroupSpec& s) : spec(s) {
  for (auto k : s.factors) {
    int d = factorMatrixDim(k);
    blocks.push_back(Matrix::Zero(d, d));
  }
}

void AlgebraElement::validate(double tol) const {
  if (blocks.size() != spec.factors.size())
    throw std::invalid_argument("AlgebraElement: block count mismatch");
  for (std::size_t f = 0; f < blocks.size(); ++f) {
    const Matrix& b = blocks[f];
    int d = factorMatrixDim(spec.factors[f]);
    if (b.rows() != d || b.cols() != d)
      throw std::invalid_argument("AlgebraElement: block size mismatch");
    if ((b + b.adjoint()).norm() > tol * std::max(1.0, b.norm()))
      throw std::invalid_argument("AlgebraElement: block not anti-Hermitian");
    if (spec.factors[f] != FactorKind::U1 && std::abs(b.trace()) > tol * std::max(1.0, b.norm()))
      throw std::invalid_argument("AlgebraElement: su block not traceless");
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (!sameSpec(o)) throw std::invalid_argument("AlgebraElement: GroupSpec mismatch");
  for (std::size_t f = 0; f < blocks.size(); ++f) blocks[f] += o.blocks[f];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (!sameSpec(o)) throw std::invalid_argument("AlgebraElement: GroupSpec mismatch");
  for (std::size_t f = 0; f < blocks.size(); ++f) blocks[f] -= o.blocks[f];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double c) {
  for (auto& b : blocks) b *= c;
  return *this;
}

double AlgebraElement::norm() const { return std::sqrt(std::max(0.0, adInner(*this, *this))); }

bool AlgebraElement::isZero(double tol) const {
  for (const auto& b : blocks)
    if (b.norm() > tol) return false;
  return true;
}

GroupElement GroupElement::identity(const GroupSpec& s) {
  GroupElement g;
  g.spec = s;
  for (auto k : s.factors) {
    int d = factorMatrixDim(k);
    g.blocks.push_back(Matrix::Identity(d, d));
  }
  return g;
}

void GroupElement::validate(double tol) const {
  for (std::size_t f = 0; f < blocks.size(); ++f) {
    const Matrix& b = blocks[f];
    int d = factorMatrixDim(spec.factors[f]);
    if (b.rows() != d || b.cols() != d)
      throw std::invalid_argument("GroupElement: block size mismatch");
    if ((b.adjoint() * b - Matrix::Identity(d, d)).norm() > tol)
      throw std::invalid_argument("GroupElement: block not unitary");
    if (spec.factors[f] != FactorKind::U1 &&
        std::abs(b.determinant() - Complex(1.0, 0.0)) > tol)
      throw std::invalid_argument("GroupElement: su block determinant not 1");
  }
}

GroupElement GroupElement::inverse() const {
  GroupElement g;
  g.spec = spec;
  for (const auto& b : blocks) g.blocks.push_back(b.adjoint());
  return g;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.spec != b.spec) throw std::invalid_argument("GroupElement: GroupSpec mismatch");
  GroupElement g;
  g.spec = a.spec;
  for (std::size_t f = 0; f < a.blocks.size(); ++f) g.blocks.push_back(a.blocks[f] * b.blocks[f]);
  return g;
}

double GroupElement::distanceTo(const GroupElement& o) const {
  double s = 0;
  for (std::size_t f = 0; f < blocks.size(); ++f) s += (blocks[f] - o.blocks[f]).squaredNorm();
  return std::sqrt(s);
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  if (!x.sameSpec(y)) throw std::invalid_argument("bracket: GroupSpec mismatch");
  AlgebraElement z(x.spec);
  for (std::size_t f = 0; f < x.blocks.size(); ++f)
    z.blocks[f] = x.blocks[f] * y.blocks[f] - y.blocks[f] * x.blocks[f];
  return z;
}

double adInner(const AlgebraElement& x, const AlgebraElement& y) {
  if (!x.sameSpec(y)) throw std::invalid_argument("adInner: GroupSpec mismatch");
  double s = 0;
  for (std::size_t f = 0; f < x.blocks.size(); ++f)
    s += x.spec.innerWeights[f] * (-(x.blocks[f] * y.blocks[f]).trace().real());
  return s;
}

GroupElement expMap(const AlgebraElement& x) {
  GroupElement g;
  g.spec = x.spec;
  for (std::size_t f = 0; f < x.blocks.size(); ++f) {
    const Matrix& b = x.blocks[f];
    if (b.rows() == 1) {
      Matrix e(1, 1);
      e(0, 0) = std::exp(b(0, 0));
      g.blocks.push_back(e);
    } else {
      // x = iH with H Hermitian; exponentiate through the eigensystem
      Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(-kI * b));
      Matrix e = es.eigenvectors() *
                 (kI * es.eigenvalues().array().cast<Complex>()).exp().matrix().asDiagonal() *
                 es.eigenvectors().adjoint();
      g.blocks.push_back(e);
    }
  }
  return g;
}

AlgebraElement adjointAction(const GroupElement& g, const AlgebraElement& x) {
  if (g.spec != x.spec) throw std::invalid_argument("adjointAction: GroupSpec mismatch");
  AlgebraElement z(x.spec);
  for (std::size_t f = 0; f < x.blocks.size(); ++f)
    z.blocks[f] = g.blocks[f] * x.blocks[f] * g.blocks[f].adjoint();
  return z;
}

std::vector<AlgebraElement> algebraBasis(const GroupSpec& spec) {
  std::vector<AlgebraElement> basis;
  for (std::size_t f = 0; f < spec.factors.size(); ++f) {
    switch (spec.factors[f]) {
      case FactorKind::U1: {
        AlgebraElement e(spec);
        e.blocks[f](0, 0) = kI;
        basis.push_back(e);
        break;
      }
      case FactorKind::SU2:
        for (int k = 1; k <= 3; ++k) {
          AlgebraElement e(spec);
          e.blocks[f] = 0.5 * kI * pauli(k);
          basis.push_back(e);
        }
        break;
      case FactorKind::SU3:
        for (int k = 1; k <= 8; ++k) {
          AlgebraElement e(spec);
          e.blocks[f] = 0.5 * kI * gellMann(k);
          basis.push_back(e);
        }
        break;
    }
  }
  return basis;
}

std::vector<double> algebraGramDiagonal(const GroupSpec& spec) {
  std::vector<double> g;
  for (std::size_t f = 0; f < spec.factors.size(); ++f) {
    double w = spec.innerWeights[f];
    int n = factorAlgebraDim(spec.factors[f]);
    double v = (spec.factors[f] == FactorKind::U1) ? w : 0.5 * w;
    for (int k = 0; k < n; ++k) g.push_back(v);
  }
  return g;
}

std::vector<bool> centreBasisMask(const GroupSpec& spec) {
  std::vector<bool> m;
  for (auto k : spec.factors) {
    int n = factorAlgebraDim(k);
    for (int i = 0; i < n; ++i) m.push_back(k == FactorKind::U1);
  }
  return m;
}

Eigen::VectorXd basisCoordinates(const AlgebraElement& x) {
  const auto basis = algebraBasis(x.spec);
  const auto gram = algebraGramDiagonal(x.spec);
  Eigen::VectorXd c(static_cast<int>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    c(static_cast<int>(i)) = adInner(x, basis[i]) / gram[i];
  return c;
}

AlgebraElement fromBasisCoordinates(const GroupSpec& spec, const Eigen::VectorXd& c) {
  const auto basis = algebraBasis(spec);
  if (c.size() != static_cast<int>(basis.size()))
    throw std::invalid_argument("fromBasisCoordinates: size mismatch");
  AlgebraElement x(spec);
  for (std::size_t i = 0; i < basis.size(); ++i) x += c(static_cast<int>(i)) * basis[i];
  return x;
}

std::pair<AlgebraElement, AlgebraElement> centreDecompose(const AlgebraElement& x) {
  AlgebraElement z(x.spec), perp(x.spec);
  for (std::size_t f = 0; f < x.blocks.size(); ++f) {
    if (x.spec.factors[f] == FactorKind::U1)
      z.blocks[f] = x.blocks[f];
    else
      perp.blocks[f] = x.blocks[f];
  }
  return {z, perp};
}

int RepSpec::dim(const GroupSpec& spec) const {
  switch (kind) {
    case Kind::Adjoint: return spec.algebraDim();
    case Kind::Inclusion: {
      int d = 0;
      for (auto k : spec.factors) d += factorMatrixDim(k);
      return d;
    }
    case Kind::Electroweak:
    case Kind::SMHiggs: return 2;
    case Kind::DirectSum: {
      int d = 0;
      for (const auto& s : summands) d += s.dim(spec);
      return d;
    }
  }
  return 0;
}

void RepSpec::validate(const GroupSpec& spec) const {
  switch (kind) {
    case Kind::Electroweak:
      if (spec.factors != std::vector<FactorKind>{FactorKind::SU2, FactorKind::U1})
        throw std::invalid_argument("Electroweak representation needs factors (SU2, U1)");
      break;
    case Kind::SMHiggs:
      if (spec.factors !=
          std::vector<FactorKind>{FactorKind::SU3, FactorKind::SU2, FactorKind::U1})
        throw std::invalid_argument("SMHiggs representation needs factors (SU3, SU2, U1)");
      break;
    case Kind::DirectSum:
      if (summands.empty()) throw std::invalid_argument("DirectSum needs summands");
      for (const auto& s : summands) s.validate(spec);
      break;
    default: break;
  }
}

namespace {

// Orthonormal algebra basis used to present the adjoint representation as a
// complex unitary representation on C^{dim g}.
std::vector<AlgebraElement> orthonormalBasis(const GroupSpec& spec) {
  auto basis = algebraBasis(spec);
  auto gram = algebraGramDiagonal(spec);
  for (std::size_t i = 0; i < basis.size(); ++i) basis[i] *= 1.0 / std::sqrt(gram[i]);
  return basis;
}

}  // namespace

Matrix rho(const GroupElement& g, const RepSpec& rep) {
  rep.validate(g.spec);
  switch (rep.kind) {
    case RepSpec::Kind::Inclusion: {
      int d = rep.dim(g.spec);
      Matrix m = Matrix::Zero(d, d);
      int at = 0;
      for (const auto& b : g.blocks) {
        int k = static_cast<int>(b.rows());
        m.block(at, at, k, k) = b;
        at += k;
      }
      return m;
    }
    case RepSpec::Kind::Adjoint: {
      const auto on = orthonormalBasis(g.spec);
      const int n = static_cast<int>(on.size());
      Matrix m(n, n);
      for (int j = 0; j < n; ++j) {
        AlgebraElement gj = adjointAction(g, on[j]);
        for (int i = 0; i < n; ++i) m(i, j) = adInner(on[i], gj);
      }
      return m;
    }
    case RepSpec::Kind::Electroweak: {
      Complex phase = std::pow(g.blocks[1](0, 0), rep.nY);
      return phase * g.blocks[0];
    }
    case RepSpec::Kind::SMHiggs: {
      Complex phase = std::pow(g.blocks[2](0, 0), rep.nY);
      return phase * g.blocks[1];
    }
    case RepSpec::Kind::DirectSum: {
      int d = rep.dim(g.spec);
      Matrix m = Matrix::Zero(d, d);
      int at = 0;
      for (const auto& s : rep.summands) {
        int k = s.dim(g.spec);
        m.block(at, at, k, k) = rho(g, s);
        at += k;
      }
      return m;
    }
  }
  throw std::logic_error("rho: unreachable");
}

Matrix rhoStar(const AlgebraElement& x, const RepSpec& rep) {
  rep.validate(x.spec);
  switch (rep.kind) {
    case RepSpec::Kind::Inclusion: {
      int d = rep.dim(x.spec);
      Matrix m = Matrix::Zero(d, d);
      int at = 0;
      for (const auto& b : x.blocks) {
        int k = static_cast<int>(b.rows());
        m.block(at, at, k, k) = b;
        at += k;
      }
      return m;
    }
    case RepSpec::Kind::Adjoint: {
      const auto on = orthonormalBasis(x.spec);
      const int n = static_cast<int>(on.size());
      Matrix m(n, n);
      for (int j = 0; j < n; ++j) {
        AlgebraElement xj = bracket(x, on[j]);
        for (int i = 0; i < n; ++i) m(i, j) = adInner(on[i], xj);
      }
      return m;
    }
    case RepSpec::Kind::Electroweak:
      return Matrix(x.blocks[0] +
                    Complex(static_cast<double>(rep.nY), 0.0) * x.blocks[1](0, 0) *
                        Matrix::Identity(2, 2));
    case RepSpec::Kind::SMHiggs:
      return Matrix(x.blocks[1] +
                    Complex(static_cast<double>(rep.nY), 0.0) * x.blocks[2](0, 0) *
                        Matrix::Identity(2, 2));
    case RepSpec::Kind::DirectSum: {
      int d = rep.dim(x.spec);
      Matrix m = Matrix::Zero(d, d);
      int at = 0;
      for (const auto& s : rep.summands) {
        int k = s.dim(x.spec);
        m.block(at, at, k, k) = rhoStar(x, s);
        at += k;
      }
      return m;
    }
  }
  throw std::logic_error("rhoStar: unreachable");
}

AlgebraElement couplingForm(const HiggsVector& v, const HiggsVector& w,
                            const GroupSpec& spec, const RepSpec& rep) {
  const int d = rep.dim(spec);
  if (v.size() != d || w.size() != d)
    throw std::invalid_argument("couplingForm: Higgs dimension mismatch");
  const auto basis = algebraBasis(spec);
  const auto gram = algebraGramDiagonal(spec);
  AlgebraElement out(spec);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double c = higgsInner(v, rhoStar(basis[i], rep) * w).real() / gram[i];
    out += c * basis[i];
  }
  return out;
}

double couplingFormResidual(const HiggsVector& v, const HiggsVector& w,
                            const GroupSpec& spec, const RepSpec& rep) {
  AlgebraElement j = couplingForm(v, w, spec, rep);
  const auto basis = algebraBasis(spec);
  double worst = 0;
  for (const auto& X : basis) {
    double lhs = higgsInner(v, rhoStar(X, rep) * w).real();
    double rhs = adInner(j, X);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

bool isFullyCharged(const GroupSpec& spec, const RepSpec& rep) {
  // stack rhoStar over the basis and ask for a trivial common kernel in W
  const auto basis = algebraBasis(spec);
  const int d = rep.dim(spec);
  Eigen::MatrixXd stacked(2 * d * static_cast<int>(basis.size()), 2 * d);
  for (std::size_t i = 0; i < basis.size(); ++i)
    stacked.middleRows(2 * d * static_cast<int>(i), 2 * d) = realify(rhoStar(basis[i], rep));
  return rankOf(stacked) == 2 * d;
}

int kernelDimRhoStar(const GroupSpec& spec, const RepSpec& rep) {
  Eigen::MatrixXd m = stackedRhoStarMatrix(spec, rep);
  return static_cast<int>(m.cols()) - rankOf(m);
}

bool isFaithfulRhoStar(const GroupSpec& spec, const RepSpec& rep) {
  return kernelDimRhoStar(spec, rep) == 0;
}

bool isFaithfulAdPlusRho(const GroupSpec& spec, const RepSpec& rep) {
  return kernelDimRhoStar(spec, RepSpec::DirectSum({RepSpec::Adjoint(), rep})) == 0;
}

bool centreMeetsKernelTrivially(const GroupSpec& spec, const RepSpec& rep) {
  const auto basis = algebraBasis(spec);
  const auto mask = centreBasisMask(spec);
  std::vector<int> idx;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (mask[i]) idx.push_back(static_cast<int>(i));
  if (idx.empty()) return true;
  Eigen::MatrixXd m = stackedRhoStarMatrix(spec, rep);
  Eigen::MatrixXd sub(m.rows(), static_cast<int>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<int>(c)) = m.col(idx[c]);
  return rankOf(sub) == static_cast<int>(idx.size());
}

std::vector<HiggsVector> realHiggsBasis(int d) {
  std::vector<HiggsVector> b;
  for (int i = 0; i < d; ++i) {
    HiggsVector v = HiggsVector::Zero(d);
    v(i) = 1.0;
    b.push_back(v);
  }
  for (int i = 0; i < d; ++i) {
    HiggsVector v = HiggsVector::Zero(d);
    v(i) = kI;
    b.push_back(v);
  }
  return b;
}

Eigen::VectorXd higgsToReal(const HiggsVector& v) {
  Eigen::VectorXd r(2 * v.size());
  r.head(v.size()) = v.real();
  r.tail(v.size()) = v.imag();
  return r;
}

HiggsVector higgsFromReal(const Eigen::VectorXd& r) {
  const int d = static_cast<int>(r.size()) / 2;
  HiggsVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(r(i), r(d + i));
  return v;
}

AlgebraElement randomAlgebraElement(const GroupSpec& spec, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  const auto basis = algebraBasis(spec);
  AlgebraElement x(spec);
  for (const auto& e : basis) x += dist(rng) * e;
  return x;
}

GroupElement randomGroupElement(const GroupSpec& spec, std::mt19937_64& rng, double scale) {
  return expMap(randomAlgebraElement(spec, rng, scale));
}

HiggsVector randomHiggsVector(int d, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  HiggsVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(dist(rng), dist(rng));
  return v;
}

}  // namespace ymhlab
