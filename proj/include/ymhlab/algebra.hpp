// Matrix Lie group/algebra kernels for products of U(1), SU(2), SU(3):
// block-structured algebra/group elements, representations and their
// derivatives, the Ad-invariant inner product, and the coupling form
// pairing the Higgs space with the gauge algebra.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ymhlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using HiggsVector = Eigen::VectorXcd;

inline Complex higgsInner(const HiggsVector& v, const HiggsVector& w) {
  return (v.adjoint() * w)(0);
}

enum class FactorKind { U1, SU2, SU3 };

int factorMatrixDim(FactorKind k);   // 1, 2, 3
int factorAlgebraDim(FactorKind k);  // 1, 3, 8

struct GroupSpec {
  std::vector<FactorKind> factors;
  std::vector<double> innerWeights;  // one positive weight per factor

  GroupSpec() = default;
  explicit GroupSpec(std::vector<FactorKind> f, std::vector<double> w = {});

  int factorCount() const { return static_cast<int>(factors.size()); }
  int algebraDim() const;

  bool operator==(const GroupSpec& o) const;
  bool operator!=(const GroupSpec& o) const { return !(*this == o); }

  static GroupSpec u1() { return GroupSpec({FactorKind::U1}); }
  static GroupSpec su2() { return GroupSpec({FactorKind::SU2}); }
  static GroupSpec su3() { return GroupSpec({FactorKind::SU3}); }
  static GroupSpec su2u1() { return GroupSpec({FactorKind::SU2, FactorKind::U1}); }
  static GroupSpec standardModel() {
    return GroupSpec({FactorKind::SU3, FactorKind::SU2, FactorKind::U1});
  }
};

// g-valued quantity, one anti-Hermitian block per factor (su blocks traceless).
struct AlgebraElement {
  GroupSpec spec;
  std::vector<Matrix> blocks;

  AlgebraElement() = default;
  explicit AlgebraElement(const GroupSpec& s);  // zero element

  void validate(double tol = 1e-12) const;
  bool sameSpec(const AlgebraElement& o) const { return spec == o.spec; }

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(double c);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(double c, AlgebraElement a) { return a *= c; }

  double norm() const;  // sqrt of adInner(x,x)
  bool isZero(double tol = 0.0) const;
};

// Unitary per-factor blocks; su blocks have unit determinant.
struct GroupElement {
  GroupSpec spec;
  std::vector<Matrix> blocks;

  GroupElement() = default;
  static GroupElement identity(const GroupSpec& s);

  void validate(double tol = 1e-10) const;
  GroupElement inverse() const;  // blockwise adjoint
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  double distanceTo(const GroupElement& o) const;
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
double adInner(const AlgebraElement& x, const AlgebraElement& y);
GroupElement expMap(const AlgebraElement& x);
AlgebraElement adjointAction(const GroupElement& g, const AlgebraElement& x);  // g x g^{-1}

// Fixed enumeration of the algebra basis: u(1): {i}; su(2): {i sigma_k/2};
// su(3): {i lambda_k/2} with the Gell-Mann matrices. Orthogonal w.r.t.
// adInner, with squared norms w_f (u(1)) and w_f/2 (su blocks).
std::vector<AlgebraElement> algebraBasis(const GroupSpec& spec);
std::vector<double> algebraGramDiagonal(const GroupSpec& spec);
// true for basis directions spanning the centre (the u(1) slots)
std::vector<bool> centreBasisMask(const GroupSpec& spec);

Eigen::VectorXd basisCoordinates(const AlgebraElement& x);
AlgebraElement fromBasisCoordinates(const GroupSpec& spec, const Eigen::VectorXd& c);

// x = z + perp with z in the centre and adInner(z, perp) = 0.
std::pair<AlgebraElement, AlgebraElement> centreDecompose(const AlgebraElement& x);

struct RepSpec {
  enum class Kind { Adjoint, Inclusion, Electroweak, SMHiggs, DirectSum };
  Kind kind = Kind::Inclusion;
  int nY = 0;                     // hypercharge integer for Electroweak/SMHiggs
  std::vector<RepSpec> summands;  // for DirectSum

  static RepSpec Adjoint() { return {Kind::Adjoint, 0, {}}; }
  static RepSpec Inclusion() { return {Kind::Inclusion, 0, {}}; }
  static RepSpec Electroweak(int n) { return {Kind::Electroweak, n, {}}; }
  static RepSpec SMHiggs(int n) { return {Kind::SMHiggs, n, {}}; }
  static RepSpec DirectSum(std::vector<RepSpec> s) { return {Kind::DirectSum, 0, std::move(s)}; }

  int dim(const GroupSpec& spec) const;
  void validate(const GroupSpec& spec) const;
};

Matrix rho(const GroupElement& g, const RepSpec& rep);
Matrix rhoStar(const AlgebraElement& x, const RepSpec& rep);

// Coupling form: the unique real-bilinear map W x W -> g with
// Re<v, rhoStar(X) w> = adInner(couplingForm(v,w), X) for every X.
AlgebraElement couplingForm(const HiggsVector& v, const HiggsVector& w,
                            const GroupSpec& spec, const RepSpec& rep);

// Largest defining-identity residual over the full algebra basis.
double couplingFormResidual(const HiggsVector& v, const HiggsVector& w,
                            const GroupSpec& spec, const RepSpec& rep);

// Rank decisions use singular values with relative threshold 1e-8.
bool isFullyCharged(const GroupSpec& spec, const RepSpec& rep);
int kernelDimRhoStar(const GroupSpec& spec, const RepSpec& rep);
bool isFaithfulRhoStar(const GroupSpec& spec, const RepSpec& rep);
bool isFaithfulAdPlusRho(const GroupSpec& spec, const RepSpec& rep);
// dim(Z(g) ∩ Ker rho_*) == 0
bool centreMeetsKernelTrivially(const GroupSpec& spec, const RepSpec& rep);

// W viewed as a real vector space: e_1..e_d, i e_1..i e_d.
std::vector<HiggsVector> realHiggsBasis(int d);
Eigen::VectorXd higgsToReal(const HiggsVector& v);
HiggsVector higgsFromReal(const Eigen::VectorXd& r);

AlgebraElement randomAlgebraElement(const GroupSpec& spec, std::mt19937_64& rng,
                                    double scale = 1.0);
GroupElement randomGroupElement(const GroupSpec& spec, std::mt19937_64& rng,
                                double scale = 1.0);
HiggsVector randomHiggsVector(int d, std::mt19937_64& rng, double scale = 1.0);

}  // namespace ymhlab
