#include "ymhlab/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ymhlab {

namespace {
constexpr double kLightlikeTol = 1e-12;

int permutationSign(const std::array<int, 4>& p) {
  int sign = 1;
  auto q = p;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (q[i] > q[j]) {
        std::swap(q[i], q[j]);
        sign = -sign;
      }
  for (int i = 0; i < 3; ++i)
    if (q[i] == q[i + 1]) return 0;
  return sign;
}

double metricDiag(int mu) { return mu == 0 ? -1.0 : 1.0; }
}  // namespace

double minkowskiPair(const Covector& a, const Covector& b) {
  return -a(0) * b(0) + a(1) * b(1) + a(2) * b(2) + a(3) * b(3);
}

FourVector raiseIndex(const Covector& xi) {
  FourVector v = xi;
  v(0) = -v(0);
  return v;
}

Covector lowerIndex(const FourVector& v) {
  Covector xi = v;
  xi(0) = -xi(0);
  return xi;
}

double sigmaBox(const Covector& xi) { return minkowskiPair(xi, xi); }

double sigmaBoxInverse(const Covector& xi) {
  double q = sigmaBox(xi);
  double n2 = xi.squaredNorm();
  if (std::abs(q) <= kLightlikeTol * std::max(1.0, n2))
    throw std::domain_error("sigmaBoxInverse: characteristic covector");
  return 1.0 / q;
}

bool inDiamond(const SpacetimePoint& p) {
  double a = spatialNorm(p);
  return a <= p(0) + 1.0 && a <= 1.0 - p(0);
}

bool inDiamondInterior(const SpacetimePoint& p) {
  double a = spatialNorm(p);
  return a < p(0) + 1.0 && a < 1.0 - p(0);
}

bool inObservationSet(const SpacetimePoint& p, double eps0) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw std::invalid_argument("inObservationSet: bad eps0");
  return inDiamondInterior(p) && spatialNorm(p) < eps0;
}

CausalRelation causalOrder(const SpacetimePoint& x, const SpacetimePoint& y) {
  FourVector d = y - x;
  double n2 = d.squaredNorm();
  if (n2 == 0.0) return CausalRelation::Equal;
  double q = minkowskiPair(lowerIndex(d), lowerIndex(d));
  if (q <= kLightlikeTol * n2) {  // timelike or lightlike
    return d(0) > 0 ? CausalRelation::Before : CausalRelation::After;
  }
  return CausalRelation::Spacelike;
}

void LightRay::validate(double tol) const {
  double n2 = direction.squaredNorm();
  if (n2 == 0.0) throw std::invalid_argument("LightRay: zero direction");
  if (std::abs(sigmaBox(direction)) > tol * n2)
    throw std::invalid_argument("LightRay: direction not lightlike");
}

LightRay LightRay::fromEndpoints(const SpacetimePoint& x, const SpacetimePoint& y) {
  LightRay r;
  r.base = x;
  r.direction = lowerIndex(y - x);
  r.t1 = 0.0;
  r.t2 = 1.0;
  r.validate();
  return r;
}

void BrokenTriple::validate(double eps0) const {
  LightRay::fromEndpoints(x, y);
  LightRay::fromEndpoints(y, z);
  if (causalOrder(x, y) != CausalRelation::Before || causalOrder(y, z) != CausalRelation::Before)
    throw std::invalid_argument("BrokenTriple: points not causally ordered");
  if (!inObservationSet(x, eps0) || !inObservationSet(z, eps0))
    throw std::invalid_argument("BrokenTriple: x, z must lie in the observation set");
  if (inObservationSet(y, eps0))
    throw std::invalid_argument("BrokenTriple: y must lie outside the observation set");
  if (!inDiamond(y)) throw std::invalid_argument("BrokenTriple: y outside the diamond");
}

KForm KForm::zero(int k) {
  if (k < 0 || k > 4) throw std::invalid_argument("KForm: invalid degree");
  KForm w;
  w.k = k;
  w.comp = Eigen::VectorXd::Zero(static_cast<int>(combos(k).size()));
  return w;
}

const std::vector<std::array<int, 4>>& KForm::combos(int k) {
  static const std::vector<std::vector<std::array<int, 4>>> tables = [] {
    std::vector<std::vector<std::array<int, 4>>> t(5);
    t[0] = {{ {0, 0, 0, 0} }};
    for (int a = 0; a < 4; ++a) t[1].push_back({a, 0, 0, 0});
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) t[2].push_back({a, b, 0, 0});
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        for (int c = b + 1; c < 4; ++c) t[3].push_back({a, b, c, 0});
    t[4] = {{ {0, 1, 2, 3} }};
    return t;
  }();
  if (k < 0 || k > 4) throw std::invalid_argument("KForm: invalid degree");
  return tables[static_cast<std::size_t>(k)];
}

KForm hodgeStar(const KForm& w) {
  if (w.k < 0 || w.k > 4) throw std::invalid_argument("hodgeStar: invalid degree");
  const int k = w.k;
  const int m = 4 - k;
  KForm out = KForm::zero(m);
  const auto& inCombos = KForm::combos(k);
  const auto& outCombos = KForm::combos(m);

  // full antisymmetric component lookup: sort the indices, track the sign
  auto component = [&](const std::array<int, 4>& idx, int deg) -> double {
    std::vector<int> v(idx.begin(), idx.begin() + deg);
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (v[i] > v[j]) {
          std::swap(v[i], v[j]);
          sign = -sign;
        }
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i] == v[i + 1]) return 0.0;
    for (std::size_t c = 0; c < inCombos.size(); ++c) {
      bool match = true;
      for (int i = 0; i < deg; ++i)
        if (inCombos[c][static_cast<std::size_t>(i)] != v[static_cast<std::size_t>(i)]) {
          match = false;
          break;
        }
      if (match) return sign * w.comp(static_cast<int>(c));
    }
    return 0.0;
  };

  for (std::size_t oc = 0; oc < outCombos.size(); ++oc) {
    double acc = 0.0;
    // iterate over all index tuples for the contracted slots
    int tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= 4;
    for (int t = 0; t < tuples; ++t) {
      std::array<int, 4> nu{0, 0, 0, 0};
      int tt = t;
      for (int i = 0; i < k; ++i) {
        nu[static_cast<std::size_t>(i)] = tt % 4;
        tt /= 4;
      }
      double raised = (k == 0) ? w.comp(0) : component(nu, k);
      if (raised == 0.0) continue;
      for (int i = 0; i < k; ++i) raised *= metricDiag(nu[static_cast<std::size_t>(i)]);
      std::array<int, 4> full{};
      for (int i = 0; i < k; ++i) full[static_cast<std::size_t>(i)] = nu[static_cast<std::size_t>(i)];
      for (int i = 0; i < m; ++i)
        full[static_cast<std::size_t>(k + i)] = outCombos[oc][static_cast<std::size_t>(i)];
      int eps = permutationSign(full);
      if (eps == 0) continue;
      acc += raised * eps;
    }
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    out.comp(static_cast<int>(oc)) = acc / fact;
  }
  return out;
}

int hodgeStarSquareSign(int k) {
  if (k < 0 || k > 4) throw std::invalid_argument("hodgeStarSquareSign: invalid degree");
  int s = ((k * (4 - k)) % 2 == 0) ? 1 : -1;
  return -s;  // Lorentzian signature contributes sgn(det g) = -1
}

Eigen::Vector3d splittingCoefficientsSolve(double r, double s) {
  // the system degenerates like s^2 as s -> 0; extended precision keeps the
  // absolute error of the large coefficients below 1e-10 over the sweep
  long double ar = sqrtl(1.0L - static_cast<long double>(r) * r);
  long double as = sqrtl(1.0L - static_cast<long double>(s) * s);
  long double m[3][4] = {{1.0L, 1.0L, 1.0L, 1.0L},
                         {1.0L, as, as, -ar},
                         {0.0L, static_cast<long double>(s), -static_cast<long double>(s),
                          static_cast<long double>(r)}};
  // Gaussian elimination with partial pivoting
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row)
      if (fabsl(m[row][col]) > fabsl(m[piv][col])) piv = row;
    for (int c = col; c < 4; ++c) std::swap(m[piv][c], m[col][c]);
    for (int row = col + 1; row < 3; ++row) {
      long double f = m[row][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[row][c] -= f * m[col][c];
    }
  }
  long double k[3];
  for (int row = 2; row >= 0; --row) {
    long double acc = m[row][3];
    for (int c = row + 1; c < 3; ++c) acc -= m[row][c] * k[c];
    k[row] = acc / m[row][row];
  }
  return {static_cast<double>(k[0]), static_cast<double>(k[1]), static_cast<double>(k[2])};
}

Eigen::Vector3d splittingCoefficientsClosedForm(double r, double s) {
  double ar = std::sqrt(1.0 - r * r);
  double as = std::sqrt(1.0 - s * s);
  double oneMinusAs = s * s / (1.0 + as);  // stable form of 1 - a(s)
  double k1 = 1.0 - (1.0 + ar) / oneMinusAs;
  double k2 = (1.0 + ar) / (2.0 * oneMinusAs) + 0.5 * r / s;
  double k3 = (1.0 + ar) / (2.0 * oneMinusAs) - 0.5 * r / s;
  return {k1, k2, k3};
}

InteractionGeometry buildInteractionGeometry(double r, double s, double eps0) {
  if (!(r > -1.0 && r < 1.0)) throw std::invalid_argument("buildInteractionGeometry: need -1 < r < 1");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("buildInteractionGeometry: need 0 < s < 1");
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw std::invalid_argument("buildInteractionGeometry: bad eps0");

  const double ar = std::sqrt(1.0 - r * r);
  const double as = std::sqrt(1.0 - s * s);

  InteractionGeometry g;
  g.r = r;
  g.s = s;
  g.eps0 = eps0;
  g.xi[0] = Covector(1, 1, 0, 0);
  g.xi[1] = Covector(1, as, s, 0);
  g.xi[2] = Covector(1, as, -s, 0);
  g.eta = Covector(1, -ar, r, 0);
  g.kappa = splittingCoefficientsSolve(r, s);

  // Candidate placements: x1 sits on the spatial origin at time tx; y lies a
  // parameter u back up the xi_1 ray (spatially at distance u); outgoing leg
  // towards z uses the closest approach to the spatial origin. The midpoint
  // rule for u is tried first, then a tight fallback just outside the
  // observation set.
  auto tryPlace = [&](double tx, double u, double c0Scale) -> bool {
    if (!(u >= eps0)) return false;
    SpacetimePoint x1(tx, 0, 0, 0);
    SpacetimePoint y = x1 + u * SpacetimePoint(1, -1, 0, 0);
    double c0 = u * ar * c0Scale;
    if (!(c0 > 0)) return false;
    SpacetimePoint z = y + c0 * SpacetimePoint(1, ar, -r, 0);
    double ck = u * as;
    SpacetimePoint x2 = y - ck * SpacetimePoint(1, -as, -s, 0);
    SpacetimePoint x3 = y - ck * SpacetimePoint(1, -as, s, 0);
    auto insideObs = [&](const SpacetimePoint& p) { return inObservationSet(p, eps0); };
    if (!insideObs(x1) || !insideObs(x2) || !insideObs(x3) || !insideObs(z)) return false;
    if (!inDiamond(y) || inObservationSet(y, eps0)) return false;
    if (causalOrder(x1, y) != CausalRelation::Before) return false;
    if (causalOrder(y, z) != CausalRelation::Before) return false;
    g.x = {x1, x2, x3};
    g.y = y;
    g.z = z;
    return true;
  };

  const double txCandidates[] = {0.0, -0.1, 0.1, -0.2, 0.2, -0.3, 0.3, -0.4, 0.4, -0.5, 0.5};
  const double c0Scales[] = {1.0, 0.75, 1.25, 0.5};
  for (double tx : txCandidates) {
    double uMid = 0.5 * (eps0 + 0.5 * (1.0 - tx));  // midpoint of the outside segment
    double uTight = eps0 * (1.0 + 1e-6);
    for (double u : {uMid, 0.5 * (uMid + uTight), uTight}) {
      for (double c0s : c0Scales) {
        if (tryPlace(tx, u, c0s)) {
          BrokenTriple t{g.x[0], g.y, g.z};
          t.validate(eps0);
          return g;
        }
      }
    }
  }
  throw std::runtime_error("buildInteractionGeometry: no valid placement inside the diamond");
}

}  // namespace ymhlab
