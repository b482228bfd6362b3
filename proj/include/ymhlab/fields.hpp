// Closed-form spacetime fields: g-valued 1-forms (connections, currents) and
// W-valued fields (Higgs, sources). Fields built from separable scalar terms
// carry exact first and second derivatives; generic lambda-backed fields fall
// back to central differences.
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <random>

#include "ymhlab/algebra.hpp"
#include "ymhlab/geometry.hpp"

namespace ymhlab {

// One separable factor per coordinate: value/d1/d2 are exact.
struct Factor1D {
  enum class Kind { Const, Poly, Trig } kind = Kind::Const;
  // Poly: sum c_k x^k; Trig: a*sin(w x + phi) + b*cos(w x + phi) + c
  std::vector<double> coeff{1.0};
  double w = 0, phi = 0;

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;

  static Factor1D constant(double c) { return {Kind::Const, {c}, 0, 0}; }
  static Factor1D poly(std::vector<double> c) { return {Kind::Poly, std::move(c), 0, 0}; }
  static Factor1D trig(double a, double b, double c, double w, double phi) {
    return {Kind::Trig, {a, b, c}, w, phi};
  }
};

// Product of four one-dimensional factors.
struct SepScalar {
  std::array<Factor1D, 4> f{Factor1D::constant(1), Factor1D::constant(1),
                            Factor1D::constant(1), Factor1D::constant(1)};
  double value(const SpacetimePoint& p) const;
  double d1(const SpacetimePoint& p, int a) const;
  double d2(const SpacetimePoint& p, int a, int b) const;
};

using AlgebraOneForm = std::array<AlgebraElement, 4>;

// g-valued 1-form with optional exact derivative evaluators.
struct ConnectionField {
  GroupSpec spec;
  std::function<AlgebraOneForm(const SpacetimePoint&)> value;
  // d1(p, a)[beta] = d/dx^a of component beta; null => central differences
  std::function<AlgebraOneForm(const SpacetimePoint&, int)> d1;
  std::function<AlgebraOneForm(const SpacetimePoint&, int, int)> d2;
  double fdStep = 1e-4;
  bool identicallyZero = false;  // set by the zero factory, enables fast paths

  // Optional allocation-free evaluators in fixed basis coordinates; writes
  // 4*n doubles (component-major). Provided by the term-based factories.
  std::function<void(const SpacetimePoint&, double*)> coordValue;
  std::function<void(const SpacetimePoint&, int, double*)> coordDeriv1;

  bool hasExactDerivatives() const { return static_cast<bool>(d1); }
  AlgebraOneForm deriv1(const SpacetimePoint& p, int a) const;
  AlgebraOneForm deriv2(const SpacetimePoint& p, int a, int b) const;

  static ConnectionField zero(const GroupSpec& s);
};

struct HiggsField {
  int dim = 0;
  std::function<HiggsVector(const SpacetimePoint&)> value;
  std::function<HiggsVector(const SpacetimePoint&, int)> d1;
  std::function<HiggsVector(const SpacetimePoint&, int, int)> d2;
  double fdStep = 1e-4;
  bool isConstant = false;  // set by the constant/zero factories

  // optional allocation-free evaluators in stacked real coordinates (2d)
  std::function<void(const SpacetimePoint&, double*)> coordValue;
  std::function<void(const SpacetimePoint&, int, double*)> coordDeriv1;

  bool hasExactDerivatives() const { return static_cast<bool>(d1); }
  HiggsVector deriv1(const SpacetimePoint& p, int a) const;
  HiggsVector deriv2(const SpacetimePoint& p, int a, int b) const;

  static HiggsField zero(int d);
  static HiggsField constant(const HiggsVector& v);
};

// Field assembled from separable scalar terms; exact derivatives throughout.
struct ConnectionTerm {
  int component = 0;  // beta
  AlgebraElement direction;
  SepScalar profile;
};
ConnectionField makeConnection(const GroupSpec& spec, std::vector<ConnectionTerm> terms);

struct HiggsTerm {
  HiggsVector direction;
  SepScalar profile;
  SepScalar profileImag;   // optional second profile on i*direction
  bool hasImag = false;
};
HiggsField makeHiggs(int dim, std::vector<HiggsTerm> terms);

// Smooth bounded random fields (sums of a few low-frequency trig terms);
// deterministic for a given seed, exact derivatives available.
ConnectionField randomSmoothConnection(const GroupSpec& spec, std::mt19937_64& rng,
                                       double amplitude = 0.4, int terms = 3,
                                       bool temporalGaugeOnly = false);
HiggsField randomSmoothHiggs(int dim, std::mt19937_64& rng, double amplitude = 0.4,
                             int terms = 3);

}  // namespace ymhlab
