#include "ymhlab/fields.hpp"

#include <cmath>

namespace ymhlab {

double Factor1D::value(double x) const {
  switch (kind) {
    case Kind::Const: return coeff[0];
    case Kind::Poly: {
      double v = 0, p = 1;
      for (double c : coeff) {
        v += c * p;
        p *= x;
      }
      return v;
    }
    case Kind::Trig:
      return coeff[0] * std::sin(w * x + phi) + coeff[1] * std::cos(w * x + phi) + coeff[2];
  }
  return 0;
}

double Factor1D::d1(double x) const {
  switch (kind) {
    case Kind::Const: return 0;
    case Kind::Poly: {
      double v = 0, p = 1;
      for (std::size_t k = 1; k < coeff.size(); ++k) {
        v += static_cast<double>(k) * coeff[k] * p;
        p *= x;
      }
      return v;
    }
    case Kind::Trig:
      return w * (coeff[0] * std::cos(w * x + phi) - coeff[1] * std::sin(w * x + phi));
  }
  return 0;
}

double Factor1D::d2(double x) const {
  switch (kind) {
    case Kind::Const: return 0;
    case Kind::Poly: {
      double v = 0, p = 1;
      for (std::size_t k = 2; k < coeff.size(); ++k) {
        v += static_cast<double>(k * (k - 1)) * coeff[k] * p;
        p *= x;
      }
      return v;
    }
    case Kind::Trig:
      return -w * w * (coeff[0] * std::sin(w * x + phi) + coeff[1] * std::cos(w * x + phi));
  }
  return 0;
}

double SepScalar::value(const SpacetimePoint& p) const {
  double v = 1;
  for (int a = 0; a < 4; ++a) v *= f[static_cast<std::size_t>(a)].value(p(a));
  return v;
}

double SepScalar::d1(const SpacetimePoint& p, int a) const {
  double v = 1;
  for (int b = 0; b < 4; ++b) {
    const auto& g = f[static_cast<std::size_t>(b)];
    v *= (b == a) ? g.d1(p(b)) : g.value(p(b));
  }
  return v;
}

double SepScalar::d2(const SpacetimePoint& p, int a, int b) const {
  double v = 1;
  for (int c = 0; c < 4; ++c) {
    const auto& g = f[static_cast<std::size_t>(c)];
    if (a == b)
      v *= (c == a) ? g.d2(p(c)) : g.value(p(c));
    else if (c == a || c == b)
      v *= g.d1(p(c));
    else
      v *= g.value(p(c));
  }
  return v;
}

namespace {

SpacetimePoint shifted(const SpacetimePoint& p, int a, double h) {
  SpacetimePoint q = p;
  q(a) += h;
  return q;
}

}  // namespace

AlgebraOneForm ConnectionField::deriv1(const SpacetimePoint& p, int a) const {
  if (d1) return d1(p, a);
  const double h = fdStep;
  AlgebraOneForm plus = value(shifted(p, a, h));
  AlgebraOneForm minus = value(shifted(p, a, -h));
  AlgebraOneForm out;
  for (int b = 0; b < 4; ++b)
    out[static_cast<std::size_t>(b)] =
        (1.0 / (2.0 * h)) * (plus[static_cast<std::size_t>(b)] - minus[static_cast<std::size_t>(b)]);
  return out;
}

AlgebraOneForm ConnectionField::deriv2(const SpacetimePoint& p, int a, int b) const {
  if (d2) return d2(p, a, b);
  const double h = fdStep;
  if (a == b) {
    AlgebraOneForm plus = value(shifted(p, a, h));
    AlgebraOneForm at = value(p);
    AlgebraOneForm minus = value(shifted(p, a, -h));
    AlgebraOneForm out;
    for (int c = 0; c < 4; ++c)
      out[static_cast<std::size_t>(c)] =
          (1.0 / (h * h)) * (plus[static_cast<std::size_t>(c)] -
                             2.0 * at[static_cast<std::size_t>(c)] +
                             minus[static_cast<std::size_t>(c)]);
    return out;
  }
  AlgebraOneForm pp = value(shifted(shifted(p, a, h), b, h));
  AlgebraOneForm pm = value(shifted(shifted(p, a, h), b, -h));
  AlgebraOneForm mp = value(shifted(shifted(p, a, -h), b, h));
  AlgebraOneForm mm = value(shifted(shifted(p, a, -h), b, -h));
  AlgebraOneForm out;
  for (int c = 0; c < 4; ++c)
    out[static_cast<std::size_t>(c)] =
        (1.0 / (4.0 * h * h)) *
        (pp[static_cast<std::size_t>(c)] - pm[static_cast<std::size_t>(c)] -
         mp[static_cast<std::size_t>(c)] + mm[static_cast<std::size_t>(c)]);
  return out;
}

ConnectionField ConnectionField::zero(const GroupSpec& s) {
  ConnectionField f;
  f.spec = s;
  f.value = [s](const SpacetimePoint&) {
    return AlgebraOneForm{AlgebraElement(s), AlgebraElement(s), AlgebraElement(s),
                          AlgebraElement(s)};
  };
  f.d1 = [s](const SpacetimePoint&, int) {
    return AlgebraOneForm{AlgebraElement(s), AlgebraElement(s), AlgebraElement(s),
                          AlgebraElement(s)};
  };
  f.d2 = [s](const SpacetimePoint&, int, int) {
    return AlgebraOneForm{AlgebraElement(s), AlgebraElement(s), AlgebraElement(s),
                          AlgebraElement(s)};
  };
  f.identicallyZero = true;
  const int n = s.algebraDim();
  f.coordValue = [n](const SpacetimePoint&, double* out) { std::fill(out, out + 4 * n, 0.0); };
  f.coordDeriv1 = [n](const SpacetimePoint&, int, double* out) {
    std::fill(out, out + 4 * n, 0.0);
  };
  return f;
}

HiggsVector HiggsField::deriv1(const SpacetimePoint& p, int a) const {
  if (d1) return d1(p, a);
  const double h = fdStep;
  return (value(shifted(p, a, h)) - value(shifted(p, a, -h))) / (2.0 * h);
}

HiggsVector HiggsField::deriv2(const SpacetimePoint& p, int a, int b) const {
  if (d2) return d2(p, a, b);
  const double h = fdStep;
  if (a == b)
    return (value(shifted(p, a, h)) - 2.0 * value(p) + value(shifted(p, a, -h))) / (h * h);
  return (value(shifted(shifted(p, a, h), b, h)) - value(shifted(shifted(p, a, h), b, -h)) -
          value(shifted(shifted(p, a, -h), b, h)) + value(shifted(shifted(p, a, -h), b, -h))) /
         (4.0 * h * h);
}

HiggsField HiggsField::zero(int d) { return constant(HiggsVector::Zero(d)); }

HiggsField HiggsField::constant(const HiggsVector& v) {
  HiggsField f;
  f.dim = static_cast<int>(v.size());
  HiggsVector z = HiggsVector::Zero(v.size());
  f.value = [v](const SpacetimePoint&) { return v; };
  f.d1 = [z](const SpacetimePoint&, int) { return z; };
  f.d2 = [z](const SpacetimePoint&, int, int) { return z; };
  f.isConstant = true;
  Eigen::VectorXd vr = higgsToReal(v);
  const int m = static_cast<int>(vr.size());
  f.coordValue = [vr, m](const SpacetimePoint&, double* out) {
    std::copy(vr.data(), vr.data() + m, out);
  };
  f.coordDeriv1 = [m](const SpacetimePoint&, int, double* out) {
    std::fill(out, out + m, 0.0);
  };
  return f;
}

ConnectionField makeConnection(const GroupSpec& spec, std::vector<ConnectionTerm> terms) {
  auto shared = std::make_shared<std::vector<ConnectionTerm>>(std::move(terms));
  ConnectionField f;
  f.spec = spec;
  {
    const int n = spec.algebraDim();
    auto dirCoords = std::make_shared<std::vector<Eigen::VectorXd>>();
    for (const auto& t : *shared) dirCoords->push_back(basisCoordinates(t.direction));
    f.coordValue = [shared, dirCoords, n](const SpacetimePoint& p, double* out) {
      std::fill(out, out + 4 * n, 0.0);
      for (std::size_t k = 0; k < shared->size(); ++k) {
        double v = (*shared)[k].profile.value(p);
        const Eigen::VectorXd& c = (*dirCoords)[k];
        double* dst = out + (*shared)[k].component * n;
        for (int i = 0; i < n; ++i) dst[i] += v * c(i);
      }
    };
    f.coordDeriv1 = [shared, dirCoords, n](const SpacetimePoint& p, int a, double* out) {
      std::fill(out, out + 4 * n, 0.0);
      for (std::size_t k = 0; k < shared->size(); ++k) {
        double v = (*shared)[k].profile.d1(p, a);
        const Eigen::VectorXd& c = (*dirCoords)[k];
        double* dst = out + (*shared)[k].component * n;
        for (int i = 0; i < n; ++i) dst[i] += v * c(i);
      }
    };
  }
  f.value = [spec, shared](const SpacetimePoint& p) {
    AlgebraOneForm out{AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec),
                       AlgebraElement(spec)};
    for (const auto& t : *shared)
      out[static_cast<std::size_t>(t.component)] += t.profile.value(p) * t.direction;
    return out;
  };
  f.d1 = [spec, shared](const SpacetimePoint& p, int a) {
    AlgebraOneForm out{AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec),
                       AlgebraElement(spec)};
    for (const auto& t : *shared)
      out[static_cast<std::size_t>(t.component)] += t.profile.d1(p, a) * t.direction;
    return out;
  };
  f.d2 = [spec, shared](const SpacetimePoint& p, int a, int b) {
    AlgebraOneForm out{AlgebraElement(spec), AlgebraElement(spec), AlgebraElement(spec),
                       AlgebraElement(spec)};
    for (const auto& t : *shared)
      out[static_cast<std::size_t>(t.component)] += t.profile.d2(p, a, b) * t.direction;
    return out;
  };
  return f;
}

HiggsField makeHiggs(int dim, std::vector<HiggsTerm> terms) {
  auto shared = std::make_shared<std::vector<HiggsTerm>>(std::move(terms));
  const Complex kI(0.0, 1.0);
  HiggsField f;
  f.dim = dim;
  {
    auto reals = std::make_shared<std::vector<Eigen::VectorXd>>();
    auto imags = std::make_shared<std::vector<Eigen::VectorXd>>();
    for (const auto& t : *shared) {
      reals->push_back(higgsToReal(t.direction));
      imags->push_back(higgsToReal(HiggsVector(kI * t.direction)));
    }
    const int m = 2 * dim;
    f.coordValue = [shared, reals, imags, m](const SpacetimePoint& p, double* out) {
      std::fill(out, out + m, 0.0);
      for (std::size_t k = 0; k < shared->size(); ++k) {
        double v = (*shared)[k].profile.value(p);
        for (int i = 0; i < m; ++i) out[i] += v * (*reals)[k](i);
        if ((*shared)[k].hasImag) {
          double w = (*shared)[k].profileImag.value(p);
          for (int i = 0; i < m; ++i) out[i] += w * (*imags)[k](i);
        }
      }
    };
    f.coordDeriv1 = [shared, reals, imags, m](const SpacetimePoint& p, int a, double* out) {
      std::fill(out, out + m, 0.0);
      for (std::size_t k = 0; k < shared->size(); ++k) {
        double v = (*shared)[k].profile.d1(p, a);
        for (int i = 0; i < m; ++i) out[i] += v * (*reals)[k](i);
        if ((*shared)[k].hasImag) {
          double w = (*shared)[k].profileImag.d1(p, a);
          for (int i = 0; i < m; ++i) out[i] += w * (*imags)[k](i);
        }
      }
    };
  }
  f.value = [dim, shared, kI](const SpacetimePoint& p) {
    HiggsVector v = HiggsVector::Zero(dim);
    for (const auto& t : *shared) {
      v += t.profile.value(p) * t.direction;
      if (t.hasImag) v += t.profileImag.value(p) * (kI * t.direction);
    }
    return v;
  };
  f.d1 = [dim, shared, kI](const SpacetimePoint& p, int a) {
    HiggsVector v = HiggsVector::Zero(dim);
    for (const auto& t : *shared) {
      v += t.profile.d1(p, a) * t.direction;
      if (t.hasImag) v += t.profileImag.d1(p, a) * (kI * t.direction);
    }
    return v;
  };
  f.d2 = [dim, shared, kI](const SpacetimePoint& p, int a, int b) {
    HiggsVector v = HiggsVector::Zero(dim);
    for (const auto& t : *shared) {
      v += t.profile.d2(p, a, b) * t.direction;
      if (t.hasImag) v += t.profileImag.d2(p, a, b) * (kI * t.direction);
    }
    return v;
  };
  return f;
}

namespace {

SepScalar randomSepScalar(std::mt19937_64& rng, double amplitude) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(0.3, 1.4);
  SepScalar s;
  for (int a = 0; a < 4; ++a)
    s.f[static_cast<std::size_t>(a)] =
        Factor1D::trig(0.6 * uni(rng), 0.6 * uni(rng), 0.7 + 0.3 * uni(rng), freq(rng),
                       3.0 * uni(rng));
  // fold the overall amplitude into the first factor
  for (auto& c : s.f[0].coeff) c *= amplitude;
  return s;
}

}  // namespace

ConnectionField randomSmoothConnection(const GroupSpec& spec, std::mt19937_64& rng,
                                       double amplitude, int terms, bool temporalGaugeOnly) {
  std::vector<ConnectionTerm> ts;
  std::uniform_int_distribution<int> comp(temporalGaugeOnly ? 1 : 0, 3);
  for (int i = 0; i < terms; ++i) {
    ConnectionTerm t;
    t.component = comp(rng);
    t.direction = randomAlgebraElement(spec, rng, 1.0);
    t.profile = randomSepScalar(rng, amplitude);
    ts.push_back(std::move(t));
  }
  return makeConnection(spec, std::move(ts));
}

HiggsField randomSmoothHiggs(int dim, std::mt19937_64& rng, double amplitude, int terms) {
  std::vector<HiggsTerm> ts;
  for (int i = 0; i < terms; ++i) {
    HiggsTerm t;
    t.direction = randomHiggsVector(dim, rng, 1.0);
    t.profile = randomSepScalar(rng, amplitude);
    t.profileImag = randomSepScalar(rng, amplitude);
    t.hasImag = true;
    ts.push_back(std::move(t));
  }
  return makeHiggs(dim, std::move(ts));
}

}  // namespace ymhlab
