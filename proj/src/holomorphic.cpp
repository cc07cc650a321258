#include "polyharm/holomorphic.hpp"

#include <cmath>

#include "polyharm/error.hpp"

namespace polyharm {

namespace {

void require_index(int n, int a) {
  if (a < 0 || a >= n) fail(ErrorCode::InvalidArgument, "coordinate index out of range");
}

}  // namespace

Matrix finite_difference_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x,
                                  double step) {
  const Vector f0 = f(x);
  Matrix jac(f0.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x[i]));
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    jac.col(i) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return jac;
}

HolomorphicMap::HolomorphicMap(int n, int p, ValueFn value, JacobianFn jacobian, std::string name)
    : n_(n), p_(p), value_(std::move(value)), jacobian_(std::move(jacobian)), name_(std::move(name)) {
  if (n < 1 || p < 1) fail(ErrorCode::InvalidArgument, "holomorphic map dimensions must be positive");
}

HolomorphicMap HolomorphicMap::identity(int n) {
  return HolomorphicMap(
      n, n, [](const CVector& z) { return z; },
      [n](const CVector&) { return CMatrix(CMatrix::Identity(n, n)); }, "z");
}

HolomorphicMap HolomorphicMap::scaled(int n, Complex c) {
  return HolomorphicMap(
      n, n, [c](const CVector& z) { return CVector(c * z); },
      [n, c](const CVector&) { return CMatrix(c * CMatrix::Identity(n, n)); }, "c*z");
}

HolomorphicMap HolomorphicMap::coordinate(int n, int a) {
  require_index(n, a);
  return HolomorphicMap(
      n, 1, [a](const CVector& z) { return CVector::Constant(1, z[a]); },
      [n, a](const CVector&) {
        CMatrix j = CMatrix::Zero(1, n);
        j(0, a) = 1.0;
        return j;
      },
      "z" + std::to_string(a + 1));
}

HolomorphicMap HolomorphicMap::pair_sum(int n, int k, int l) {
  require_index(n, k);
  require_index(n, l);
  return HolomorphicMap(
      n, 1, [k, l](const CVector& z) { return CVector::Constant(1, z[k] + z[l]); },
      [n, k, l](const CVector&) {
        CMatrix j = CMatrix::Zero(1, n);
        j(0, k) += 1.0;
        j(0, l) += 1.0;
        return j;
      },
      "z" + std::to_string(k + 1) + "+z" + std::to_string(l + 1));
}

HolomorphicMap HolomorphicMap::product(int n, int a, int b) {
  require_index(n, a);
  require_index(n, b);
  return HolomorphicMap(
      n, 1, [a, b](const CVector& z) { return CVector::Constant(1, z[a] * z[b]); },
      [n, a, b](const CVector& z) {
        CMatrix j = CMatrix::Zero(1, n);
        j(0, a) += z[b];
        j(0, b) += z[a];
        return j;
      },
      "z" + std::to_string(a + 1) + "*z" + std::to_string(b + 1));
}

HolomorphicMap HolomorphicMap::i_product(int n, int a, int b) {
  require_index(n, a);
  require_index(n, b);
  const Complex i(0.0, 1.0);
  return HolomorphicMap(
      n, 1, [a, b, i](const CVector& z) { return CVector::Constant(1, i * z[a] * z[b]); },
      [n, a, b, i](const CVector& z) {
        CMatrix j = CMatrix::Zero(1, n);
        j(0, a) += i * z[b];
        j(0, b) += i * z[a];
        return j;
      },
      "i*z" + std::to_string(a + 1) + "*z" + std::to_string(b + 1));
}

HolomorphicMap HolomorphicMap::power(int n, int a, int k) {
  require_index(n, a);
  if (k < 0) fail(ErrorCode::InvalidArgument, "negative power");
  return HolomorphicMap(
      n, 1, [a, k](const CVector& z) { return CVector::Constant(1, std::pow(z[a], k)); },
      [n, a, k](const CVector& z) {
        CMatrix j = CMatrix::Zero(1, n);
        if (k > 0) j(0, a) = static_cast<double>(k) * std::pow(z[a], k - 1);
        return j;
      },
      "z" + std::to_string(a + 1) + "^" + std::to_string(k));
}

HolomorphicMap HolomorphicMap::polynomial(std::vector<Polynomial> components, std::string name) {
  if (components.empty()) fail(ErrorCode::InvalidArgument, "polynomial map needs components");
  const int n = components.front().variables();
  for (const auto& c : components)
    if (c.variables() != n) fail(ErrorCode::DimensionMismatch, "polynomial components disagree");
  const int p = static_cast<int>(components.size());
  return HolomorphicMap(
      n, p,
      [components](const CVector& z) {
        CVector w(components.size());
        for (std::size_t i = 0; i < components.size(); ++i) w[i] = components[i](z);
        return w;
      },
      [components, n](const CVector& z) {
        CMatrix j(components.size(), n);
        for (std::size_t i = 0; i < components.size(); ++i)
          j.row(i) = components[i].gradient(z).transpose();
        return j;
      },
      name.empty() ? "polynomial" : std::move(name));
}

HolomorphicMap HolomorphicMap::rational(Polynomial num, Polynomial den, double guard) {
  if (num.variables() != den.variables())
    fail(ErrorCode::DimensionMismatch, "numerator and denominator variables differ");
  if (den.is_zero()) fail(ErrorCode::ZeroDenominatorPolynomial, "rational map denominator");
  const int n = num.variables();
  auto check = [guard](Complex d) {
    if (!(std::abs(d) >= guard)) fail(ErrorCode::PoleAtPoint, "denominator vanishes");
  };
  return HolomorphicMap(
      n, 1,
      [num, den, check](const CVector& z) {
        const Complex d = den(z);
        check(d);
        return CVector::Constant(1, num(z) / d);
      },
      [num, den, check, n](const CVector& z) {
        const Complex d = den(z);
        check(d);
        const Complex f = num(z);
        CMatrix j(1, n);
        j.row(0) = ((num.gradient(z) * d - den.gradient(z) * f) / (d * d)).transpose();
        return j;
      },
      "rational");
}

HolomorphicMap HolomorphicMap::compose(const HolomorphicMap& outer, const HolomorphicMap& inner) {
  if (outer.domain_dim() != inner.codomain_dim())
    fail(ErrorCode::DimensionMismatch, "composition dimensions");
  JacobianFn jac;
  if (outer.has_closed_form() && inner.has_closed_form())
    jac = [outer, inner](const CVector& z) {
      return CMatrix(outer.jacobian(inner(z)) * inner.jacobian(z));
    };
  return HolomorphicMap(
      inner.domain_dim(), outer.codomain_dim(),
      [outer, inner](const CVector& z) { return outer(inner(z)); }, std::move(jac),
      outer.name() + " o " + inner.name());
}

HolomorphicMap HolomorphicMap::from_values(int n, int p, ValueFn value, std::string name) {
  return HolomorphicMap(n, p, std::move(value), {}, std::move(name));
}

CVector HolomorphicMap::operator()(const CVector& z) const {
  if (z.size() != n_) fail(ErrorCode::DimensionMismatch, "holomorphic map argument length");
  CVector w = value_(z);
  if (w.size() != p_) fail(ErrorCode::DimensionMismatch, "holomorphic map value length");
  if (!w.allFinite()) fail(ErrorCode::PoleAtPoint, name_ + " is not finite here");
  return w;
}

Vector HolomorphicMap::real_value(const Vector& xy) const { return to_real((*this)(to_complex(xy))); }

CMatrix HolomorphicMap::jacobian(const CVector& z) const {
  if (jacobian_) {
    CMatrix j = jacobian_(z);
    if (!j.allFinite()) fail(ErrorCode::PoleAtPoint, name_ + " derivative is not finite here");
    return j;
  }
  const Matrix r = real_jacobian(to_real(z));
  // d/dz = d/dx for holomorphic maps: read off the x-block.
  CMatrix j(p_, n_);
  for (int a = 0; a < p_; ++a)
    for (int b = 0; b < n_; ++b) j(a, b) = Complex(r(a, b), r(p_ + a, b));
  return j;
}

Matrix HolomorphicMap::real_jacobian(const Vector& xy, double step) const {
  if (jacobian_) return realify(jacobian(to_complex(xy)));
  Matrix j = finite_difference_jacobian([this](const Vector& p) { return real_value(p); }, xy, step);
  if (!j.allFinite()) fail(ErrorCode::PoleAtPoint, name_ + " derivative is not finite here");
  return j;
}

std::vector<HolomorphicMap> standard_family(int n) {
  std::vector<HolomorphicMap> family;
  for (int a = 0; a < n; ++a) family.push_back(HolomorphicMap::coordinate(n, a));
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) family.push_back(HolomorphicMap::pair_sum(n, k, l));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) family.push_back(HolomorphicMap::product(n, a, b));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) family.push_back(HolomorphicMap::i_product(n, a, b));
  return family;
}

}  // namespace polyharm
