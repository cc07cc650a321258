#include "polyharm/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "polyharm/error.hpp"

namespace polyharm {

namespace {

Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

int total_degree(const Monomial& m) {
  return std::accumulate(m.exponents.begin(), m.exponents.end(), 0);
}

}  // namespace

Polynomial::Polynomial(int variables, std::vector<Monomial> terms)
    : vars_(variables), terms_(std::move(terms)) {
  if (variables < 1) fail(ErrorCode::InvalidArgument, "polynomial needs at least one variable");
  for (const auto& t : terms_) {
    if (static_cast<int>(t.exponents.size()) != variables)
      fail(ErrorCode::DimensionMismatch, "monomial exponent vector has wrong length");
    if (std::any_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e < 0; }))
      fail(ErrorCode::InvalidArgument, "negative exponent");
  }
}

Polynomial Polynomial::variable(int variables, int index) {
  std::vector<int> e(variables, 0);
  e.at(index) = 1;
  return Polynomial(variables, {{1.0, e}});
}

Polynomial Polynomial::constant(int variables, Complex value) {
  return Polynomial(variables, {{value, std::vector<int>(variables, 0)}});
}

Complex Polynomial::operator()(const CVector& z) const {
  if (z.size() != vars_) fail(ErrorCode::DimensionMismatch, "polynomial argument length");
  Complex sum = 0.0;
  for (const auto& t : terms_) {
    Complex term = t.coefficient;
    for (int i = 0; i < vars_; ++i) term *= ipow(z[i], t.exponents[i]);
    sum += term;
  }
  return sum;
}

CVector Polynomial::gradient(const CVector& z) const {
  if (z.size() != vars_) fail(ErrorCode::DimensionMismatch, "polynomial argument length");
  CVector g = CVector::Zero(vars_);
  for (const auto& t : terms_) {
    for (int j = 0; j < vars_; ++j) {
      if (t.exponents[j] == 0) continue;
      Complex term = t.coefficient * static_cast<double>(t.exponents[j]);
      for (int i = 0; i < vars_; ++i) term *= ipow(z[i], t.exponents[i] - (i == j ? 1 : 0));
      g[j] += term;
    }
  }
  return g;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_)
    if (t.coefficient != Complex(0.0)) d = std::max(d, total_degree(t));
  return d;
}

bool Polynomial::is_homogeneous() const {
  const int d = degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const Monomial& t) {
    return t.coefficient == Complex(0.0) || total_degree(t) == d;
  });
}

bool Polynomial::is_zero() const { return degree() < 0; }

Polynomial Polynomial::conjugate_coefficients() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coefficient = std::conj(t.coefficient);
  return p;
}

}  // namespace polyharm
