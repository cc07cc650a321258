#pragma once

#include <vector>

#include "polyharm/types.hpp"

namespace polyharm {

struct Monomial {
  Complex coefficient;
  std::vector<int> exponents;
};

/// Complex polynomial in a fixed number of variables.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int variables, std::vector<Monomial> terms);

  static Polynomial variable(int variables, int index);
  static Polynomial constant(int variables, Complex value);

  int variables() const { return vars_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  Complex operator()(const CVector& z) const;
  CVector gradient(const CVector& z) const;

  /// Largest total degree among nonzero terms; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  bool is_zero() const;

  /// Same exponents, conjugated coefficients.
  Polynomial conjugate_coefficients() const;

 private:
  int vars_ = 0;
  std::vector<Monomial> terms_;
};

}  // namespace polyharm
