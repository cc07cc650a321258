#include "polyharm/types.hpp"

namespace polyharm {

Vector to_real(const CVector& z) {
  const Eigen::Index n = z.size();
  Vector xy(2 * n);
  xy.head(n) = z.real();
  xy.tail(n) = z.imag();
  return xy;
}

CVector to_complex(const Vector& xy) {
  const Eigen::Index n = xy.size() / 2;
  CVector z(n);
  for (Eigen::Index a = 0; a < n; ++a) z[a] = Complex(xy[a], xy[n + a]);
  return z;
}

Matrix realify(const CMatrix& m) {
  const Eigen::Index p = m.rows(), n = m.cols();
  Matrix r(2 * p, 2 * n);
  r.topLeftCorner(p, n) = m.real();
  r.topRightCorner(p, n) = -m.imag();
  r.bottomLeftCorner(p, n) = m.imag();
  r.bottomRightCorner(p, n) = m.real();
  return r;
}

Matrix complex_structure(int n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  j.topRightCorner(n, n) = -Matrix::Identity(n, n);
  return j;
}

}  // namespace polyharm
