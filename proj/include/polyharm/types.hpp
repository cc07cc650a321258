#pragma once

#include <complex>

#include <Eigen/Dense>

namespace polyharm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Real coordinates (x_1..x_n, y_1..y_n) of a point of C^n.
Vector to_real(const CVector& z);
CVector to_complex(const Vector& xy);

/// Real representation of a complex-linear map C^n -> C^p in the
/// (x-block, y-block) ordering: [[Re M, -Im M], [Im M, Re M]].
Matrix realify(const CMatrix& m);

/// Standard complex structure on R^{2n}: J d/dx_A = d/dy_A, J d/dy_A = -d/dx_A.
Matrix complex_structure(int n);

}  // namespace polyharm
