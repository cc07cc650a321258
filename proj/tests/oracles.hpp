#pragma once

// Reference computations written independently of the library code paths.

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Point2 = std::array<double, 2>;
using Point3 = std::array<double, 3>;

/// Eigenvalues of a symmetric array by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(Matrix a);

/// Adaptive Simpson on [a, b].
double integrate_interval(const std::function<double(double)>& f, double a, double b, double tol);

/// Adaptive integral over a triangle: edge-midpoint rule against its four-way
/// subdivision until they agree to `tol`.
double integrate_triangle(const std::function<double(double, double)>& f, Point2 p0, Point2 p1,
                          Point2 p2, double tol);

/// P1 stiffness of one planar triangle from the cotangent formula.
Matrix cotangent_stiffness(Point2 p0, Point2 p1, Point2 p2);

/// Levi-Civita symbols from central differences of a metric evaluator,
/// returned as gamma[k][a][b] flattened (k * d + a) * d + b.
std::vector<double> christoffel(const std::function<Matrix(const Vector&)>& h, const Vector& z,
                                double step);

/// Straight-line length from a to d after rotating triangle (b, c, d) about
/// edge bc into the plane of (a, b, c), on the side opposite to a.
double unfolded_distance(Point3 a, Point3 b, Point3 c, Point3 d);

/// Central-difference Jacobian with absolute step.
Matrix jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x, double step);

/// int_{B_1} u_1^2 du in R^2 by iterated adaptive quadrature in polar form.
double planar_ball_second_moment();

}  // namespace oracle
