#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

std::vector<double> jacobi_eigenvalues(Matrix a) {
  const auto n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

Point2 mid(Point2 p, Point2 q) { return {0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])}; }

double area(Point2 p0, Point2 p1, Point2 p2) {
  return 0.5 * std::abs((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
}

double midpoint_rule(const std::function<double(double, double)>& f, Point2 p0, Point2 p1, Point2 p2) {
  const Point2 a = mid(p0, p1), b = mid(p1, p2), c = mid(p2, p0);
  return area(p0, p1, p2) * (f(a[0], a[1]) + f(b[0], b[1]) + f(c[0], c[1])) / 3.0;
}

double triangle(const std::function<double(double, double)>& f, Point2 p0, Point2 p1, Point2 p2,
                double coarse, double tol, int depth) {
  const Point2 a = mid(p0, p1), b = mid(p1, p2), c = mid(p2, p0);
  const double i0 = midpoint_rule(f, p0, a, c), i1 = midpoint_rule(f, a, p1, b);
  const double i2 = midpoint_rule(f, c, b, p2), i3 = midpoint_rule(f, a, b, c);
  const double fine = i0 + i1 + i2 + i3;
  if (depth <= 0 || std::abs(fine - coarse) <= tol) return fine;
  const double t = 0.25 * tol;
  return triangle(f, p0, a, c, i0, t, depth - 1) + triangle(f, a, p1, b, i1, t, depth - 1) +
         triangle(f, c, b, p2, i2, t, depth - 1) + triangle(f, a, b, c, i3, t, depth - 1);
}

}  // namespace

double integrate_interval(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

double integrate_triangle(const std::function<double(double, double)>& f, Point2 p0, Point2 p1,
                          Point2 p2, double tol) {
  return triangle(f, p0, p1, p2, midpoint_rule(f, p0, p1, p2), tol, 12);
}

Matrix cotangent_stiffness(Point2 p0, Point2 p1, Point2 p2) {
  const std::array<Point2, 3> p{p0, p1, p2};
  Matrix s = Matrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    const double ux = p[i][0] - p[k][0], uy = p[i][1] - p[k][1];
    const double vx = p[j][0] - p[k][0], vy = p[j][1] - p[k][1];
    const double cot = (ux * vx + uy * vy) / std::abs(ux * vy - uy * vx);
    s(i, j) -= 0.5 * cot;
    s(j, i) -= 0.5 * cot;
    s(i, i) += 0.5 * cot;
    s(j, j) += 0.5 * cot;
  }
  return s;
}

std::vector<double> christoffel(const std::function<Matrix(const Vector&)>& h, const Vector& z,
                                double step) {
  const auto d = z.size();
  std::vector<Matrix> dh(static_cast<std::size_t>(d));
  for (Eigen::Index c = 0; c < d; ++c) {
    Vector zp = z, zm = z;
    zp(c) += step;
    zm(c) -= step;
    dh[static_cast<std::size_t>(c)] = (h(zp) - h(zm)) / (2.0 * step);
  }
  const Matrix inv = h(z).inverse();
  std::vector<double> g(static_cast<std::size_t>(d * d * d), 0.0);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) {
        double sum = 0.0;
        for (Eigen::Index l = 0; l < d; ++l)
          sum += inv(k, l) * (dh[a](l, b) + dh[b](l, a) - dh[l](a, b));
        g[static_cast<std::size_t>((k * d + a) * d + b)] = 0.5 * sum;
      }
  return g;
}

double unfolded_distance(Point3 a, Point3 b, Point3 c, Point3 d) {
  auto sub = [](Point3 p, Point3 q) { return Eigen::Vector3d(p[0] - q[0], p[1] - q[1], p[2] - q[2]); };
  // Planar frame with b at the origin and c on the positive first axis.
  const Eigen::Vector3d bc = sub(c, b);
  const double len = bc.norm();
  const Eigen::Vector3d e = bc / len;
  auto planar = [&](Point3 p) {
    const Eigen::Vector3d v = sub(p, b);
    const double along = v.dot(e);
    return Eigen::Vector2d(along, (v - along * e).norm());
  };
  const Eigen::Vector2d pa = planar(a);
  Eigen::Vector2d pd = planar(d);
  pd(1) = -pd(1);
  return (pa - pd).norm();
}

Matrix jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x, double step) {
  const Vector f0 = f(x);
  Matrix j(f0.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp(i) += step;
    xm(i) -= step;
    j.col(i) = (f(xp) - f(xm)) / (2.0 * step);
  }
  return j;
}

double planar_ball_second_moment() {
  const double pi = std::numbers::pi;
  return integrate_interval(
      [](double theta) {
        const double c = std::cos(theta);
        return integrate_interval([c](double r) { return r * c * r * c * r; }, 0.0, 1.0, 1e-14);
      },
      0.0, 2.0 * pi, 1e-13);
}

}  // namespace oracle
