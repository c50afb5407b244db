#include "rqm/matrix2c.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rqm {

Matrix2c Matrix2c::adjoint() const {
  return {std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])};
}

Matrix2c Matrix2c::conj() const {
  return {std::conj(e[0]), std::conj(e[1]), std::conj(e[2]), std::conj(e[3])};
}

Matrix2c Matrix2c::inverse() const {
  const cplx d = det();
  if (std::abs(d) < 1e-300) throw std::domain_error("Matrix2c::inverse: singular matrix");
  return {e[3] / d, -e[1] / d, -e[2] / d, e[0] / d};
}

Matrix2c& Matrix2c::operator+=(const Matrix2c& o) {
  for (int i = 0; i < 4; ++i) e[i] += o.e[i];
  return *this;
}

Matrix2c& Matrix2c::operator-=(const Matrix2c& o) {
  for (int i = 0; i < 4; ++i) e[i] -= o.e[i];
  return *this;
}

Matrix2c& Matrix2c::operator*=(cplx s) {
  for (auto& x : e) x *= s;
  return *this;
}

Matrix2c operator+(Matrix2c a, const Matrix2c& b) { return a += b; }
Matrix2c operator-(Matrix2c a, const Matrix2c& b) { return a -= b; }
Matrix2c operator-(const Matrix2c& a) { return {-a.e[0], -a.e[1], -a.e[2], -a.e[3]}; }

Matrix2c operator*(const Matrix2c& a, const Matrix2c& b) {
  return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
          a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
}

Matrix2c operator*(cplx s, Matrix2c a) { return a *= s; }
Matrix2c operator*(Matrix2c a, cplx s) { return a *= s; }

double max_abs_diff(const Matrix2c& a, const Matrix2c& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
  return m;
}

double max_abs(const Matrix2c& a) {
  double m = 0.0;
  for (const auto& x : a.e) m = std::max(m, std::abs(x));
  return m;
}

Matrix2c pauli(int k) {
  switch (k) {
    case 0: return Matrix2c::identity();
    case 1: return {0.0, 1.0, 1.0, 0.0};
    case 2: return {0.0, -kI, kI, 0.0};
    case 3: return {1.0, 0.0, 0.0, -1.0};
    default: throw std::out_of_range("pauli: index must be 0..3");
  }
}

bool is_unimodular(const Matrix2c& a, double tol) { return std::abs(a.det() - 1.0) <= tol; }

bool is_su2(const Matrix2c& a, double tol) {
  return is_unimodular(a, tol) && max_abs_diff(a * a.adjoint(), Matrix2c::identity()) <= tol;
}

bool is_hermitian(const Matrix2c& a, double tol) { return max_abs_diff(a, a.adjoint()) <= tol; }

namespace {

Matrix2c n_dot_sigma(const std::array<double, 3>& n) {
  return {n[2], cplx(n[0], -n[1]), cplx(n[0], n[1]), -n[2]};
}

}  // namespace

Matrix2c su2_rotation(const std::array<double, 3>& axis, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  return c * Matrix2c::identity() + (kI * s) * n_dot_sigma(axis);
}

Matrix2c sl2c_boost(const std::array<double, 3>& axis, double rapidity) {
  const double c = std::cosh(0.5 * rapidity);
  const double s = std::sinh(0.5 * rapidity);
  return c * Matrix2c::identity() + cplx(s) * n_dot_sigma(axis);
}

}  // namespace rqm
