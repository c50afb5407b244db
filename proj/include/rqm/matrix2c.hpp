#pragma once

#include <array>
#include <complex>

namespace rqm {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};

/// 2x2 complex matrix, row-major. Carrier for SL(2,C)/SU(2) elements and for
/// four-vectors written as x^mu sigma_mu.
struct Matrix2c {
  std::array<cplx, 4> e{};

  constexpr Matrix2c() = default;
  constexpr Matrix2c(cplx a, cplx b, cplx c, cplx d) : e{a, b, c, d} {}

  constexpr cplx& operator()(int r, int c) { return e[2 * r + c]; }
  constexpr const cplx& operator()(int r, int c) const { return e[2 * r + c]; }

  static constexpr Matrix2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Matrix2c zero() { return {}; }

  cplx det() const { return e[0] * e[3] - e[1] * e[2]; }
  cplx trace() const { return e[0] + e[3]; }
  Matrix2c adjoint() const;
  Matrix2c transpose() const { return {e[0], e[2], e[1], e[3]}; }
  Matrix2c conj() const;
  /// Throws std::domain_error when |det| < 1e-300.
  Matrix2c inverse() const;

  Matrix2c& operator+=(const Matrix2c& o);
  Matrix2c& operator-=(const Matrix2c& o);
  Matrix2c& operator*=(cplx s);
};

Matrix2c operator+(Matrix2c a, const Matrix2c& b);
Matrix2c operator-(Matrix2c a, const Matrix2c& b);
Matrix2c operator-(const Matrix2c& a);
Matrix2c operator*(const Matrix2c& a, const Matrix2c& b);
Matrix2c operator*(cplx s, Matrix2c a);
Matrix2c operator*(Matrix2c a, cplx s);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix2c& a, const Matrix2c& b);
double max_abs(const Matrix2c& a);

/// Pauli matrices; index 0 is the identity.
Matrix2c pauli(int k);

/// |det - 1| <= tol.
bool is_unimodular(const Matrix2c& a, double tol = 1e-12);
/// Unimodular and ||A A^dagger - I||_max <= tol.
bool is_su2(const Matrix2c& a, double tol = 1e-12);
bool is_hermitian(const Matrix2c& a, double tol = 1e-12);

/// exp(i * angle/2 * n.sigma) for a unit axis n.
Matrix2c su2_rotation(const std::array<double, 3>& axis, double angle);
/// exp(rapidity/2 * n.sigma) for a unit axis n.
Matrix2c sl2c_boost(const std::array<double, 3>& axis, double rapidity);

}  // namespace rqm
