#include "rqm/spacetime.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rqm {

double FourVectorE::operator[](int mu) const {
  switch (mu) {
    case 0: return tau;
    case 1: return x;
    case 2: return y;
    case 3: return z;
    default: throw std::out_of_range("FourVectorE: index must be 0..3");
  }
}

std::string_view to_string(KernelVariant v) {
  switch (v) {
    case KernelVariant::Right: return "right";
    case KernelVariant::RightDual: return "right_dual";
    case KernelVariant::Left: return "left";
    case KernelVariant::LeftDual: return "left_dual";
  }
  return "unknown";
}

KernelVariant parse_variant(std::string_view name) {
  if (name == "right") return KernelVariant::Right;
  if (name == "right_dual" || name == "right-dual") return KernelVariant::RightDual;
  if (name == "left") return KernelVariant::Left;
  if (name == "left_dual" || name == "left-dual") return KernelVariant::LeftDual;
  throw std::invalid_argument("unknown kernel variant: " + std::string(name));
}

PoincareElement PoincareElement::make(const Matrix2c& lambda, const Matrix2c& a) {
  if (!is_unimodular(lambda, 1e-12))
    throw std::invalid_argument("PoincareElement: Lambda must have unit determinant");
  if (!is_hermitian(a, 1e-12))
    throw std::invalid_argument("PoincareElement: translation must be Hermitian");
  return {lambda, a};
}

PoincareElement PoincareElement::inverse() const {
  const Matrix2c li = lambda.inverse();
  return {li, -(li * a * li.adjoint())};
}

FourVectorM PoincareElement::translation() const { return matrix_to_mink(a); }

Matrix2c mink_to_matrix(const FourVectorM& x) {
  return {cplx(x.t + x.z), cplx(x.x, -x.y), cplx(x.x, x.y), cplx(x.t - x.z)};
}

FourVectorM matrix_to_mink(const Matrix2c& X) {
  if (!is_hermitian(X, 1e-10))
    throw std::invalid_argument("matrix_to_mink: matrix is not Hermitian");
  // x^mu = 1/2 Tr(X sigma_mu)
  FourVectorM x;
  x.t = 0.5 * (X(0, 0) + X(1, 1)).real();
  x.x = 0.5 * (X(0, 1) + X(1, 0)).real();
  x.y = 0.5 * (X(1, 0) - X(0, 1)).imag();
  x.z = 0.5 * (X(0, 0) - X(1, 1)).real();
  return x;
}

Matrix2c eucl_basis(int mu, KernelVariant v) {
  if (mu == 0) return kI * Matrix2c::identity();
  const Matrix2c s = pauli(mu);
  switch (v) {
    case KernelVariant::Right: return s;
    case KernelVariant::RightDual: return pauli(2) * s * pauli(2);
    case KernelVariant::Left: return s.transpose();
    case KernelVariant::LeftDual: return pauli(2) * s.transpose() * pauli(2);
  }
  throw std::invalid_argument("eucl_basis: bad variant");
}

Matrix2c eucl_to_matrix(const FourVectorE& x, KernelVariant v) {
  Matrix2c out = x.tau * eucl_basis(0, v);
  out += cplx(x.x) * eucl_basis(1, v);
  out += cplx(x.y) * eucl_basis(2, v);
  out += cplx(x.z) * eucl_basis(3, v);
  return out;
}

Matrix2c onshell_matrix(const Vec3& p, double m, KernelVariant v) {
  const double w = std::sqrt(m * m + norm2(p));
  // i * (-i omega) = omega on the time component.
  Matrix2c out = cplx(w) * Matrix2c::identity();
  for (int k = 0; k < 3; ++k) out += cplx(p[k]) * eucl_basis(k + 1, v);
  return out;
}

PoincareElement compose_poincare(const PoincareElement& g2, const PoincareElement& g1) {
  return {g2.lambda * g1.lambda, g2.lambda * g1.a * g2.lambda.adjoint() + g2.a};
}

Mat4 lorentz_from_sl2c(const Matrix2c& A) {
  if (!is_unimodular(A, 1e-10))
    throw std::domain_error("lorentz_from_sl2c: |det A - 1| > 1e-10");
  Mat4 L;
  const Matrix2c Ad = A.adjoint();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      L(mu, nu) = 0.5 * (pauli(mu) * A * pauli(nu) * Ad).trace().real();
  return L;
}

Mat4c orth_from_pair_complex(const Matrix2c& A, const Matrix2c& B) {
  if (!is_unimodular(A, 1e-10) || !is_unimodular(B, 1e-10))
    throw std::domain_error("orth_from_pair: |det - 1| > 1e-10");
  Mat4c O;
  const Matrix2c Bt = B.transpose();
  for (int mu = 0; mu < 4; ++mu) {
    const Matrix2c left = eucl_basis(mu, KernelVariant::Right).adjoint() * A;
    for (int nu = 0; nu < 4; ++nu)
      O(mu, nu) = 0.5 * (left * eucl_basis(nu, KernelVariant::Right) * Bt).trace();
  }
  return O;
}

Mat4 orth_from_pair(const Matrix2c& A, const Matrix2c& B) {
  if (!is_su2(A, 1e-10) || !is_su2(B, 1e-10))
    throw std::domain_error("orth_from_pair: real output requires A, B in SU(2)");
  return orth_from_pair_complex(A, B).real();
}

Mat4 minkowski_metric() { return Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal(); }
Mat4 time_reflection() { return Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal(); }

FourVectorM on_shell(const Vec3& p, double m) {
  return {std::sqrt(m * m + norm2(p)), p[0], p[1], p[2]};
}

FourVectorM lorentz_apply(const Matrix2c& lambda, const FourVectorM& x) {
  Matrix2c X = lambda * mink_to_matrix(x) * lambda.adjoint();
  // Restore exact hermiticity lost to rounding before reading components.
  X = 0.5 * (X + X.adjoint());
  return matrix_to_mink(X);
}

FourVectorE apply(const Mat4& O, const FourVectorE& x) {
  const Eigen::Vector4d v(x.tau, x.x, x.y, x.z);
  const Eigen::Vector4d r = O * v;
  return {r[0], r[1], r[2], r[3]};
}

Matrix2c canonical_boost(const Vec3& p, double m) {
  if (!(m > 0.0)) throw std::domain_error("canonical_boost: mass must be positive");
  const double w = std::sqrt(m * m + norm2(p));
  const double scale = 1.0 / std::sqrt(2.0 * m * (m + w));
  const Matrix2c ps{p[2], cplx(p[0], -p[1]), cplx(p[0], p[1]), -p[2]};
  return cplx(scale) * (cplx(m + w) * Matrix2c::identity() + ps);
}

PolarDecomposition polar_decompose(const Matrix2c& L) {
  const double absdet = std::abs(L.det());
  if (absdet < 1e-14) throw std::domain_error("polar_decompose: singular matrix");
  // Principal root of the positive 2x2 matrix M = L L^dagger:
  // sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
  Matrix2c M = L * L.adjoint();
  M = 0.5 * (M + M.adjoint());
  const double sdet = absdet;  // sqrt(det M) = |det L|
  const double denom = std::sqrt(M.trace().real() + 2.0 * sdet);
  Matrix2c boost = cplx(1.0 / denom) * (M + cplx(sdet) * Matrix2c::identity());
  return {boost, boost.inverse() * L};
}

Matrix2c wigner_rotation(const Matrix2c& L, const Vec3& p, double m) {
  const Vec3 lp = lorentz_apply(L, on_shell(p, m)).spatial();
  return canonical_boost(lp, m).inverse() * L * canonical_boost(p, m);
}

Matrix2c wigner_rotation_adjoint_form(const Matrix2c& L, const Vec3& p, double m) {
  const Vec3 lp = lorentz_apply(L, on_shell(p, m)).spatial();
  return canonical_boost(lp, m).adjoint() * L.adjoint().inverse() *
         canonical_boost(p, m).adjoint().inverse();
}

}  // namespace rqm
