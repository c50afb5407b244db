#pragma once

#include <array>
#include <string_view>

#include <Eigen/Core>

#include "rqm/matrix2c.hpp"

namespace rqm {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm2(const Vec3& a) { return dot(a, a); }

/// Minkowski four-vector, metric diag(-1, +1, +1, +1).
struct FourVectorM {
  double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

  Vec3 spatial() const { return {x, y, z}; }
  /// (x^0)^2 - |x|^2, which is det of the matrix image.
  double minkowski_square() const { return t * t - x * x - y * y - z * z; }
};

/// Euclidean four-vector; tau is Euclidean time.
struct FourVectorE {
  double tau = 0.0, x = 0.0, y = 0.0, z = 0.0;

  Vec3 spatial() const { return {x, y, z}; }
  double norm2() const { return tau * tau + x * x + y * y + z * z; }
  /// Euclidean time reflection theta.
  FourVectorE reflected() const { return {-tau, x, y, z}; }
  double operator[](int mu) const;
};

/// Which of the four 2x2 realisations of a Euclidean four-vector is used:
/// sigma_e, sigma_2 sigma_e sigma_2, sigma_e^t, sigma_2 sigma_e^t sigma_2.
enum class KernelVariant { Right, RightDual, Left, LeftDual };

inline constexpr std::array<KernelVariant, 4> kAllVariants{
    KernelVariant::Right, KernelVariant::RightDual, KernelVariant::Left, KernelVariant::LeftDual};

std::string_view to_string(KernelVariant v);
/// Accepts "right", "right_dual", "right-dual", "left", "left_dual", "left-dual".
KernelVariant parse_variant(std::string_view name);

/// Element (Lambda, A) of inhomogeneous SL(2,C); A is the Hermitian
/// translation matrix a^mu sigma_mu.
struct PoincareElement {
  Matrix2c lambda = Matrix2c::identity();
  Matrix2c a = Matrix2c::zero();

  /// Validates unimodularity (1e-12) and hermiticity of the translation.
  static PoincareElement make(const Matrix2c& lambda, const Matrix2c& a);
  static PoincareElement identity() { return {}; }

  /// (Lambda^-1, -Lambda^-1 A Lambda^-dagger).
  PoincareElement inverse() const;
  FourVectorM translation() const;
};

Matrix2c mink_to_matrix(const FourVectorM& x);
/// Throws std::invalid_argument when ||X - X^dagger||_max > 1e-10.
FourVectorM matrix_to_mink(const Matrix2c& X);

/// Basis matrix multiplying component mu (0 = tau) in the given variant.
Matrix2c eucl_basis(int mu, KernelVariant v);
Matrix2c eucl_to_matrix(const FourVectorE& x, KernelVariant v);

/// Minkowski matrix image of an on-shell momentum in a variant, i.e. the
/// Euclidean matrix continued to p^0_e = -i omega.
Matrix2c onshell_matrix(const Vec3& p, double m, KernelVariant v);

/// Composition g2 * g1 of Poincare elements.
PoincareElement compose_poincare(const PoincareElement& g2, const PoincareElement& g1);

using Mat4 = Eigen::Matrix4d;
using Mat4c = Eigen::Matrix4cd;

/// Lambda^mu_nu = 1/2 Tr(sigma_mu A sigma_nu A^dagger).
Mat4 lorentz_from_sl2c(const Matrix2c& A);
/// O(A,B)^mu_nu = 1/2 Tr(sigma_e_mu^dagger A sigma_e_nu B^t); complex for general unimodular pairs.
Mat4c orth_from_pair_complex(const Matrix2c& A, const Matrix2c& B);
/// Real orthogonal matrix for A, B in SU(2). Throws std::domain_error otherwise.
Mat4 orth_from_pair(const Matrix2c& A, const Matrix2c& B);

/// Minkowski metric diag(-1,1,1,1) and Euclidean time reflection diag(-1,1,1,1).
Mat4 minkowski_metric();
Mat4 time_reflection();

FourVectorM on_shell(const Vec3& p, double m);
/// Lambda X Lambda^dagger on the matrix image.
FourVectorM lorentz_apply(const Matrix2c& lambda, const FourVectorM& x);
/// Applies a 4x4 matrix acting on (tau, x, y, z).
FourVectorE apply(const Mat4& O, const FourVectorE& x);

/// Rotationless boost exp(rho.sigma/2) taking (m, 0) to (omega, p); unit
/// determinant, Lambda_c Lambda_c^dagger = (p.sigma)/m. Throws for m <= 0.
Matrix2c canonical_boost(const Vec3& p, double m);

struct PolarDecomposition {
  Matrix2c boost;     ///< (L L^dagger)^(1/2), positive Hermitian
  Matrix2c rotation;  ///< boost^-1 L, unitary
};

/// L = boost * rotation. Throws std::domain_error when |det L| < 1e-14.
PolarDecomposition polar_decompose(const Matrix2c& L);

/// Lambda_c^-1(Lambda p) L Lambda_c(p).
Matrix2c wigner_rotation(const Matrix2c& L, const Vec3& p, double m);
/// Second form: Lambda_c^dagger(Lambda p) (L^dagger)^-1 Lambda_c^dagger^-1(p).
Matrix2c wigner_rotation_adjoint_form(const Matrix2c& L, const Vec3& p, double m);

}  // namespace rqm
