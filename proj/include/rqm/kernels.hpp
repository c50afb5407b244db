#pragma once

#include <optional>

#include "rqm/check_report.hpp"
#include "rqm/spacetime.hpp"
#include "rqm/spin.hpp"

namespace rqm {

/// Positive mass and spin labelling an irreducible representation.
struct MassSpin {
  double m = 1.0;
  Spin s;

  /// Throws std::invalid_argument unless m > 0.
  static MassSpin make(double m, Spin s);
};

/// D^s(p_e in the variant's matrix form) / (p_e^2 + m^2).
/// Throws std::domain_error when p_e^2 + m^2 <= 1e-14.
SpinMatrix momentum_kernel(KernelVariant v, const MassSpin& ms, const FourVectorE& p_e);

/// On-shell kernel m^{2s} D^s(X/m) / omega with X the variant's Minkowski
/// matrix at p^0 = omega (the residue of momentum_kernel at p^0_e = -i omega).
SpinMatrix onshell_kernel(KernelVariant v, const MassSpin& ms, const Vec3& p);

/// Position-space kernel, the 4D Fourier transform of
/// 2 D^s(p_e) / ((2 pi)^4 (p_e^2 + m^2)). For s = 0 this is
/// (2 m^2 / (2 pi)^2) K1(m r) / (m r); for s = 1/2, 1 the momentum polynomial
/// becomes a derivative operator applied in closed form.
/// Throws std::domain_error for z = 0 and for s > 1.
SpinMatrix position_kernel(KernelVariant v, const MassSpin& ms, const FourVectorE& z);

/// ||D^s(p.sigma/m) - D^s(Lambda_c(p)) D^s(Lambda_c(p))^dagger||_max at the
/// on-shell momentum.
CheckReport check_factorization(const MassSpin& ms, const Vec3& p, double tolerance = 1e-10);

/// Matrix-pair covariance of the variant kernel numerator:
/// D^s(L) D^s(X_v(p_e)) D^s(R) against D^s(X_v(O(A,B) p_e)), where (L, R) is
/// (A, B^t), (A*, B^dagger), (B, A^t), (B*, A^dagger) for right, right_dual,
/// left, left_dual. Requires A, B in SU(2).
CheckReport check_kernel_covariance(KernelVariant v, const MassSpin& ms, const Matrix2c& A,
                                    const Matrix2c& B, const FourVectorE& p_e,
                                    double tolerance = 1e-11);

/// The (L, R) pair above.
std::pair<Matrix2c, Matrix2c> covariance_pair(KernelVariant v, const Matrix2c& A, const Matrix2c& B);

}  // namespace rqm
