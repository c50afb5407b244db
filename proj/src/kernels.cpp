#include "rqm/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rqm/bessel.hpp"

namespace rqm {

namespace {

FourVectorE unit(int mu) {
  FourVectorE e;
  switch (mu) {
    case 0: e.tau = 1.0; break;
    case 1: e.x = 1.0; break;
    case 2: e.y = 1.0; break;
    default: e.z = 1.0; break;
  }
  return e;
}

FourVectorE sum(const FourVectorE& a, const FourVectorE& b) {
  return {a.tau + b.tau, a.x + b.x, a.y + b.y, a.z + b.z};
}

SpinMatrix numerator(KernelVariant v, Spin s, const FourVectorE& p) {
  return wigner_d_polynomial(s, eucl_to_matrix(p, v));
}

}  // namespace

MassSpin MassSpin::make(double m, Spin s) {
  if (!(m > 0.0)) throw std::invalid_argument("MassSpin: mass must be positive");
  return {m, s};
}

SpinMatrix momentum_kernel(KernelVariant v, const MassSpin& ms, const FourVectorE& p_e) {
  const double den = p_e.norm2() + ms.m * ms.m;
  if (!(den > 1e-14)) throw std::domain_error("momentum_kernel: on the Euclidean mass pole");
  return numerator(v, ms.s, p_e) / den;
}

SpinMatrix onshell_kernel(KernelVariant v, const MassSpin& ms, const Vec3& p) {
  const double m = ms.m;
  const Vec3 pu{p[0] / m, p[1] / m, p[2] / m};
  const double wu = std::sqrt(1.0 + norm2(pu));
  // m^{2s} D(X/m) / omega = m^{2s-1} D(X/m) / omega_unit
  const double scale = std::pow(m, ms.s.twice() - 1) / wu;
  return scale * wigner_d_polynomial(ms.s, onshell_matrix(pu, 1.0, v));
}

SpinMatrix position_kernel(KernelVariant v, const MassSpin& ms, const FourVectorE& z) {
  const int ts = ms.s.twice();
  if (ts > 2) throw std::domain_error("position_kernel: only s <= 1 is supported");
  const double r = std::sqrt(z.norm2());
  if (!(r > 0.0)) throw std::domain_error("position_kernel: singular at z = 0");
  const double m = ms.m;
  const double u = m * r;
  const double c = 2.0 * m * m / (4.0 * std::numbers::pi * std::numbers::pi);

  const BesselK01 k01 = bessel_k01(u);
  const double k1 = k01.k1;
  if (ts == 0) return SpinMatrix::Constant(1, 1, c * k1 / u);

  // g(u) = K1(u)/u, g' = -K2/u, g'' = K3/u - K2/u^2.
  const double k2 = k01.k0 + (2.0 / u) * k1;
  const double gp = -k2 / u;
  const std::array<double, 4> zc{z.tau, z.x, z.y, z.z};

  // d_mu S0 = c m g'(u) z_mu / r
  std::array<double, 4> grad{};
  for (int mu = 0; mu < 4; ++mu) grad[mu] = c * m * gp * zc[mu] / r;

  if (ts == 1) {
    // D^{1/2}(X(p)) = sum_mu p_mu E_mu, p_mu -> -i d_mu.
    SpinMatrix out = SpinMatrix::Zero(2, 2);
    for (int mu = 0; mu < 4; ++mu) out += (-kI * grad[mu]) * numerator(v, ms.s, unit(mu));
    return out;
  }

  const double k3 = k1 + (4.0 / u) * k2;
  const double gpp = k3 / u - k2 / (u * u);
  // d_mu d_nu S0 = c [g'' m^2 z_mu z_nu / r^2 + g' m (delta_mu_nu / r - z_mu z_nu / r^3)]
  auto hess = [&](int mu, int nu) {
    const double zz = zc[mu] * zc[nu];
    return c * (gpp * m * m * zz / (r * r) + gp * m * ((mu == nu ? 1.0 : 0.0) / r - zz / (r * r * r)));
  };
  // Quadratic form Q(p) = sum C_{mu nu} p_mu p_nu recovered by polarization.
  std::array<SpinMatrix, 4> diag;
  for (int mu = 0; mu < 4; ++mu) diag[mu] = numerator(v, ms.s, unit(mu));
  SpinMatrix out = SpinMatrix::Zero(3, 3);
  for (int mu = 0; mu < 4; ++mu) {
    out -= hess(mu, mu) * diag[mu];
    for (int nu = mu + 1; nu < 4; ++nu) {
      const SpinMatrix cross = numerator(v, ms.s, sum(unit(mu), unit(nu))) - diag[mu] - diag[nu];
      out -= hess(mu, nu) * cross;
    }
  }
  return out;
}

CheckReport check_factorization(const MassSpin& ms, const Vec3& p, double tolerance) {
  const double m = ms.m;
  const Matrix2c lc = canonical_boost(p, m);
  const Matrix2c x = cplx(1.0 / m) * mink_to_matrix(on_shell(p, m));
  const SpinMatrix dl = wigner_d(ms.s, lc);
  const double dev = (wigner_d_polynomial(ms.s, x) - dl * dl.adjoint()).cwiseAbs().maxCoeff();
  return CheckReport::make("kernels.factorization",
                           {{"m", m}, {"spin", spin_label(ms.s)}, {"p", p}}, dev, tolerance);
}

std::pair<Matrix2c, Matrix2c> covariance_pair(KernelVariant v, const Matrix2c& A, const Matrix2c& B) {
  switch (v) {
    case KernelVariant::Right: return {A, B.transpose()};
    case KernelVariant::RightDual: return {A.conj(), B.adjoint()};
    case KernelVariant::Left: return {B, A.transpose()};
    case KernelVariant::LeftDual: return {B.conj(), A.adjoint()};
  }
  throw std::invalid_argument("covariance_pair: bad variant");
}

CheckReport check_kernel_covariance(KernelVariant v, const MassSpin& ms, const Matrix2c& A,
                                    const Matrix2c& B, const FourVectorE& p_e, double tolerance) {
  const Mat4 O = orth_from_pair(A, B);
  const auto [L, R] = covariance_pair(v, A, B);
  const SpinMatrix lhs = wigner_d(ms.s, L) * numerator(v, ms.s, p_e) * wigner_d(ms.s, R);
  const SpinMatrix rhs = numerator(v, ms.s, apply(O, p_e));
  const double dev = (lhs - rhs).cwiseAbs().maxCoeff();
  return CheckReport::make(
      "kernels.covariance",
      {{"variant", std::string(to_string(v))}, {"spin", spin_label(ms.s)},
       {"p_e", {p_e.tau, p_e.x, p_e.y, p_e.z}}},
      dev, tolerance);
}

}  // namespace rqm
