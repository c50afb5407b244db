#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "rqm/check_report.hpp"
#include "rqm/kernels.hpp"
#include "rqm/quadrature.hpp"
#include "rqm/spacetime.hpp"
#include "rqm/test_function.hpp"

namespace rqm {

/// Writes the 2s+1 canonical-spin components at momentum p.
using SpinorFunction = std::function<void(const Vec3& p, cplx* out)>;

/// Momentum-space vector of the mass m, spin s irreducible representation,
/// normalised with plain d^3p: <a|b> = int d^3p sum_mu conj(a_mu) b_mu.
class IrrepState {
 public:
  /// p_extent bounds the momenta where psi is not negligible.
  IrrepState(const MassSpin& ms, SpinorFunction psi, double p_extent);

  /// Canonical-spin wave function m^s D(Lambda_c(p))^dagger F(p) / sqrt(omega)
  /// of a test function; <f|g> for the right-handed kernel equals <psi_f|psi_g>.
  static IrrepState from_test_function(const TestFunction& f, const MassSpin& ms);

  const MassSpin& mass_spin() const { return ms_; }
  double p_extent() const { return extent_; }
  std::vector<cplx> operator()(const Vec3& p) const;
  void evaluate_into(const Vec3& p, cplx* out) const { (*psi_)(p, out); }

 private:
  MassSpin ms_;
  std::shared_ptr<const SpinorFunction> psi_;
  double extent_;
};

/// (U(Lambda, a) psi)(p) = exp(i (p.a)) D^s(W) psi(q) sqrt(omega(q)/omega(p)) with
/// q = Lambda^-1 p, W = Lambda_c(p)^-1 Lambda Lambda_c(q) and the Minkowski
/// product p.a = -omega a^0 + p.a. Evaluated lazily by pullback.
IrrepState apply_poincare_irrep(const IrrepState& state, const PoincareElement& g);

struct StateGridOptions {
  int radial = 64;
  int theta = 48;
  int phi = 96;
};

MomentumGrid state_grid(double p_extent, double m, const StateGridOptions& opt = {});

cplx state_inner_product(const IrrepState& a, const IrrepState& b, const MomentumGrid& grid);
double state_norm(const IrrepState& a, const MomentumGrid& grid);
/// ||a - b|| on the grid.
double state_distance(const IrrepState& a, const IrrepState& b, const MomentumGrid& grid);

/// Transform of f (canonical spin) times exp(-|p - p0|^2 / (2 w^2)).
/// Throws std::invalid_argument unless w > 0.
IrrepState momentum_project(const TestFunction& f, const MassSpin& ms, const Vec3& p0, double width);

/// (2s+1) int dR conj(D^s_{mu mu}(R)) U(R) psi over normalised SU(2) Haar
/// measure, with Euler angles R = e^{i a s3/2} e^{i b s2/2} e^{i g s3/2}:
/// trapezoid in a and g, Gauss-Legendre in cos b, `nodes` points each.
IrrepState spin_project(const IrrepState& state, int twice_mu, int nodes = 16);

/// ||U(g2) U(g1) psi - U(g2 g1) psi|| / ||psi||.
CheckReport check_irrep_group_law(const IrrepState& psi, const PoincareElement& g1,
                                  const PoincareElement& g2, const StateGridOptions& opt = {},
                                  double tolerance = 1e-6);

/// | ||U(g) psi|| - ||psi|| | / ||psi||.
CheckReport check_irrep_unitarity(const IrrepState& psi, const PoincareElement& g,
                                  const StateGridOptions& opt = {}, double tolerance = 1e-6);

/// Max over probe momenta of |U(R_z(theta)) psi - e^{i mu theta} psi| / max |psi|.
CheckReport check_rotation_phase(const IrrepState& psi, int twice_mu, double theta,
                                 const std::vector<Vec3>& probes, double tolerance = 1e-4);

/// e^{rho} for the boost part of lambda, i.e. the largest singular value squared.
double boost_factor(const Matrix2c& lambda);

}  // namespace rqm
