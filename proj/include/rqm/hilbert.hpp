#pragma once

#include <vector>

#include <Eigen/Core>

#include "rqm/kernels.hpp"
#include "rqm/quadrature.hpp"
#include "rqm/test_function.hpp"

namespace rqm {

/// Exact Laplace-Fourier image of a TestFunction,
/// F_mu(p) = (2 pi)^{-3/2} int d tau d^3x exp(-i p.x - omega tau) f_mu(tau, x),
/// omega = sqrt(m^2 + p^2). Each term maps to
/// coeff e^{-omega tau0} k!/(alpha+omega)^{k+1} (2 pi)^{-3/2} e^{-i p.c} prod_i G_{a_i}(p_i)
/// with G_a(q) = sqrt(pi/beta) (-i/(2 sqrt beta))^a H_a(q/(2 sqrt beta)) e^{-q^2/(4 beta)}.
class MomentumWaveFunction {
 public:
  MomentumWaveFunction(const TestFunction& f, double m);

  Spin spin() const { return spin_; }
  double mass() const { return m_; }
  std::vector<cplx> evaluate(const Vec3& p) const;
  /// Writes spin().dim() values to out.
  void evaluate_into(const Vec3& p, cplx* out) const;

 private:
  // Terms sharing (alpha, tau0, beta, center) share the exponentials.
  struct Envelope {
    double alpha, tau0, beta;
    Vec3 center;
    int max_k = 0;
    int max_deg[3] = {0, 0, 0};
  };
  struct Slot {
    int component;
    int envelope;
    int k, a, b, c;
    cplx factor;  // coefficient, k!, Gaussian normalization and (-i/(2 sqrt beta))^deg
  };

  Spin spin_;
  double m_;
  std::vector<Envelope> envelopes_;
  std::vector<Slot> slots_;
};

MomentumWaveFunction laplace_fourier_transform(const TestFunction& f, double m);

enum class QuadratureRule { Spherical, Cube };

struct QuadratureOptions {
  QuadratureRule rule = QuadratureRule::Spherical;
  int radial_nodes = 48;
  int cube_nodes = 48;
  /// Extra angular degree beyond the estimated bandwidth of the integrand.
  int angular_margin = 16;
  /// Also evaluate with doubled node counts and flag disagreement.
  bool check_refinement = false;
  double refinement_tolerance = 1e-8;
};

/// |p| beyond which every Gaussian factor of the transform is below about
/// exp(-42); 0 for the zero function.
double momentum_extent(const TestFunction& f);

/// Grid adapted to the Gaussian widths, centres and polynomial degrees of the
/// given functions. `refine` multiplies all node counts.
MomentumGrid grid_for(const std::vector<const TestFunction*>& fs, const MassSpin& ms,
                      const QuadratureOptions& opt, int refine = 1);

/// Matrix of inner products <f_i | g_j> for the variant's on-shell kernel.
struct InnerProductMatrix {
  Eigen::MatrixXcd values;
  bool converged = true;
  /// max |refined - default| / max |default| when refinement was requested.
  double refinement_change = 0.0;
};

InnerProductMatrix inner_product_matrix(const std::vector<TestFunction>& fs,
                                        const std::vector<TestFunction>& gs, KernelVariant v,
                                        const MassSpin& ms, const QuadratureOptions& opt = {});

/// sum_{mu nu} int d^3p conj(F_mu) K_{mu nu}(p) G_nu with K the on-shell kernel.
/// Throws std::invalid_argument on spin mismatch.
cplx inner_product(const TestFunction& f, const TestFunction& g, KernelVariant v, const MassSpin& ms,
                   const QuadratureOptions& opt = {});

struct GramReport {
  int size = 0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  /// ||G - G^dagger||_max / ||G||_max
  double hermiticity_deviation = 0.0;
  bool hermitian = true;
  bool pass = false;
  bool converged = true;
  Eigen::MatrixXcd matrix;
};

/// Pass iff the matrix is Hermitian (within 1e-10 relative) and
/// lambda_min >= -1e-10 max(1, lambda_max).
GramReport gram_matrix(const std::vector<TestFunction>& fs, KernelVariant v, const MassSpin& ms,
                       const QuadratureOptions& opt = {});

}  // namespace rqm
