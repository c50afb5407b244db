#include "rqm/irrep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rqm/hilbert.hpp"
#include "rqm/spin.hpp"

namespace rqm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double omega(const Vec3& p, double m) { return std::sqrt(m * m + norm2(p)); }

// Pointwise values of a and b on the grid, reduced in a fixed order.
template <class F>
double grid_sum(const MomentumGrid& grid, F&& term) {
  std::vector<double> v(grid.size());
  parallel_for(grid.size(), [&](std::size_t n) { v[n] = grid.weight[n] * term(grid.p[n]); });
  return pairwise_sum(v);
}

}  // namespace

IrrepState::IrrepState(const MassSpin& ms, SpinorFunction psi, double p_extent)
    : ms_(ms), psi_(std::make_shared<const SpinorFunction>(std::move(psi))), extent_(p_extent) {
  if (!(p_extent > 0.0)) throw std::invalid_argument("IrrepState: extent must be positive");
}

std::vector<cplx> IrrepState::operator()(const Vec3& p) const {
  std::vector<cplx> out(static_cast<std::size_t>(ms_.s.dim()));
  evaluate_into(p, out.data());
  return out;
}

IrrepState IrrepState::from_test_function(const TestFunction& f, const MassSpin& ms) {
  if (!(f.spin() == ms.s)) throw std::invalid_argument("IrrepState: spin mismatch");
  const MomentumWaveFunction F(f, ms.m);
  const double scale = std::pow(ms.m, ms.s.value());
  const int dim = ms.s.dim();
  auto psi = [F, ms, scale, dim](const Vec3& p, cplx* out) {
    Eigen::VectorXcd v(dim);
    F.evaluate_into(p, v.data());
    const SpinMatrix B = wigner_d(ms.s, canonical_boost(p, ms.m));
    const Eigen::VectorXcd w = (scale / std::sqrt(omega(p, ms.m))) * (B.adjoint() * v);
    for (int i = 0; i < dim; ++i) out[i] = w[i];
  };
  return IrrepState(ms, psi, std::max(momentum_extent(f), ms.m));
}

double boost_factor(const Matrix2c& lambda) {
  const Matrix2c h = lambda * lambda.adjoint();
  const double tr = 0.5 * h.trace().real();
  const double det = h.det().real();
  return tr + std::sqrt(std::max(0.0, tr * tr - det));
}

IrrepState apply_poincare_irrep(const IrrepState& state, const PoincareElement& g) {
  const MassSpin ms = state.mass_spin();
  const Matrix2c lam = g.lambda;
  const Matrix2c inv = lam.inverse();
  const FourVectorM a = g.translation();
  const int dim = ms.s.dim();
  auto psi = [state, ms, lam, inv, a, dim](const Vec3& p, cplx* out) {
    const Vec3 q = lorentz_apply(inv, on_shell(p, ms.m)).spatial();
    const double wp = omega(p, ms.m), wq = omega(q, ms.m);
    Eigen::VectorXcd v(dim);
    state.evaluate_into(q, v.data());
    const SpinMatrix D = wigner_d(ms.s, wigner_rotation(lam, q, ms.m));
    const double phase = -wp * a.t + p[0] * a.x + p[1] * a.y + p[2] * a.z;
    const Eigen::VectorXcd w = (std::polar(std::sqrt(wq / wp), phase)) * (D * v);
    for (int i = 0; i < dim; ++i) out[i] = w[i];
  };
  const double e = boost_factor(lam);
  return IrrepState(ms, psi, e * (state.p_extent() + ms.m));
}

MomentumGrid state_grid(double p_extent, double m, const StateGridOptions& opt) {
  return spherical_grid(m, p_extent, opt.radial, opt.theta, opt.phi);
}

cplx state_inner_product(const IrrepState& a, const IrrepState& b, const MomentumGrid& grid) {
  if (!(a.mass_spin().s == b.mass_spin().s)) throw std::invalid_argument("state_inner_product: spin mismatch");
  const int dim = a.mass_spin().s.dim();
  std::vector<double> re(grid.size()), im(grid.size());
  parallel_for(grid.size(), [&](std::size_t n) {
    std::vector<cplx> x(dim), y(dim);
    a.evaluate_into(grid.p[n], x.data());
    b.evaluate_into(grid.p[n], y.data());
    cplx s = 0.0;
    for (int i = 0; i < dim; ++i) s += std::conj(x[i]) * y[i];
    re[n] = grid.weight[n] * s.real();
    im[n] = grid.weight[n] * s.imag();
  });
  return {pairwise_sum(re), pairwise_sum(im)};
}

double state_norm(const IrrepState& a, const MomentumGrid& grid) {
  const int dim = a.mass_spin().s.dim();
  return std::sqrt(grid_sum(grid, [&](const Vec3& p) {
    std::vector<cplx> x(dim);
    a.evaluate_into(p, x.data());
    double s = 0.0;
    for (const cplx& z : x) s += std::norm(z);
    return s;
  }));
}

double state_distance(const IrrepState& a, const IrrepState& b, const MomentumGrid& grid) {
  const int dim = a.mass_spin().s.dim();
  return std::sqrt(grid_sum(grid, [&](const Vec3& p) {
    std::vector<cplx> x(dim), y(dim);
    a.evaluate_into(p, x.data());
    b.evaluate_into(p, y.data());
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += std::norm(x[i] - y[i]);
    return s;
  }));
}

IrrepState momentum_project(const TestFunction& f, const MassSpin& ms, const Vec3& p0, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("momentum_project: width must be positive");
  const IrrepState base = IrrepState::from_test_function(f, ms);
  const int dim = ms.s.dim();
  auto psi = [base, p0, width, dim](const Vec3& p, cplx* out) {
    base.evaluate_into(p, out);
    const Vec3 d{p[0] - p0[0], p[1] - p0[1], p[2] - p0[2]};
    const double w = std::exp(-norm2(d) / (2.0 * width * width));
    for (int i = 0; i < dim; ++i) out[i] *= w;
  };
  return IrrepState(ms, psi, base.p_extent());
}

IrrepState spin_project(const IrrepState& state, int twice_mu, int nodes) {
  const MassSpin ms = state.mass_spin();
  const int idx = ms.s.index_of(twice_mu);
  if (idx < 0) throw std::invalid_argument("spin_project: magnetic number out of range");
  if (nodes < 2) throw std::invalid_argument("spin_project: need at least two nodes");

  struct Node {
    cplx weight;
    SpinMatrix D;
    Eigen::Matrix3d inverse_rotation;
  };
  auto table = std::make_shared<std::vector<Node>>();
  const GaussRule cb = gauss_legendre(nodes, -1.0, 1.0);
  const double h = kTwoPi / nodes;
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j)
      for (int k = 0; k < nodes; ++k) {
        const Matrix2c R = su2_rotation({0, 0, 1}, i * h) * su2_rotation({0, 1, 0}, std::acos(cb.nodes[j])) *
                           su2_rotation({0, 0, 1}, k * h);
        const SpinMatrix D = wigner_d(ms.s, R);
        const double haar = h * h * cb.weights[j] / (8.0 * std::numbers::pi * std::numbers::pi);
        const Mat4 L = lorentz_from_sl2c(R.adjoint());
        table->push_back({ms.s.dim() * haar * std::conj(D(idx, idx)), D, L.block<3, 3>(1, 1)});
      }
  const int dim = ms.s.dim();
  auto psi = [state, table, dim](const Vec3& p, cplx* out) {
    const Eigen::Vector3d pv(p[0], p[1], p[2]);
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim), v(dim);
    for (const Node& n : *table) {
      const Eigen::Vector3d q = n.inverse_rotation * pv;
      state.evaluate_into({q[0], q[1], q[2]}, v.data());
      acc += n.weight * (n.D * v);
    }
    for (int i = 0; i < dim; ++i) out[i] = acc[i];
  };
  return IrrepState(ms, psi, state.p_extent());
}

CheckReport check_irrep_group_law(const IrrepState& psi, const PoincareElement& g1,
                                  const PoincareElement& g2, const StateGridOptions& opt, double tolerance) {
  const IrrepState two_step = apply_poincare_irrep(apply_poincare_irrep(psi, g1), g2);
  const IrrepState one_step = apply_poincare_irrep(psi, compose_poincare(g2, g1));
  const MassSpin& ms = psi.mass_spin();
  const double extent = std::max(two_step.p_extent(), one_step.p_extent());
  const double dev = state_distance(two_step, one_step, state_grid(extent, ms.m, opt)) /
                     state_norm(psi, state_grid(psi.p_extent(), ms.m, opt));
  return CheckReport::make("irrep.group_law", {{"spin", spin_label(ms.s)}, {"m", ms.m}}, dev, tolerance);
}

CheckReport check_irrep_unitarity(const IrrepState& psi, const PoincareElement& g, const StateGridOptions& opt,
                                  double tolerance) {
  const IrrepState u = apply_poincare_irrep(psi, g);
  const MassSpin& ms = psi.mass_spin();
  const double n0 = state_norm(psi, state_grid(psi.p_extent(), ms.m, opt));
  const double n1 = state_norm(u, state_grid(u.p_extent(), ms.m, opt));
  return CheckReport::make("irrep.unitarity",
                           {{"spin", spin_label(ms.s)}, {"m", ms.m}, {"boost_factor", boost_factor(g.lambda)}},
                           std::abs(n1 - n0) / n0, tolerance);
}

CheckReport check_rotation_phase(const IrrepState& psi, int twice_mu, double theta,
                                 const std::vector<Vec3>& probes, double tolerance) {
  const PoincareElement rz = PoincareElement::make(su2_rotation({0, 0, 1}, theta), Matrix2c::zero());
  const IrrepState rotated = apply_poincare_irrep(psi, rz);
  const cplx phase = std::polar(1.0, 0.5 * twice_mu * theta);
  double dev = 0.0, scale = 0.0;
  for (const Vec3& p : probes) {
    const auto a = rotated(p), b = psi(p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      dev = std::max(dev, std::abs(a[i] - phase * b[i]));
      scale = std::max(scale, std::abs(b[i]));
    }
  }
  return CheckReport::make("projections.rotation_phase",
                           {{"spin", spin_label(psi.mass_spin().s)}, {"twice_mu", twice_mu}, {"theta", theta},
                            {"probes", probes.size()}},
                           scale > 0.0 ? dev / scale : INFINITY, tolerance);
}

}  // namespace rqm
