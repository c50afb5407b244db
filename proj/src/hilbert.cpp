#include "rqm/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace rqm {

namespace {

// Physicists' Hermite polynomials H_0..H_n at u.
void hermite(int n, double u, double* h) {
  h[0] = 1.0;
  if (n >= 1) h[1] = 2.0 * u;
  for (int j = 1; j < n; ++j) h[j + 1] = 2.0 * u * h[j] - 2.0 * j * h[j - 1];
}

constexpr int kMaxAxisDegree = 31;

double factorial(int n) {
  double f = 1.0;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

const double kInvCube = std::pow(2.0 * std::numbers::pi, -1.5);

void check_spin(const std::vector<TestFunction>& fs, Spin s) {
  for (const auto& f : fs)
    if (!(f.spin() == s)) throw std::invalid_argument("inner product: spin mismatch");
}

// Transforms of every function at every node: rows (node, mu), one column per function.
Eigen::MatrixXcd transform_table(const std::vector<TestFunction>& fs, const MomentumGrid& grid,
                                 double m, int dim) {
  std::vector<MomentumWaveFunction> tf;
  tf.reserve(fs.size());
  for (const auto& f : fs) tf.emplace_back(f, m);
  Eigen::MatrixXcd table(static_cast<Eigen::Index>(grid.size()) * dim,
                         static_cast<Eigen::Index>(fs.size()));
  parallel_for(grid.size(), [&](std::size_t n) {
    std::vector<cplx> buf(static_cast<std::size_t>(dim));
    for (std::size_t j = 0; j < tf.size(); ++j) {
      tf[j].evaluate_into(grid.p[n], buf.data());
      for (int mu = 0; mu < dim; ++mu)
        table(static_cast<Eigen::Index>(n) * dim + mu, static_cast<Eigen::Index>(j)) = buf[mu];
    }
  });
  return table;
}

Eigen::MatrixXcd products_on_grid(const std::vector<TestFunction>& fs,
                                  const std::vector<TestFunction>& gs, KernelVariant v,
                                  const MassSpin& ms, const MomentumGrid& grid) {
  const int dim = ms.s.dim();
  const Eigen::MatrixXcd F = transform_table(fs, grid, ms.m, dim);
  const Eigen::MatrixXcd G = transform_table(gs, grid, ms.m, dim);
  // Apply w_n K(p_n) blockwise to G.
  Eigen::MatrixXcd KG(G.rows(), G.cols());
  parallel_for(grid.size(), [&](std::size_t n) {
    const SpinMatrix K = grid.weight[n] * onshell_kernel(v, ms, grid.p[n]);
    const auto row = static_cast<Eigen::Index>(n) * dim;
    KG.middleRows(row, dim) = K * G.middleRows(row, dim);
  });
  return F.adjoint() * KG;
}

}  // namespace

MomentumWaveFunction::MomentumWaveFunction(const TestFunction& f, double m)
    : spin_(f.spin()), m_(m) {
  if (!(m > 0.0)) throw std::invalid_argument("laplace_fourier_transform: mass must be positive");
  static const cplx kPowI[4] = {1.0, cplx(0.0, -1.0), -1.0, cplx(0.0, 1.0)};
  for (int mu = 0; mu < spin_.dim(); ++mu)
    for (const Term& t : f.component(mu)) {
      if (std::max({t.a, t.b, t.c, t.k}) >= kMaxAxisDegree)
        throw std::domain_error("transform: degree too high");
      auto it = std::find_if(envelopes_.begin(), envelopes_.end(), [&](const Envelope& e) {
        return e.alpha == t.alpha && e.tau0 == t.tau0 && e.beta == t.beta && e.center == t.center;
      });
      if (it == envelopes_.end()) {
        envelopes_.push_back({t.alpha, t.tau0, t.beta, t.center});
        it = envelopes_.end() - 1;
      }
      it->max_k = std::max(it->max_k, t.k);
      it->max_deg[0] = std::max(it->max_deg[0], t.a);
      it->max_deg[1] = std::max(it->max_deg[1], t.b);
      it->max_deg[2] = std::max(it->max_deg[2], t.c);
      const int deg = t.spatial_degree();
      const cplx factor = t.coeff * factorial(t.k) * std::pow(std::numbers::pi / t.beta, 1.5) * kInvCube *
                          kPowI[deg % 4] * std::pow(0.5 / std::sqrt(t.beta), deg);
      slots_.push_back({mu, static_cast<int>(it - envelopes_.begin()), t.k, t.a, t.b, t.c, factor});
    }
}

void MomentumWaveFunction::evaluate_into(const Vec3& p, cplx* out) const {
  const double p2 = norm2(p);
  const double w = std::sqrt(m_ * m_ + p2);
  for (int mu = 0; mu < spin_.dim(); ++mu) out[mu] = 0.0;
  double h[3][kMaxAxisDegree + 1];
  double inv_pow[kMaxAxisDegree + 2];
  for (std::size_t e = 0; e < envelopes_.size(); ++e) {
    const Envelope& env = envelopes_[e];
    const double inv = 0.5 / std::sqrt(env.beta);
    for (int i = 0; i < 3; ++i) hermite(env.max_deg[i], p[i] * inv, h[i]);
    const double r = 1.0 / (env.alpha + w);
    inv_pow[0] = r;
    for (int k = 1; k <= env.max_k; ++k) inv_pow[k] = inv_pow[k - 1] * r;
    const double pc = dot(p, env.center);
    const cplx common =
        std::exp(-w * env.tau0 - p2 / (4.0 * env.beta)) * cplx(std::cos(pc), -std::sin(pc));
    for (const Slot& s : slots_) {
      if (s.envelope != static_cast<int>(e)) continue;
      out[s.component] += s.factor * common * (inv_pow[s.k] * h[0][s.a] * h[1][s.b] * h[2][s.c]);
    }
  }
}

std::vector<cplx> MomentumWaveFunction::evaluate(const Vec3& p) const {
  std::vector<cplx> out(static_cast<std::size_t>(spin_.dim()));
  evaluate_into(p, out.data());
  return out;
}

MomentumWaveFunction laplace_fourier_transform(const TestFunction& f, double m) {
  return MomentumWaveFunction(f, m);
}

double momentum_extent(const TestFunction& f) {
  double p_max = 0.0;
  for (const auto& comp : f.components())
    for (const Term& t : comp) p_max = std::max(p_max, 2.0 * std::sqrt(t.beta) * (6.5 + 0.5 * t.spatial_degree()));
  return p_max;
}

MomentumGrid grid_for(const std::vector<const TestFunction*>& fs, const MassSpin& ms,
                      const QuadratureOptions& opt, int refine) {
  double p_max = 0.0, c_max = 0.0;
  int deg = 0;
  for (const TestFunction* f : fs) {
    p_max = std::max(p_max, momentum_extent(*f));
    for (const auto& comp : f->components())
      for (const Term& t : comp) {
        c_max = std::max(c_max, std::sqrt(norm2(t.center)));
        deg = std::max(deg, t.spatial_degree());
      }
  }
  if (p_max == 0.0) p_max = ms.m;
  if (opt.rule == QuadratureRule::Cube) return cube_grid(p_max, opt.cube_nodes * refine);

  // Angular bandwidth: relative phase e^{i p.(c_f - c_g)}, polynomial factors
  // of both functions, and the spin kernel.
  const double phase = 2.0 * c_max * p_max;
  const int band = static_cast<int>(std::ceil(phase)) + 2 * deg + ms.s.twice() + opt.angular_margin;
  const int n_theta = (band / 2 + 1) * refine;
  const int n_phi = (band + 2) * refine;
  const int n_radial = (opt.radial_nodes + static_cast<int>(std::ceil(phase))) * refine;
  return spherical_grid(ms.m, p_max, n_radial, n_theta, n_phi);
}

InnerProductMatrix inner_product_matrix(const std::vector<TestFunction>& fs,
                                        const std::vector<TestFunction>& gs, KernelVariant v,
                                        const MassSpin& ms, const QuadratureOptions& opt) {
  check_spin(fs, ms.s);
  check_spin(gs, ms.s);
  std::vector<const TestFunction*> all;
  for (const auto& f : fs) all.push_back(&f);
  for (const auto& g : gs) all.push_back(&g);

  InnerProductMatrix out;
  out.values = products_on_grid(fs, gs, v, ms, grid_for(all, ms, opt, 1));
  if (opt.check_refinement) {
    const Eigen::MatrixXcd fine = products_on_grid(fs, gs, v, ms, grid_for(all, ms, opt, 2));
    const double scale = std::max(out.values.cwiseAbs().maxCoeff(), 1e-300);
    out.refinement_change = (fine - out.values).cwiseAbs().maxCoeff() / scale;
    out.converged = out.refinement_change <= opt.refinement_tolerance;
  }
  return out;
}

cplx inner_product(const TestFunction& f, const TestFunction& g, KernelVariant v, const MassSpin& ms,
                   const QuadratureOptions& opt) {
  return inner_product_matrix({f}, {g}, v, ms, opt).values(0, 0);
}

GramReport gram_matrix(const std::vector<TestFunction>& fs, KernelVariant v, const MassSpin& ms,
                       const QuadratureOptions& opt) {
  if (fs.empty()) throw std::invalid_argument("gram_matrix: need at least one function");
  const InnerProductMatrix ip = inner_product_matrix(fs, fs, v, ms, opt);
  GramReport r;
  r.size = static_cast<int>(fs.size());
  r.matrix = ip.values;
  r.converged = ip.converged;
  const double scale = std::max(r.matrix.cwiseAbs().maxCoeff(), 1e-300);
  r.hermiticity_deviation = (r.matrix - r.matrix.adjoint()).cwiseAbs().maxCoeff() / scale;
  r.hermitian = r.hermiticity_deviation < 1e-10;
  const Eigen::MatrixXcd sym = 0.5 * (r.matrix + r.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.max_eigenvalue = es.eigenvalues().maxCoeff();
  r.pass = r.hermitian && r.min_eigenvalue >= -1e-10 * std::max(1.0, r.max_eigenvalue);
  return r;
}

}  // namespace rqm
