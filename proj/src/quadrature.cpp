#include "rqm/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace rqm {

namespace {

GaussRule compute_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

std::atomic<unsigned> g_threads{0};

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(compute_rule(n));
  return *slot;
}

GaussRule gauss_legendre(int n, double a, double b) {
  GaussRule r = gauss_legendre(n);
  const double h = 0.5 * (b - a), c = 0.5 * (b + a);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    r.nodes[i] = c + h * r.nodes[i];
    r.weights[i] *= h;
  }
  return r;
}

MomentumGrid spherical_grid(double m, double p_max, int n_radial, int n_theta, int n_phi) {
  if (!(m > 0.0) || !(p_max > 0.0)) throw std::invalid_argument("spherical_grid: bad scale");
  const GaussRule rt = gauss_legendre(n_radial, 0.0, std::asinh(p_max / m));
  const GaussRule& ct = gauss_legendre(n_theta);
  MomentumGrid g;
  g.p.reserve(static_cast<std::size_t>(n_radial) * n_theta * n_phi);
  g.weight.reserve(g.p.capacity());
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  for (int ir = 0; ir < n_radial; ++ir) {
    const double t = rt.nodes[ir];
    const double p = m * std::sinh(t);
    // d^3p = p^2 dp dOmega, dp = m cosh t dt
    const double wr = rt.weights[ir] * p * p * m * std::cosh(t);
    for (int it = 0; it < n_theta; ++it) {
      const double c = ct.nodes[it];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int ip = 0; ip < n_phi; ++ip) {
        const double phi = (ip + 0.5) * dphi;
        g.p.push_back({p * s * std::cos(phi), p * s * std::sin(phi), p * c});
        g.weight.push_back(wr * ct.weights[it] * dphi);
      }
    }
  }
  return g;
}

MomentumGrid cube_grid(double p_max, int n) {
  const GaussRule r = gauss_legendre(n, -p_max, p_max);
  MomentumGrid g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        g.p.push_back({r.nodes[i], r.nodes[j], r.nodes[k]});
        g.weight.push_back(r.weights[i] * r.weights[j] * r.weights[k]);
      }
  return g;
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
  const unsigned n = g_threads.load();
  if (n != 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned nt = std::min<std::size_t>(thread_count(), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double pairwise_sum(const std::vector<double>& v) {
  std::vector<double> work(v);
  std::size_t n = work.size();
  if (n == 0) return 0.0;
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) work[i] = work[2 * i] + work[2 * i + 1];
    if (n % 2 == 1) work[half] = work[n - 1];
    n = half + n % 2;
  }
  return work[0];
}

}  // namespace rqm
