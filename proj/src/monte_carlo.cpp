#include "rqm/monte_carlo.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/random/sobol.hpp>

#include "rqm/bessel.hpp"
#include "rqm/quadrature.hpp"

namespace rqm {

namespace {

constexpr int kDims = 8;
constexpr std::size_t kChunk = 4096;

double unit_interval(double u) {
  // Keeps quantiles finite after the random shift.
  constexpr double lo = 0x1p-53;
  return std::min(std::max(u, lo), 1.0 - lo);
}

}  // namespace

ImportanceDensity ImportanceDensity::for_function(const TestFunction& f) {
  if (f.empty()) throw std::invalid_argument("importance density: empty function");
  double alpha = INFINITY, beta = INFINITY, tau0 = INFINITY, wsum = 0.0;
  Vec3 c{};
  for (const auto& comp : f.components())
    for (const Term& t : comp) {
      alpha = std::min(alpha, t.alpha);
      beta = std::min(beta, t.beta);
      tau0 = std::min(tau0, t.tau0);
      const double w = std::abs(t.coeff);
      wsum += w;
      for (int i = 0; i < 3; ++i) c[i] += w * t.center[i];
    }
  for (int i = 0; i < 3; ++i) c[i] /= wsum;
  ImportanceDensity d;
  d.tau_min = tau0;
  d.rate = 0.8 * alpha;
  d.center = c;
  d.sigma = 1.0 / std::sqrt(1.6 * beta);
  return d;
}

FourVectorE ImportanceDensity::sample(const double* u) const {
  static const boost::math::normal_distribution<double> normal;
  FourVectorE x;
  x.tau = tau_min - std::log1p(-unit_interval(u[0])) / rate;
  x.x = center[0] + sigma * boost::math::quantile(normal, unit_interval(u[1]));
  x.y = center[1] + sigma * boost::math::quantile(normal, unit_interval(u[2]));
  x.z = center[2] + sigma * boost::math::quantile(normal, unit_interval(u[3]));
  return x;
}

double ImportanceDensity::pdf(const FourVectorE& x) const {
  if (x.tau < tau_min) return 0.0;
  const double d2 = (x.x - center[0]) * (x.x - center[0]) + (x.y - center[1]) * (x.y - center[1]) +
                    (x.z - center[2]) * (x.z - center[2]);
  return rate * std::exp(-rate * (x.tau - tau_min)) * std::exp(-d2 / (2.0 * sigma * sigma)) /
         std::pow(2.0 * std::numbers::pi * sigma * sigma, 1.5);
}

double scalar_position_kernel(double m, double r) {
  const double u = m * r;
  return 2.0 * m * m / (4.0 * std::numbers::pi * std::numbers::pi) * bessel_k1(u) / u;
}

McResult two_point_mc(const McSide& a, const McSide& b, double m, std::uint64_t seed,
                      const McOptions& opt) {
  if (!(m > 0.0)) throw std::invalid_argument("two_point_mc: mass must be positive");
  if (opt.replicates < 2) throw std::invalid_argument("two_point_mc: need at least two replicates");
  const std::size_t per = opt.points / static_cast<std::size_t>(opt.replicates);
  if (per == 0) throw std::invalid_argument("two_point_mc: too few points");

  std::vector<double> pts(per * kDims);
  {
    boost::random::sobol_engine<std::uint32_t, 32> qrng(kDims);
    for (double& u : pts) u = static_cast<double>(qrng()) * 0x1p-32;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double r_min = 1e-4 / m;

  McResult res;
  res.points = per * static_cast<std::size_t>(opt.replicates);
  std::vector<cplx> means;
  const std::size_t chunks = (per + kChunk - 1) / kChunk;
  for (int rep = 0; rep < opt.replicates; ++rep) {
    double shift[kDims];
    for (double& s : shift) s = uni(rng);
    std::vector<double> re(chunks), im(chunks);
    std::vector<std::size_t> excl(chunks);
    parallel_for(chunks, [&](std::size_t c) {
      std::vector<double> sr, si;
      std::size_t ex = 0;
      const std::size_t end = std::min(per, (c + 1) * kChunk);
      for (std::size_t n = c * kChunk; n < end; ++n) {
        double u[kDims];
        for (int d = 0; d < kDims; ++d) {
          u[d] = pts[n * kDims + d] + shift[d];
          if (u[d] >= 1.0) u[d] -= 1.0;
        }
        const FourVectorE x = a.density.sample(u), y = b.density.sample(u + 4);
        const cplx fa = a.f(x), fb = b.f(y);
        if (fa == 0.0 || fb == 0.0) {
          sr.push_back(0.0);
          si.push_back(0.0);
          continue;
        }
        const FourVectorE ax = apply(a.map, x), by = apply(b.map, y);
        const double r = std::sqrt((ax.tau - by.tau) * (ax.tau - by.tau) + (ax.x - by.x) * (ax.x - by.x) +
                                   (ax.y - by.y) * (ax.y - by.y) + (ax.z - by.z) * (ax.z - by.z));
        cplx v = 0.0;
        if (r < r_min)
          ++ex;
        else
          v = std::conj(fa) * scalar_position_kernel(m, r) * fb / (a.density.pdf(x) * b.density.pdf(y));
        sr.push_back(v.real());
        si.push_back(v.imag());
      }
      re[c] = pairwise_sum(sr);
      im[c] = pairwise_sum(si);
      excl[c] = ex;
    });
    means.emplace_back(pairwise_sum(re) / per, pairwise_sum(im) / per);
    for (std::size_t e : excl) res.excluded += e;
  }
  cplx mean = 0.0;
  for (const cplx& v : means) mean += v;
  mean /= static_cast<double>(means.size());
  double var = 0.0;
  for (const cplx& v : means) var += std::norm(v - mean);
  const double R = static_cast<double>(means.size());
  res.value = mean;
  res.std_error = std::sqrt(var / (R * (R - 1.0)));
  return res;
}

McResult position_inner_product_mc(const TestFunction& f, const TestFunction& g, const MassSpin& ms,
                                   std::uint64_t seed, const McOptions& opt) {
  if (ms.s.twice() != 0 || f.spin().twice() != 0 || g.spin().twice() != 0)
    throw std::invalid_argument("position_inner_product_mc: spin 0 only");
  McSide a{[&f](const FourVectorE& x) { return f.evaluate(x)[0]; }, ImportanceDensity::for_function(f),
           time_reflection()};
  McSide b{[&g](const FourVectorE& x) { return g.evaluate(x)[0]; }, ImportanceDensity::for_function(g)};
  return two_point_mc(a, b, ms.m, seed, opt);
}

CheckReport mc_crosscheck(const TestFunction& f, const TestFunction& g, const MassSpin& ms,
                          std::uint64_t seed, const McOptions& opt, const QuadratureOptions& quad) {
  const cplx exact = inner_product(f, g, KernelVariant::Right, ms, quad);
  const McResult mc = position_inner_product_mc(f, g, ms, seed, opt);
  const double rel_sigma = mc.std_error / std::abs(exact);
  const double z = std::abs(mc.value - exact) / mc.std_error;
  auto r = CheckReport::make("mc.crosscheck",
                             {{"m", ms.m},
                              {"seed", seed},
                              {"points", mc.points},
                              {"momentum_value", {exact.real(), exact.imag()}},
                              {"mc_value", {mc.value.real(), mc.value.imag()}},
                              {"relative_std_error", rel_sigma},
                              {"excluded", mc.excluded}},
                             z, 3.0);
  r.std_error = mc.std_error;
  if (!(rel_sigma <= 0.02)) {
    r.pass = false;
    r.note = "standard error above 2% of the momentum-space value";
  }
  return r;
}

}  // namespace rqm
