#pragma once

#include <cstdint>
#include <functional>

#include "rqm/check_report.hpp"
#include "rqm/hilbert.hpp"
#include "rqm/kernels.hpp"
#include "rqm/spacetime.hpp"
#include "rqm/test_function.hpp"

namespace rqm {

/// Sampling density: tau = tau_min + Exp(rate), each spatial coordinate
/// Normal(center, sigma^2), all independent.
struct ImportanceDensity {
  double tau_min = 0.0;
  double rate = 1.0;
  Vec3 center{};
  double sigma = 1.0;

  /// Slightly wider than the slowest envelope of f: rate 0.8 alpha_min,
  /// variance 1 / (1.6 beta_min), centered at the |coeff|-weighted mean center.
  static ImportanceDensity for_function(const TestFunction& f);

  /// Maps four uniforms in (0,1) to a point.
  FourVectorE sample(const double* u) const;
  double pdf(const FourVectorE& x) const;
};

using PointFunction = std::function<cplx(const FourVectorE&)>;

/// One argument of the two-point integral: the function, where its samples
/// come from, and the linear map applied before the kernel.
struct McSide {
  PointFunction f;
  ImportanceDensity density;
  Mat4 map = Mat4::Identity();
};

struct McOptions {
  std::size_t points = 1'000'000;
  /// Randomly shifted copies of one Sobol point set; the spread of their
  /// means gives the standard error.
  int replicates = 10;
};

struct McResult {
  cplx value;
  double std_error = 0.0;
  std::size_t points = 0;
  /// Samples with |a.map u - b.map v| < d = 1e-4/m, counted as zero. Near
  /// the origin S ~ 1/(2 pi^2 r^2), whose integral over the 4-ball of radius d
  /// is d^2/2, so the bias is at most (d^2/2) int |a| |b|.
  std::size_t excluded = 0;
};

/// Scalar mass-m kernel (2 m^2 / (2 pi)^2) K1(m r) / (m r).
double scalar_position_kernel(double m, double r);

/// int int conj(a.f(u)) S(a.map u - b.map v) b.f(v) d^4u d^4v by randomized
/// quasi-Monte-Carlo with an 8D Sobol sequence. Deterministic in seed.
McResult two_point_mc(const McSide& a, const McSide& b, double m, std::uint64_t seed,
                      const McOptions& opt = {});

/// <f|g> = int int conj(f(theta x)) S(x - y) g(y) for s = 0; the reflection is
/// absorbed by sampling u = theta x on the support of f.
McResult position_inner_product_mc(const TestFunction& f, const TestFunction& g, const MassSpin& ms,
                                   std::uint64_t seed, const McOptions& opt = {});

/// Position-space estimate against the momentum-space inner product.
/// measured = |mc - momentum| / std_error, tolerance 3; also fails when the
/// standard error exceeds 2% of |momentum|.
CheckReport mc_crosscheck(const TestFunction& f, const TestFunction& g, const MassSpin& ms,
                          std::uint64_t seed, const McOptions& opt = {},
                          const QuadratureOptions& quad = {});

}  // namespace rqm
