#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rqm/spacetime.hpp"

namespace rqm {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on the Legendre
/// three-term recurrence). Rules are cached; the returned reference is stable.
const GaussRule& gauss_legendre(int n);

/// Rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Quadrature nodes in 3-momentum space with weights for d^3p.
struct MomentumGrid {
  std::vector<Vec3> p;
  std::vector<double> weight;

  std::size_t size() const { return p.size(); }
};

/// Spherical product rule on |p| <= p_max: radial variable p = m sinh t with
/// Gauss-Legendre in t, Gauss-Legendre in cos(theta), trapezoid in phi.
/// The substitution keeps omega = m cosh t entire in the integration variable.
MomentumGrid spherical_grid(double m, double p_max, int n_radial, int n_theta, int n_phi);

/// Tensor Gauss-Legendre rule on the cube [-p_max, p_max]^3.
MomentumGrid cube_grid(double p_max, int n_per_axis);

/// Number of worker threads used by parallel loops; 0 selects hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is processed exactly once; callers
/// write results to per-index slots and reduce afterwards in index order, so
/// results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation of a vector, fixed association order.
double pairwise_sum(const std::vector<double>& v);

}  // namespace rqm
