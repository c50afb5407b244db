#pragma once

#include <cstdint>
#include <random>

#include "rqm/spacetime.hpp"
#include "rqm/test_function.hpp"

namespace rqm {

using Rng = std::mt19937_64;

/// Haar-random SU(2) element (normalised Gaussian quaternion).
Matrix2c random_su2(Rng& rng);
/// Unit-determinant matrix with every entry bounded by max_entry in modulus.
Matrix2c random_sl2c(Rng& rng, double max_entry = 2.0);
Vec3 random_vec3(Rng& rng, double scale);
FourVectorE random_eucl(Rng& rng, double scale);
/// Rotation times boost of rapidity <= max_rapidity, translation components in
/// [-max_translation, max_translation].
PoincareElement random_poincare(Rng& rng, double max_rapidity, double max_translation);

/// Parameter ranges for random family members, in units of the mass m.
struct FamilyOptions {
  int min_k = 1;
  int max_k = 2;
  int max_spatial_degree = 1;
  int terms_per_component = 1;
  double alpha_min = 0.5, alpha_max = 2.0;
  double beta_min = 0.5, beta_max = 2.0;
  double tau0_min = 0.0, tau0_max = 0.5;
  double center_max = 0.5;
};

TestFunction random_test_function(Spin s, double m, Rng& rng, const FamilyOptions& opt = {});

}  // namespace rqm
