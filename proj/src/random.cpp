#include "rqm/random.hpp"

#include <cmath>

namespace rqm {

namespace {

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

cplx random_cplx(Rng& rng, double r) {
  return {uniform(rng, -r, r), uniform(rng, -r, r)};
}

}  // namespace

Matrix2c random_su2(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double q[4];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : q) {
      x = n(rng);
      norm += x * x;
    }
  } while (norm < 1e-6);
  norm = std::sqrt(norm);
  const cplx a(q[0] / norm, q[1] / norm), b(q[2] / norm, q[3] / norm);
  return {a, b, -std::conj(b), std::conj(a)};
}

Matrix2c random_sl2c(Rng& rng, double max_entry) {
  for (;;) {
    const cplx a = random_cplx(rng, max_entry / std::sqrt(2.0));
    const cplx b = random_cplx(rng, max_entry / std::sqrt(2.0));
    const cplx c = random_cplx(rng, max_entry / std::sqrt(2.0));
    if (std::abs(a) < 0.3 || std::abs(a) > max_entry) continue;
    const cplx d = (1.0 + b * c) / a;
    if (std::abs(d) > max_entry || std::abs(b) > max_entry || std::abs(c) > max_entry) continue;
    return {a, b, c, d};
  }
}

Vec3 random_vec3(Rng& rng, double scale) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

FourVectorE random_eucl(Rng& rng, double scale) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale),
          uniform(rng, -scale, scale)};
}

PoincareElement random_poincare(Rng& rng, double max_rapidity, double max_translation) {
  Vec3 axis = random_vec3(rng, 1.0);
  double n = std::sqrt(norm2(axis));
  while (n < 1e-3) {
    axis = random_vec3(rng, 1.0);
    n = std::sqrt(norm2(axis));
  }
  axis = {axis[0] / n, axis[1] / n, axis[2] / n};
  const Matrix2c lambda = random_su2(rng) * sl2c_boost(axis, uniform(rng, 0.0, max_rapidity));
  const Vec3 a3 = random_vec3(rng, max_translation);
  const FourVectorM a{uniform(rng, -max_translation, max_translation), a3[0], a3[1], a3[2]};
  return {lambda, mink_to_matrix(a)};
}

TestFunction random_test_function(Spin s, double m, Rng& rng, const FamilyOptions& opt) {
  TestFunction f(s);
  std::uniform_int_distribution<int> kd(opt.min_k, opt.max_k);
  std::uniform_int_distribution<int> dd(0, opt.max_spatial_degree);
  std::uniform_int_distribution<int> axis(0, 2);
  for (int mu = 0; mu < s.dim(); ++mu)
    for (int j = 0; j < opt.terms_per_component; ++j) {
      Term t;
      t.coeff = random_cplx(rng, 1.0);
      t.k = kd(rng);
      const int deg = dd(rng);
      for (int d = 0; d < deg; ++d) {
        const int ax = axis(rng);
        (ax == 0 ? t.a : (ax == 1 ? t.b : t.c)) += 1;
      }
      t.alpha = m * uniform(rng, opt.alpha_min, opt.alpha_max);
      t.beta = m * m * uniform(rng, opt.beta_min, opt.beta_max);
      t.tau0 = uniform(rng, opt.tau0_min, opt.tau0_max) / m;
      t.center = random_vec3(rng, opt.center_max / m);
      f.add_term(mu, t);
    }
  return f.canonicalize();
}

}  // namespace rqm
