#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include "rqm/random.hpp"
#include "rqm/spacetime.hpp"

using namespace rqm;

namespace {

Matrix2c from_eigen(const Eigen::Matrix2cd& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }
Eigen::Matrix2cd to_eigen(const Matrix2c& a) {
  Eigen::Matrix2cd m;
  m << a(0, 0), a(0, 1), a(1, 0), a(1, 1);
  return m;
}

// Principal square root of a positive Hermitian matrix by eigen-decomposition.
Matrix2c sqrt_psd(const Matrix2c& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(to_eigen(a));
  const Eigen::Vector2d r = es.eigenvalues().cwiseSqrt();
  return from_eigen(es.eigenvectors() * r.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint());
}

FourVectorM random_mink(Rng& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng), u(rng), u(rng)};
}

double diff(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("four-vector to matrix map") {
  CHECK(max_abs_diff(mink_to_matrix({1, 0, 0, 0}), Matrix2c::identity()) == 0.0);
  CHECK(max_abs_diff(mink_to_matrix({0, 0, 0, 1}), Matrix2c{1.0, 0.0, 0.0, -1.0}) == 0.0);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const FourVectorM x = random_mink(rng);
    CHECK(std::abs(mink_to_matrix(x).det() - x.minkowski_square()) < 1e-12);
    const FourVectorM y = matrix_to_mink(mink_to_matrix(x));
    // Round trip to a few ulp of the largest component.
    const double ulp = 4.0 * std::numeric_limits<double>::epsilon() * 2.0;
    CHECK(std::abs(y.t - x.t) <= ulp);
    CHECK(std::abs(y.x - x.x) <= ulp);
    CHECK(std::abs(y.y - x.y) <= ulp);
    CHECK(std::abs(y.z - x.z) <= ulp);
  }
  CHECK_THROWS_AS(matrix_to_mink(Matrix2c{0.0, 1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("Euclidean matrix images of all variants") {
  CHECK(max_abs_diff(eucl_to_matrix({1, 0, 0, 0}, KernelVariant::Right), kI * Matrix2c::identity()) == 0.0);
  CHECK(max_abs_diff(eucl_to_matrix({0, 0, 0, 1}, KernelVariant::Right), Matrix2c{1.0, 0.0, 0.0, -1.0}) == 0.0);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const FourVectorE x = random_eucl(rng, 2.0);
    for (KernelVariant v : kAllVariants)
      CHECK(std::abs(eucl_to_matrix(x, v).det() + x.norm2()) < 1e-12);
  }
}

TEST_CASE("determinant preserved by unimodular pairs") {
  Rng rng(3);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Matrix2c A = random_sl2c(rng), B = random_sl2c(rng);
    const FourVectorE x = random_eucl(rng, 1.0);
    const Matrix2c X = eucl_to_matrix(x, KernelVariant::Right);
    worst = std::max(worst, std::abs((A * X * B.transpose()).det() - X.det()));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Poincare composition") {
  Rng rng(4);
  const PoincareElement g = random_poincare(rng, 1.0, 1.0);
  const PoincareElement e = compose_poincare(g, PoincareElement::identity());
  CHECK(max_abs_diff(e.lambda, g.lambda) == 0.0);
  CHECK(max_abs_diff(e.a, g.a) == 0.0);
  const PoincareElement id = compose_poincare(g, g.inverse());
  CHECK(max_abs_diff(id.lambda, Matrix2c::identity()) < 1e-12);
  CHECK(max_abs(id.a) < 1e-12);
  const PoincareElement h = random_poincare(rng, 1.0, 1.0), k = random_poincare(rng, 1.0, 1.0);
  const PoincareElement l = compose_poincare(compose_poincare(g, h), k);
  const PoincareElement r = compose_poincare(g, compose_poincare(h, k));
  CHECK(max_abs_diff(l.lambda, r.lambda) < 1e-12);
  CHECK(max_abs_diff(l.a, r.a) < 1e-12);
  CHECK_THROWS_AS(PoincareElement::make(Matrix2c{2.0, 0.0, 0.0, 1.0}, Matrix2c::zero()), std::invalid_argument);
}

TEST_CASE("Lorentz and orthogonal matrices from SL(2,C)") {
  CHECK(diff(lorentz_from_sl2c(Matrix2c::identity()), Mat4::Identity()) < 1e-15);
  CHECK(diff(orth_from_pair(Matrix2c::identity(), Matrix2c::identity()), Mat4::Identity()) < 1e-15);
  Rng rng(5);
  const Mat4 eta = minkowski_metric();
  for (int i = 0; i < 20; ++i) {
    const Mat4 L = lorentz_from_sl2c(random_sl2c(rng));
    CHECK(diff(L.transpose() * eta * L, eta) < 1e-10);
    const Mat4 O = orth_from_pair(random_su2(rng), random_su2(rng));
    CHECK(diff(O.transpose() * O, Mat4::Identity()) < 1e-10);
  }
  CHECK_THROWS_AS(lorentz_from_sl2c(Matrix2c{2.0, 0.0, 0.0, 1.0}), std::domain_error);

  const double lam = 0.7, c = std::cos(lam), s = std::sin(lam);
  const Matrix2c A = su2_rotation({0, 0, 1}, lam);
  // Rotation about z acting on (x, y); time axis fixed.
  const Mat4 Oz = orth_from_pair(A, A.conj());
  Mat4 rz = Mat4::Identity();
  rz(1, 1) = c;
  rz(2, 2) = c;
  rz(1, 2) = s;
  rz(2, 1) = -s;
  CHECK(diff(Oz, rz) < 1e-12);
  // Rotation in the tau-z plane.
  const Mat4 Otz = orth_from_pair(A, A);
  Mat4 rtz = Mat4::Identity();
  rtz(0, 0) = c;
  rtz(3, 3) = c;
  rtz(0, 3) = s;
  rtz(3, 0) = -s;
  CHECK(diff(Otz, rtz) < 1e-12);

  const Mat4 th = time_reflection();
  CHECK(diff(th * Oz * th, Oz) < 1e-12);
  CHECK(diff(th * Otz.transpose() * th, Otz) < 1e-12);
}

TEST_CASE("pair action intertwines the four matrix images") {
  Rng rng(6);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Matrix2c A = random_su2(rng), B = random_su2(rng);
    const Mat4 O = orth_from_pair(A, B);
    const FourVectorE p = random_eucl(rng, 2.0);
    const FourVectorE q = apply(O, p);
    using V = KernelVariant;
    worst = std::max(worst, max_abs_diff(A * eucl_to_matrix(p, V::Right) * B.transpose(), eucl_to_matrix(q, V::Right)));
    worst = std::max(worst, max_abs_diff(A.conj() * eucl_to_matrix(p, V::RightDual) * B.adjoint(), eucl_to_matrix(q, V::RightDual)));
    worst = std::max(worst, max_abs_diff(B * eucl_to_matrix(p, V::Left) * A.transpose(), eucl_to_matrix(q, V::Left)));
    worst = std::max(worst, max_abs_diff(B.conj() * eucl_to_matrix(p, V::LeftDual) * A.adjoint(), eucl_to_matrix(q, V::LeftDual)));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("canonical boost") {
  CHECK(max_abs_diff(canonical_boost({0, 0, 0}, 2.0), Matrix2c::identity()) < 1e-15);
  const double rho = 0.9;
  const Matrix2c b = canonical_boost({0, 0, std::sinh(rho)}, 1.0);
  CHECK(max_abs_diff(b, Matrix2c{std::exp(rho / 2), 0.0, 0.0, std::exp(-rho / 2)}) < 1e-14);
  CHECK_THROWS_AS(canonical_boost({0, 0, 0}, 0.0), std::domain_error);
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const Vec3 p = random_vec3(rng, 3.0);
    const double m = 0.5 + i * 0.05;
    const Matrix2c L = canonical_boost(p, m);
    CHECK(std::abs(L.det() - 1.0) < 1e-12);
    CHECK(is_hermitian(L, 1e-14));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(to_eigen(L));
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK(max_abs_diff(L * L.adjoint(), cplx(1.0 / m) * mink_to_matrix(on_shell(p, m))) < 1e-12);
  }
}

TEST_CASE("polar decomposition") {
  Rng rng(8);
  const Matrix2c U = random_su2(rng);
  PolarDecomposition pd = polar_decompose(U);
  CHECK(max_abs_diff(pd.boost, Matrix2c::identity()) < 1e-14);
  CHECK(max_abs_diff(pd.rotation, U) < 1e-14);
  const Matrix2c P = canonical_boost({0.3, -1.2, 0.8}, 1.0);
  pd = polar_decompose(P);
  CHECK(max_abs_diff(pd.boost, P) < 1e-13);
  CHECK(max_abs_diff(pd.rotation, Matrix2c::identity()) < 1e-13);
  for (int i = 0; i < 100; ++i) {
    const Matrix2c L = random_sl2c(rng);
    pd = polar_decompose(L);
    CHECK(max_abs_diff(pd.boost * pd.rotation, L) < 1e-11);
    CHECK(max_abs_diff(pd.boost, sqrt_psd(L * L.adjoint())) < 1e-11);
    CHECK(is_su2(pd.rotation, 1e-10));
  }
  CHECK_THROWS_AS(polar_decompose(Matrix2c{1.0, 1.0, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("Wigner rotation") {
  Rng rng(9);
  const Matrix2c R = random_su2(rng);
  CHECK(max_abs_diff(wigner_rotation(R, {0, 0, 0}, 1.0), R) < 1e-14);
  const Vec3 q{0.4, 0.1, -0.7};
  CHECK(max_abs_diff(wigner_rotation(canonical_boost(q, 1.0), {0, 0, 0}, 1.0), Matrix2c::identity()) < 1e-12);
  for (int i = 0; i < 50; ++i) {
    const Matrix2c L = random_poincare(rng, 1.5, 0.0).lambda;
    const Vec3 p = random_vec3(rng, 2.0);
    const Matrix2c W = wigner_rotation(L, p, 1.3);
    CHECK(is_su2(W, 1e-10));
    CHECK(max_abs_diff(W, wigner_rotation_adjoint_form(L, p, 1.3)) < 1e-10);
  }
}
