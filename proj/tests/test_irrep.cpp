#include <chrono>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "rqm/hilbert.hpp"
#include "rqm/irrep.hpp"
#include "rqm/random.hpp"

using namespace rqm;

namespace {

Term envelope(double alpha, double beta, Vec3 center = {}) {
  Term t;
  t.alpha = alpha;
  t.beta = beta;
  t.center = center;
  return t;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double max_abs(const std::vector<cplx>& a) {
  double d = 0.0;
  for (const cplx& z : a) d = std::max(d, std::abs(z));
  return d;
}

std::vector<Vec3> probes(int n, double scale, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) out.push_back(random_vec3(rng, scale));
  return out;
}

}  // namespace

TEST_CASE("canonical wave functions reproduce the right-handed inner product") {
  Rng rng(61);
  for (int ts = 0; ts <= 2; ++ts) {
    const MassSpin ms = MassSpin::make(1.0, Spin(ts));
    const TestFunction f = random_test_function(Spin(ts), 1.0, rng);
    const TestFunction g = random_test_function(Spin(ts), 1.0, rng);
    const cplx oracle = inner_product(f, g, KernelVariant::Right, ms);
    const IrrepState a = IrrepState::from_test_function(f, ms), b = IrrepState::from_test_function(g, ms);
    const cplx v = state_inner_product(a, b, state_grid(std::max(a.p_extent(), b.p_extent()), ms.m));
    CHECK(std::abs(v - oracle) < 1e-8 * std::abs(oracle));
  }
}

TEST_CASE("identity and pure translations") {
  Rng rng(62);
  const MassSpin ms = MassSpin::make(1.3, Spin(1));
  const IrrepState psi = IrrepState::from_test_function(random_test_function(Spin(1), ms.m, rng), ms);
  const IrrepState same = apply_poincare_irrep(psi, PoincareElement::identity());
  const PoincareElement tr = PoincareElement::make(Matrix2c::identity(), mink_to_matrix({0.4, -0.7, 0.2, 1.1}));
  const IrrepState moved = apply_poincare_irrep(psi, tr);
  for (const Vec3& p : probes(20, 2.0, 1)) {
    const auto v = psi(p), w = same(p), t = moved(p);
    CHECK(max_diff(v, w) <= 1e-14 * max_abs(v));
    const double wp = std::sqrt(ms.m * ms.m + norm2(p));
    const cplx phase = std::polar(1.0, -wp * 0.4 + p[0] * -0.7 + p[1] * 0.2 + p[2] * 1.1);
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(std::abs(std::abs(t[i]) - std::abs(v[i])) <= 1e-14 * max_abs(v));
      CHECK(std::abs(t[i] - phase * v[i]) <= 1e-14 * max_abs(v));
    }
  }
}

TEST_CASE("scalar boost along z against explicit kinematics") {
  const MassSpin ms = MassSpin::make(1.0, Spin(0));
  const IrrepState psi = IrrepState::from_test_function(TestFunction::single(Spin(0), 0, envelope(1.0, 0.6, {0.1, 0.2, -0.1})), ms);
  const double rho = 0.4;
  const IrrepState boosted = apply_poincare_irrep(psi, PoincareElement::make(sl2c_boost({0, 0, 1}, rho), Matrix2c::zero()));
  for (const Vec3& p : probes(20, 2.0, 2)) {
    const double w = std::sqrt(1.0 + norm2(p));
    const Vec3 q{p[0], p[1], std::cosh(rho) * p[2] - std::sinh(rho) * w};
    const double wq = std::cosh(rho) * w - std::sinh(rho) * p[2];
    CHECK(wq == doctest::Approx(std::sqrt(1.0 + norm2(q))).epsilon(1e-13));
    const cplx expect = psi(q)[0] * std::sqrt(wq / w);
    CHECK(std::abs(boosted(p)[0] - expect) <= 1e-12 * std::abs(expect));
  }
}

TEST_CASE("spin-1/2 boosts rotate the spin by the Wigner rotation") {
  // At p = 0 the Wigner rotation of a pure boost is trivial only along the
  // boost axis; for a momentum along z and a boost along z it is the identity.
  const MassSpin ms = MassSpin::make(1.0, Spin(1));
  const IrrepState psi = IrrepState::from_test_function(TestFunction::single(Spin(1), 0, envelope(1.0, 0.6)), ms);
  const IrrepState boosted = apply_poincare_irrep(psi, PoincareElement::make(sl2c_boost({0, 0, 1}, 0.3), Matrix2c::zero()));
  const Vec3 p{0.0, 0.0, 0.7};
  const double w = std::sqrt(1.0 + 0.49);
  const Vec3 q{0.0, 0.0, std::cosh(0.3) * 0.7 - std::sinh(0.3) * w};
  const double wq = std::sqrt(1.0 + norm2(q));
  const auto a = boosted(p), b = psi(q);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(a[i] - b[i] * std::sqrt(wq / w)) <= 1e-13 * max_abs(b));
}

TEST_CASE("group law and unitarity for random Poincare elements") {
  Rng rng(63);
  double worst_law = 0.0, worst_norm = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 20; ++i) {
    const MassSpin ms = MassSpin::make(1.0, Spin(i % 3));
    const IrrepState psi = IrrepState::from_test_function(random_test_function(ms.s, 1.0, rng), ms);
    const PoincareElement g1 = random_poincare(rng, 0.5, 1.0), g2 = random_poincare(rng, 0.5, 1.0);
    worst_law = std::max(worst_law, check_irrep_group_law(psi, g1, g2).measured);
    worst_norm = std::max(worst_norm, check_irrep_unitarity(psi, g1).measured);
  }
  MESSAGE("group law ", worst_law, " unitarity ", worst_norm, " in ",
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), " s");
  CHECK(worst_law < 1e-6);
  CHECK(worst_norm < 1e-6);
}

TEST_CASE("unitarity check resolves quadrature error") {
  const MassSpin ms = MassSpin::make(1.0, Spin(1));
  const IrrepState psi =
      IrrepState::from_test_function(TestFunction::single(Spin(1), 0, envelope(1.0, 2.0, {0.3, 0.0, 0.0})), ms);
  const PoincareElement g = PoincareElement::make(sl2c_boost({1, 0, 0}, 0.5), Matrix2c::zero());
  const double fine = check_irrep_unitarity(psi, g).measured;
  const double coarse = check_irrep_unitarity(psi, g, {12, 6, 12}).measured;
  MESSAGE("fine ", fine, " coarse ", coarse);
  CHECK(coarse > 1e3 * fine);
}

TEST_CASE("momentum windows") {
  Rng rng(64);
  const MassSpin ms = MassSpin::make(1.0, Spin(1));
  const TestFunction f = random_test_function(Spin(1), 1.0, rng);
  const IrrepState plain = IrrepState::from_test_function(f, ms);
  const IrrepState wide = momentum_project(f, ms, {0.3, 0, 0}, 1e8);
  for (const Vec3& p : probes(10, 2.0, 3)) CHECK(max_diff(wide(p), plain(p)) <= 1e-14 * max_abs(plain(p)));

  const Vec3 p0{0.5, -0.2, 0.3};
  const IrrepState win = momentum_project(f, ms, p0, 0.4);
  const FourVectorM a{0.0, 0.3, -1.2, 0.8};
  const IrrepState shifted = apply_poincare_irrep(win, PoincareElement::make(Matrix2c::identity(), mink_to_matrix(a)));
  double dev = 0.0;
  for (const Vec3& p : probes(10, 1.0, 4)) {
    const cplx phase = std::polar(1.0, p[0] * a.x + p[1] * a.y + p[2] * a.z);
    const auto v = win(p), s = shifted(p);
    for (std::size_t i = 0; i < v.size(); ++i) dev = std::max(dev, std::abs(s[i] - phase * v[i]) / max_abs(v));
  }
  CHECK(dev < 1e-12);

  const IrrepState left = momentum_project(f, ms, {-1.5, 0, 0}, 0.15);
  const IrrepState right = momentum_project(f, ms, {1.5, 0, 0}, 0.15);
  const MomentumGrid grid = state_grid(plain.p_extent(), ms.m, {96, 96, 192});
  const double nl = state_norm(left, grid), nr = state_norm(right, grid);
  CHECK(nl > 0.0);
  CHECK(std::abs(state_inner_product(left, right, grid)) < 1e-8 * nl * nr);
  CHECK_THROWS_AS(momentum_project(f, ms, p0, 0.0), std::invalid_argument);
}

TEST_CASE("spin projections") {
  // Rotation-invariant envelope times a fixed spinor: the projector keeps one component.
  const MassSpin half = MassSpin::make(1.0, Spin(1));
  const cplx chi[2] = {cplx(0.6, 0.2), cplx(-0.3, 0.7)};
  const IrrepState psi(half, [chi](const Vec3& p, cplx* out) {
    const double e = std::exp(-0.5 * norm2(p));
    out[0] = chi[0] * e;
    out[1] = chi[1] * e;
  }, 8.0);
  const IrrepState up = spin_project(psi, 1), down = spin_project(psi, -1);
  for (const Vec3& p : probes(10, 1.5, 5)) {
    const double e = std::exp(-0.5 * norm2(p));
    const auto u = up(p), d = down(p);
    CHECK(std::abs(u[0] / (chi[0] * e) - 1.0) < 1e-4);
    CHECK(std::abs(u[1]) < 1e-4 * e);
    CHECK(std::abs(d[1] / (chi[1] * e) - 1.0) < 1e-4);
    CHECK(std::abs(d[0]) < 1e-4 * e);
  }
  const MomentumGrid coarse = state_grid(6.0, 1.0, {24, 12, 24});
  CHECK(std::abs(state_inner_product(up, down, coarse)) < 1e-4 * state_norm(up, coarse) * state_norm(down, coarse));

  // s = 0 with a spherically symmetric function: projection is the identity.
  const MassSpin zero = MassSpin::make(1.0, Spin(0));
  const IrrepState s0 = IrrepState::from_test_function(TestFunction::single(Spin(0), 0, envelope(1.0, 0.8)), zero);
  const IrrepState p0 = spin_project(s0, 0);
  for (const Vec3& p : probes(5, 1.5, 6)) CHECK(std::abs(p0(p)[0] - s0(p)[0]) < 1e-10 * std::abs(s0(p)[0]));

  // Projected test-function state acquires e^{i mu theta} under rotations about z.
  Term t = envelope(1.0, 0.8);
  t.c = 1;
  TestFunction f = TestFunction::single(Spin(1), 0, envelope(1.0, 0.8));
  f.add_term(1, t);
  const IrrepState state = IrrepState::from_test_function(f, half);
  for (int tm : {1, -1}) {
    const CheckReport r = check_rotation_phase(spin_project(state, tm), tm, std::numbers::pi / 3, probes(10, 1.5, 7));
    CHECK_MESSAGE(r.pass, r.measured);
  }
  // Without projection the phase check fails for a mixed state.
  CHECK_FALSE(check_rotation_phase(state, 1, std::numbers::pi / 3, probes(10, 1.5, 7)).pass);
  CHECK_THROWS_AS(spin_project(psi, 0), std::invalid_argument);
}
