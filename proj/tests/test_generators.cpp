#include <cmath>

#include <doctest.h>

#include "rqm/generators.hpp"
#include "rqm/random.hpp"

using namespace rqm;

namespace {

Term envelope(int k, double alpha = 1.2, double beta = 0.9) {
  Term t;
  t.k = k;
  t.alpha = alpha;
  t.beta = beta;
  return t;
}

bool same(const TestFunction& a, const TestFunction& b, double tol = 0.0) {
  const TestFunction d = a - b;
  return d.max_coeff() <= tol * std::max(a.max_coeff(), b.max_coeff());
}

FamilyOptions lie_family() {
  FamilyOptions o;
  o.min_k = 2;
  o.max_k = 3;
  o.max_spatial_degree = 2;
  o.terms_per_component = 2;
  return o;
}

}  // namespace

TEST_CASE("generator action on simple envelopes") {
  const double beta = 0.9;
  const TestFunction f = TestFunction::single(Spin(0), 0, envelope(0));
  Term expect = envelope(0);
  expect.c = 1;
  expect.coeff = cplx(0.0, 2.0 * beta);
  CHECK(same(apply_generator({Generator::P3, KernelVariant::Right}, f), TestFunction::single(Spin(0), 0, expect)));

  const TestFunction g = TestFunction::single(Spin(0), 0, envelope(1));
  TestFunction h = TestFunction::single(Spin(0), 0, envelope(0));
  Term lin = envelope(1);
  lin.coeff = -1.2;
  h.add_term(0, lin);
  CHECK(same(apply_generator({Generator::H, KernelVariant::Right}, g), h.canonicalize()));

  const TestFunction j3 = apply_generator({Generator::J3, KernelVariant::Right}, g);
  CHECK(j3.empty());

  CHECK_THROWS_AS(apply_generator({Generator::H, KernelVariant::Right}, f), DomainError);
  CHECK_THROWS_AS(apply_generator({Generator::K1, KernelVariant::Left}, f), DomainError);
  CHECK_NOTHROW(apply_generator({Generator::P1, KernelVariant::Left}, f));
}

TEST_CASE("spin terms satisfy the su(2) and boost algebra") {
  for (KernelVariant v : kAllVariants)
    for (int ts = 0; ts <= 3; ++ts)
      for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const SpinMatrix Ti = rotation_spin_term(v, Spin(ts), i), Tj = rotation_spin_term(v, Spin(ts), j),
                         Tk = rotation_spin_term(v, Spin(ts), k);
        const SpinMatrix Ui = boost_spin_term(v, Spin(ts), i), Uj = boost_spin_term(v, Spin(ts), j),
                         Uk = boost_spin_term(v, Spin(ts), k);
        CHECK((Ti * Tj - Tj * Ti - kI * Tk).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((Ti * Uj - Uj * Ti - kI * Uk).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((Ui * Uj - Uj * Ui + kI * Tk).cwiseAbs().maxCoeff() < 1e-13);
      }
}

TEST_CASE("commutator table on the closed family") {
  Rng rng(41);
  for (int ts = 0; ts <= 2; ++ts)
    for (KernelVariant v : kAllVariants) {
      const TestFunction f = random_test_function(Spin(ts), 1.0, rng, lie_family());
      int pairs = 0;
      for (std::size_t a = 0; a < kAllGenerators.size(); ++a)
        for (std::size_t b = a + 1; b < kAllGenerators.size(); ++b) {
          const auto r = check_commutator(kAllGenerators[a], kAllGenerators[b], v, f);
          CHECK_MESSAGE(r.measured < 1e-13, r.inputs.dump());
          ++pairs;
        }
      CHECK(pairs == 45);
    }
}

TEST_CASE("commutator check detects a wrong sign") {
  // [K1, K2] = -i J3; flipping the spin term sign of one variant must break it.
  Rng rng(42);
  const TestFunction f = random_test_function(Spin(1), 1.0, rng, lie_family());
  const TestFunction k1 = apply_generator({Generator::K1, KernelVariant::Right}, f);
  const TestFunction wrong = k1 + cplx(-2.0) * f.mix(boost_spin_term(KernelVariant::Right, Spin(1), 0));
  const TestFunction lhs = apply_generator({Generator::K2, KernelVariant::Right}, wrong);
  CHECK(lhs.max_coeff() > 0.0);
  const auto ok = check_commutator(Generator::K1, Generator::K2, KernelVariant::Right, f);
  CHECK(ok.pass);
  // Against the wrong right-hand side (+i J3) the residual is O(1).
  const TestFunction res = apply_generator({Generator::K1, KernelVariant::Right},
                                           apply_generator({Generator::K2, KernelVariant::Right}, f)) -
                           apply_generator({Generator::K2, KernelVariant::Right},
                                           apply_generator({Generator::K1, KernelVariant::Right}, f)) -
                           kI * apply_generator({Generator::J3, KernelVariant::Right}, f);
  CHECK(res.max_coeff() > 1e-3);
}

TEST_CASE("hermiticity of all generators for all kernels") {
  Rng rng(43);
  for (int ts = 0; ts <= 2; ++ts)
    for (KernelVariant v : kAllVariants) {
      const MassSpin ms = MassSpin::make(1.0, Spin(ts));
      const TestFunction f = random_test_function(Spin(ts), 1.0, rng);
      const TestFunction g = random_test_function(Spin(ts), 1.0, rng);
      const auto all = check_hermiticity_all(v, f, g, ms);
      REQUIRE(all.size() == 10);
      for (const auto& r : all) CHECK_MESSAGE(r.measured < 1e-7, r.inputs.dump(), " measured ", r.measured);
      // The batched form agrees with the single-generator check.
      const auto k3 = check_hermiticity({Generator::K3, v}, f, g, ms);
      CHECK(std::abs(k3.measured - all[9].measured) < 1e-9);
    }
}

TEST_CASE("hermiticity check notices a wrong spin term") {
  // The boost spin term of another variant makes K2 non-Hermitian (S_y is antisymmetric).
  Rng rng(44);
  const MassSpin ms = MassSpin::make(1.0, Spin(1));
  const TestFunction f = random_test_function(Spin(1), 1.0, rng);
  const TestFunction g = random_test_function(Spin(1), 1.0, rng);
  auto wrong_k = [](const TestFunction& h) {
    return h.d_tau().times_space(1) - h.d_space(1).times_tau() +
           h.mix(boost_spin_term(KernelVariant::Left, Spin(1), 1));
  };
  const cplx a = inner_product(f, wrong_k(g), KernelVariant::Right, ms);
  const cplx b = inner_product(wrong_k(f), g, KernelVariant::Right, ms);
  CHECK(std::abs(a - b) / (std::abs(a) + std::abs(b)) > 1e-3);
}

TEST_CASE("H is bounded below by the mass") {
  Rng rng(45);
  for (KernelVariant v : kAllVariants) {
    const MassSpin ms = MassSpin::make(1.4, Spin(1));
    TestFunction f = random_test_function(Spin(1), ms.m, rng);
    f *= 1.0 / std::sqrt(inner_product(f, f, v, ms).real());
    const cplx fhf = inner_product(f, apply_generator({Generator::H, v}, f), v, ms);
    CHECK(fhf.real() >= ms.m - 1e-7);
  }
}

TEST_CASE("time-shift difference quotient approaches -H") {
  Rng rng(46);
  const MassSpin ms = MassSpin::make(1.0, Spin(0));
  const TestFunction f = random_test_function(Spin(0), 1.0, rng);
  const TestFunction g = random_test_function(Spin(0), 1.0, rng);
  const cplx fg = inner_product(f, g, KernelVariant::Right, ms);
  const cplx target = -inner_product(f, apply_generator({Generator::H, KernelVariant::Right}, g),
                                     KernelVariant::Right, ms);
  double err[2];
  int i = 0;
  for (double d : {1e-2, 1e-3}) {
    const cplx q = (inner_product(f, g.time_shift(d), KernelVariant::Right, ms) - fg) / d;
    err[i++] = std::abs(q - target);
  }
  // First-order convergence: the error drops by about the step ratio.
  CHECK(err[1] < err[0]);
  CHECK(err[0] / err[1] == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("contraction semigroup") {
  Rng rng(47);
  for (int ts = 0; ts <= 2; ++ts) {
    const MassSpin ms = MassSpin::make(1.0, Spin(ts));
    const TestFunction f = random_test_function(Spin(ts), 1.0, rng);
    const auto reports = semigroup_contraction_check(f, KernelVariant::Right, ms, {0.0, 0.1, 0.5, 1.0, 10.0});
    REQUIRE(reports.size() == 4);
    for (const auto& r : reports) CHECK_MESSAGE(r.pass, r.name, " ", r.measured);
    CHECK(reports[0].inputs["ratios"][0].get<double>() == 1.0);
  }
  CHECK_THROWS_AS(semigroup_contraction_check(TestFunction::single(Spin(0), 0, envelope(1)), KernelVariant::Right,
                                              MassSpin::make(1.0, Spin(0)), {-1.0}),
                  std::invalid_argument);
}

TEST_CASE("mass Casimir and its negative control") {
  Rng rng(48);
  FamilyOptions o;
  o.min_k = 2;
  o.max_k = 3;
  for (int ts = 0; ts <= 1; ++ts) {
    const MassSpin ms = MassSpin::make(1.0, Spin(ts));
    const TestFunction f = random_test_function(Spin(ts), 1.0, rng, o);
    const TestFunction g = random_test_function(Spin(ts), 1.0, rng, o);
    const auto r = mass_casimir_check(f, g, KernelVariant::Right, ms, ms.m);
    CHECK(r.pass);
    CHECK_FALSE(r.negative_control);
    const auto bad = mass_casimir_check(f, g, KernelVariant::Right, ms, 2.0 * ms.m);
    CHECK(bad.negative_control);
    CHECK_FALSE(bad.pass);
    CHECK(bad.satisfied());
    CHECK(bad.measured >= 1e3 * bad.tolerance);
  }
}
