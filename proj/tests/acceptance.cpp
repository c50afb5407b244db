// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rqm/bessel.hpp"
#include "rqm/generators.hpp"
#include "rqm/hilbert.hpp"
#include "rqm/irrep.hpp"
#include "rqm/kernels.hpp"
#include "rqm/monte_carlo.hpp"
#include "rqm/quadrature.hpp"
#include "rqm/random.hpp"
#include "rqm/spin.hpp"
#include "rqm/wedge.hpp"

using namespace rqm;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int failures = 0;

void criterion(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s  %-34s %s  time %.1f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
              secs, budget_s, in_time ? "" : " over budget");
  std::fflush(stdout);
}

Term envelope(double alpha, double beta, Vec3 center = {}, double tau0 = 0.0) {
  Term t;
  t.alpha = alpha;
  t.beta = beta;
  t.center = center;
  t.tau0 = tau0;
  return t;
}

// (m^2 / (2 pi^2)) int_0^inf sinh^2 t exp(-m r cosh t) dt: the 4D inverse
// Fourier transform of 2 / ((2 pi)^4 (p^2 + m^2)) after the p^0 and angular integrals.
double radial_oracle(double r, double m) {
  const double tmax = std::acosh(1.0 + 60.0 / (m * r));
  const int pieces = static_cast<int>(std::ceil(tmax / 0.05));
  const double w = tmax / pieces;
  double sum = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const GaussRule g = gauss_legendre(24, i * w, (i + 1) * w);
    for (std::size_t j = 0; j < g.nodes.size(); ++j)
      sum += g.weights[j] * std::pow(std::sinh(g.nodes[j]), 2) * std::exp(-m * r * std::cosh(g.nodes[j]));
  }
  return m * m * sum / (2.0 * kPi * kPi);
}

}  // namespace

int main() {
  criterion("wigner representation law", 5, [] {
    Rng rng(101);
    double su2 = 0.0, sl2c = 0.0;
    for (int ts = 0; ts <= 4; ++ts)
      for (int i = 0; i < 100; ++i) {
        su2 = std::max(su2, check_group_law(Spin(ts), random_su2(rng), random_su2(rng)).measured);
        sl2c = std::max(sl2c, check_group_law(Spin(ts), random_sl2c(rng), random_sl2c(rng)).measured);
      }
    return Outcome{su2 < 1e-11 && sl2c < 1e-8, fmt("su2 %.2e < 1e-11, ", su2) + fmt("sl2c %.2e < 1e-8", sl2c)};
  });

  criterion("clebsch-gordan addition", 5, [] {
    Rng rng(102);
    double worst = 0.0;
    for (auto [a, b] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
      worst = std::max(worst, check_cg_addition(Spin(a), Spin(b), random_su2(rng)).measured);
      worst = std::max(worst, check_cg_addition(Spin(a), Spin(b), random_sl2c(rng)).measured);
      worst = std::max(worst, check_cg_addition(Spin(a), Spin(b), sl2c_boost({0, 0, 1}, 0.5)).measured);
    }
    return Outcome{worst < 1e-10, fmt("max deviation %.2e < 1e-10", worst)};
  });

  criterion("kernel positivity factorization", 5, [] {
    Rng rng(103);
    double worst = 0.0;
    for (int ts = 0; ts <= 4; ++ts)
      for (int i = 0; i < 100; ++i)
        worst = std::max(worst, check_factorization(MassSpin::make(1.0, Spin(ts)), random_vec3(rng, 2.0)).measured);
    return Outcome{worst < 1e-10, fmt("max deviation %.2e < 1e-10", worst)};
  });

  criterion("position kernel identity", 10, [] {
    double worst = 0.0;
    for (double m : {0.5, 1.0, 2.0}) {
      const MassSpin ms = MassSpin::make(m, Spin(0));
      for (int i = 0; i < 20; ++i) {
        const double r = 0.1 * std::pow(100.0, i / 19.0) / m;
        const double k = position_kernel(KernelVariant::Right, ms, {0.0, r, 0.0, 0.0})(0, 0).real();
        worst = std::max(worst, std::abs(k / radial_oracle(r, m) - 1.0));
      }
    }
    const double eta = 1e-5, small = std::abs(eta * bessel_k1(eta) - 1.0);
    return Outcome{worst < 1e-6 && small < 1e-4,
                   fmt("radial rel %.2e < 1e-6, ", worst) + fmt("|eta K1(eta) - 1| %.2e < 1e-4", small)};
  });

  criterion("reflection positivity", 120, [] {
    double worst = -std::numeric_limits<double>::infinity();
    int cases = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      for (int ts = 0; ts <= 2; ++ts)
        for (KernelVariant v : kAllVariants) {
          Rng rng(1000 * seed + 10 * ts + static_cast<int>(v));
          const MassSpin ms = MassSpin::make(1.0, Spin(ts));
          std::vector<TestFunction> fs;
          for (int i = 0; i < 20; ++i) fs.push_back(random_test_function(ms.s, 1.0, rng));
          const GramReport g = gram_matrix(fs, v, ms);
          worst = std::max(worst, -g.min_eigenvalue / g.max_eigenvalue);
          ++cases;
        }
    return Outcome{worst <= 1e-10,
                   std::to_string(cases) + " Gram matrices 20x20, max(-lmin/lmax) " + fmt("%.2e <= 1e-10", worst)};
  });

  criterion("lie algebra", 30, [] {
    FamilyOptions o;
    o.min_k = 2;
    o.max_k = 3;
    o.max_spatial_degree = 2;
    o.terms_per_component = 2;
    Rng rng(105);
    double worst = 0.0;
    int pairs = 0;
    for (int ts = 0; ts <= 2; ++ts)
      for (KernelVariant v : kAllVariants) {
        const TestFunction f = random_test_function(Spin(ts), 1.0, rng, o);
        for (std::size_t a = 0; a < kAllGenerators.size(); ++a)
          for (std::size_t b = a + 1; b < kAllGenerators.size(); ++b) {
            worst = std::max(worst, check_commutator(kAllGenerators[a], kAllGenerators[b], v, f).measured);
            ++pairs;
          }
      }
    return Outcome{worst < 1e-13 && pairs == 45 * 12, std::to_string(pairs) + fmt(" pairs, max residual %.2e < 1e-13", worst)};
  });

  criterion("hermiticity", 120, [] {
    Rng rng(106);
    double worst = 0.0;
    int checks = 0;
    for (int pair = 0; pair < 10; ++pair) {
      const MassSpin ms = MassSpin::make(1.0, Spin(pair % 3));
      const TestFunction f = random_test_function(ms.s, 1.0, rng), g = random_test_function(ms.s, 1.0, rng);
      for (KernelVariant v : kAllVariants)
        for (const CheckReport& r : check_hermiticity_all(v, f, g, ms)) {
          worst = std::max(worst, r.measured);
          ++checks;
        }
    }
    return Outcome{worst < 1e-7 && checks == 400, std::to_string(checks) + fmt(" checks, max relative %.2e < 1e-7", worst)};
  });

  criterion("contraction semigroup", 30, [] {
    Rng rng(107);
    double contraction = 0.0, increase = -std::numeric_limits<double>::infinity(), gap = 0.0;
    bool law = true;
    for (int ts = 0; ts <= 2; ++ts)
      for (KernelVariant v : kAllVariants) {
        const MassSpin ms = MassSpin::make(1.0, Spin(ts));
        const auto reports =
            semigroup_contraction_check(random_test_function(ms.s, 1.0, rng), v, ms, {0.0, 0.1, 0.5, 1.0, 10.0});
        for (const CheckReport& r : reports) {
          if (r.name == "semigroup.contraction") contraction = std::max(contraction, r.measured);
          if (r.name == "semigroup.monotone") increase = std::max(increase, r.measured);
          if (r.name == "semigroup.mass_gap") gap = std::max(gap, r.measured);
          if (r.name == "semigroup.law") law = law && r.pass;
        }
      }
    return Outcome{contraction <= 1e-10 && increase < 0.0 && gap <= 10.0 && law,
                   fmt("ratio-1 %.1e <= 1e-10, ", contraction) + fmt("max step %.2e < 0, ", increase) +
                       fmt("ratio e^{m dt} at dt=10/m %.3f <= 10", gap)};
  });

  criterion("wedge local semigroup", 300, [] {
    const WedgeFunction w1(TestFunction::single(Spin(0), 0, envelope(1.0, 1.0, {0.0, 0.0, 0.1})), {0, 0, 1}, 0.5);
    const WedgeFunction w2(TestFunction::single(Spin(0), 0, envelope(1.5, 0.8, {0.2, 0.0, -0.1})), {0, 0, 1}, 0.5);
    WedgeCheckOptions opt;
    opt.mc.points = 1'000'000;
    const auto reports = boost_wedge_check(w1, w2, {0.0, 0.05, 0.1, 0.2}, 1.0, 108, opt);
    bool support = true, symmetry = true;
    double z = 0.0, rel = 0.0;
    for (const CheckReport& r : reports) {
      if (r.name.rfind("wedge.support", 0) == 0) support = support && r.pass && r.measured == 0.0;
      if (r.name == "wedge.symmetry") {
        symmetry = symmetry && r.pass;
        z = std::max(z, r.measured);
        rel = std::max(rel, r.inputs["relative_std_error"].get<double>());
      }
    }
    return Outcome{support && symmetry, std::string(support ? "support exact" : "support violated") +
                                            fmt(", max |diff|/sigma %.2f <= 3", z) +
                                            fmt(", sigma/value %.1e <= 0.02", rel)};
  });

  criterion("irrep group law and unitarity", 60, [] {
    Rng rng(109);
    double law = 0.0, unit = 0.0;
    for (int i = 0; i < 20; ++i) {
      const MassSpin ms = MassSpin::make(1.0, Spin(i % 3));
      const IrrepState psi = IrrepState::from_test_function(random_test_function(ms.s, 1.0, rng), ms);
      const PoincareElement g1 = random_poincare(rng, 0.5, 1.0), g2 = random_poincare(rng, 0.5, 1.0);
      law = std::max(law, check_irrep_group_law(psi, g1, g2).measured);
      unit = std::max(unit, check_irrep_unitarity(psi, g1).measured);
    }
    return Outcome{law < 1e-6 && unit < 1e-6, fmt("group law %.2e < 1e-6, ", law) + fmt("unitarity %.2e < 1e-6", unit)};
  });

  criterion("mass casimir", 30, [] {
    FamilyOptions o;
    o.min_k = 2;
    o.max_k = 3;
    Rng rng(110);
    double good = 0.0, control = std::numeric_limits<double>::infinity();
    for (int ts = 0; ts <= 2; ++ts)
      for (KernelVariant v : kAllVariants) {
        const MassSpin ms = MassSpin::make(1.0, Spin(ts));
        const TestFunction f = random_test_function(ms.s, 1.0, rng, o), g = random_test_function(ms.s, 1.0, rng, o);
        good = std::max(good, mass_casimir_check(f, g, v, ms, 1.0).measured);
        control = std::min(control, mass_casimir_check(f, g, v, ms, 2.0).measured);
      }
    return Outcome{good < 1e-7 && control >= 1e3 * 1e-7,
                   fmt("residual %.2e < 1e-7, ", good) + fmt("wrong-mass control %.2e >= 1e-4", control)};
  });

  criterion("monte carlo cross-check", 300, [] {
    const MassSpin ms = MassSpin::make(1.0, Spin(0));
    const TestFunction f = TestFunction::single(Spin(0), 0, envelope(1.0, 1.0, {}, 0.2));
    const TestFunction g = TestFunction::single(Spin(0), 0, envelope(1.4, 0.7, {0.3, 0.0, -0.2}, 0.3));
    bool pass = true;
    std::string detail;
    for (const auto& [a, b, label] : {std::tuple{f, f, "(f,f)"}, std::tuple{f, g, "(f,g)"}}) {
      const CheckReport r = mc_crosscheck(a, b, ms, 112);
      const double rel = r.inputs["relative_std_error"].get<double>();
      pass = pass && r.measured <= 3.0 && rel <= 0.02;
      detail += std::string(label) + fmt(" %.2f sigma", r.measured) + fmt(" (sigma/value %.1e) ", rel);
    }
    return Outcome{pass, detail};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
