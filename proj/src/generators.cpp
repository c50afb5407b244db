#include "rqm/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rqm {

namespace {

int axis_of(Generator g) {
  switch (g) {
    case Generator::P1: case Generator::J1: case Generator::K1: return 0;
    case Generator::P2: case Generator::J2: case Generator::K2: return 1;
    case Generator::P3: case Generator::J3: case Generator::K3: return 2;
    default: return -1;
  }
}

enum class Kind { H, P, J, K };

Kind kind_of(Generator g) {
  if (g == Generator::H) return Kind::H;
  if (g <= Generator::P3) return Kind::P;
  if (g <= Generator::J3) return Kind::J;
  return Kind::K;
}

Generator make(Kind k, int axis) {
  const int base = k == Kind::P ? 1 : (k == Kind::J ? 4 : 7);
  return static_cast<Generator>(base + axis);
}

// Levi-Civita symbol: returns the third index and the sign, or sign 0.
std::pair<int, int> epsilon(int i, int j) {
  if (i == j) return {0, 0};
  const int k = 3 - i - j;
  const bool even = (i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0);
  return {k, even ? 1 : -1};
}

void require_domain(const TestFunction& f, Generator g) {
  if (!f.empty() && f.min_tau_degree() < 1)
    throw DomainError(std::string("generator ") + std::string(to_string(g)) +
                      ": every term needs tau-exponent >= 1");
}

}  // namespace

std::string_view to_string(Generator g) {
  static constexpr std::string_view names[] = {"H", "P1", "P2", "P3", "J1", "J2", "J3", "K1", "K2", "K3"};
  return names[static_cast<int>(g)];
}

Generator parse_generator(std::string_view name) {
  for (Generator g : kAllGenerators)
    if (to_string(g) == name) return g;
  throw std::invalid_argument("unknown generator: " + std::string(name));
}

SpinMatrix rotation_spin_term(KernelVariant v, Spin s, int axis) {
  const SpinMatrix S = spin_matrices(s)[axis];
  switch (v) {
    case KernelVariant::Right: return S;
    case KernelVariant::RightDual: return -S.transpose();
    case KernelVariant::Left: return -S.transpose();
    case KernelVariant::LeftDual: return S;
  }
  throw std::invalid_argument("rotation_spin_term: bad variant");
}

SpinMatrix boost_spin_term(KernelVariant v, Spin s, int axis) {
  const SpinMatrix S = spin_matrices(s)[axis];
  switch (v) {
    case KernelVariant::Right: return kI * S;
    case KernelVariant::RightDual: return -kI * S.transpose();
    case KernelVariant::Left: return kI * S.transpose();
    case KernelVariant::LeftDual: return -kI * S;
  }
  throw std::invalid_argument("boost_spin_term: bad variant");
}

TestFunction apply_generator(const GeneratorTag& tag, const TestFunction& f) {
  const int i = axis_of(tag.g);
  switch (kind_of(tag.g)) {
    case Kind::H:
      require_domain(f, tag.g);
      return f.d_tau();
    case Kind::P:
      return cplx(0.0, -1.0) * f.d_space(i);
    case Kind::J: {
      // (x cross grad)_i = x_j d_k - x_k d_j with (i, j, k) cyclic.
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      TestFunction orbital = f.d_space(k).times_space(j) - f.d_space(j).times_space(k);
      return cplx(0.0, -1.0) * orbital + f.mix(rotation_spin_term(tag.v, f.spin(), i));
    }
    case Kind::K: {
      require_domain(f, tag.g);
      TestFunction out = f.d_tau().times_space(i) - f.d_space(i).times_tau();
      return out + f.mix(boost_spin_term(tag.v, f.spin(), i));
    }
  }
  throw std::invalid_argument("apply_generator: bad generator");
}

std::vector<std::pair<cplx, Generator>> commutator_rhs(Generator a, Generator b) {
  const Kind ka = kind_of(a), kb = kind_of(b);
  const int i = axis_of(a), j = axis_of(b);
  const cplx I = kI;
  auto eps_term = [&](Kind out, cplx scale) -> std::vector<std::pair<cplx, Generator>> {
    const auto [k, sign] = epsilon(i, j);
    if (sign == 0) return {};
    return {{scale * double(sign), make(out, k)}};
  };
  auto negate = [](std::vector<std::pair<cplx, Generator>> v) {
    for (auto& t : v) t.first = -t.first;
    return v;
  };

  if (ka == Kind::H && kb == Kind::H) return {};
  // [J_i, X_j] = i eps_ijk X_k for X = J, P, K; [J_i, H] = 0.
  if (ka == Kind::J) {
    if (kb == Kind::H) return {};
    return eps_term(kb, I);
  }
  if (kb == Kind::J) return negate(commutator_rhs(b, a));
  if (ka == Kind::P && (kb == Kind::P || kb == Kind::H)) return {};
  if (ka == Kind::H && kb == Kind::P) return {};
  // [K_i, K_j] = -i eps_ijk J_k
  if (ka == Kind::K && kb == Kind::K) return eps_term(Kind::J, -I);
  // [K_j, H] = i P_j
  if (ka == Kind::K && kb == Kind::H) return {{I, make(Kind::P, i)}};
  if (ka == Kind::H && kb == Kind::K) return negate(commutator_rhs(b, a));
  // [K_i, P_j] = i delta_ij H
  if (ka == Kind::K && kb == Kind::P) {
    if (i != j) return {};
    return {{I, Generator::H}};
  }
  if (ka == Kind::P && kb == Kind::K) return negate(commutator_rhs(b, a));
  throw std::logic_error("commutator_rhs: unhandled pair");
}

CheckReport check_commutator(Generator a, Generator b, KernelVariant v, const TestFunction& f,
                             double tolerance) {
  const TestFunction ab = apply_generator({a, v}, apply_generator({b, v}, f));
  const TestFunction ba = apply_generator({b, v}, apply_generator({a, v}, f));
  TestFunction expected(f.spin());
  for (const auto& [c, g] : commutator_rhs(a, b)) expected += c * apply_generator({g, v}, f);
  const TestFunction residual = ab - ba - expected;
  const double scale =
      std::max({ab.max_coeff(), ba.max_coeff(), expected.max_coeff(), std::numeric_limits<double>::min()});
  auto r = CheckReport::make(
      "generators.commutator",
      {{"a", std::string(to_string(a))}, {"b", std::string(to_string(b))},
       {"variant", std::string(to_string(v))}, {"spin", spin_label(f.spin())}},
      residual.max_coeff() / scale, tolerance);
  return r;
}

namespace {

// Functions ordered f, g, A1 f, A1 g, ...; one grid and one Gram-type matrix
// serve every generator in the list.
std::vector<CheckReport> hermiticity_batch(const std::vector<Generator>& gens, KernelVariant v,
                                           const TestFunction& f, const TestFunction& g,
                                           const MassSpin& ms, const QuadratureOptions& opt,
                                           double tolerance) {
  std::vector<TestFunction> fs{f, g};
  for (Generator gen : gens) {
    fs.push_back(apply_generator({gen, v}, f));
    fs.push_back(apply_generator({gen, v}, g));
  }
  const InnerProductMatrix M = inner_product_matrix(fs, fs, v, ms, opt);
  auto norm = [&](int i) { return std::sqrt(std::max(0.0, M.values(i, i).real())); };
  std::vector<CheckReport> out;
  for (std::size_t n = 0; n < gens.size(); ++n) {
    const int af = 2 + 2 * static_cast<int>(n), ag = af + 1;
    const cplx f_ag = M.values(0, ag), af_g = M.values(af, 1);
    const double eps = 1e-12 * (norm(0) * norm(ag) + norm(af) * norm(1));
    const double dev = std::abs(f_ag - af_g) / (std::abs(f_ag) + std::abs(af_g) + eps);
    auto r = CheckReport::make("hermiticity",
                               {{"generator", std::string(to_string(gens[n]))},
                                {"variant", std::string(to_string(v))},
                                {"spin", spin_label(ms.s)},
                                {"m", ms.m}},
                               dev, tolerance);
    if (!M.converged) r.note = "quadrature refinement disagreement";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

CheckReport check_hermiticity(const GeneratorTag& tag, const TestFunction& f, const TestFunction& g,
                              const MassSpin& ms, const QuadratureOptions& opt, double tolerance) {
  return hermiticity_batch({tag.g}, tag.v, f, g, ms, opt, tolerance).front();
}

std::vector<CheckReport> check_hermiticity_all(KernelVariant v, const TestFunction& f,
                                               const TestFunction& g, const MassSpin& ms,
                                               const QuadratureOptions& opt, double tolerance) {
  return hermiticity_batch({kAllGenerators.begin(), kAllGenerators.end()}, v, f, g, ms, opt, tolerance);
}

std::vector<CheckReport> semigroup_contraction_check(const TestFunction& f, KernelVariant v,
                                                     const MassSpin& ms,
                                                     const std::vector<double>& deltas,
                                                     const QuadratureOptions& opt) {
  for (double d : deltas)
    if (!(d >= 0.0)) throw std::invalid_argument("semigroup: shifts must be nonnegative");
  std::vector<double> sorted(deltas);
  std::sort(sorted.begin(), sorted.end());

  std::vector<TestFunction> shifted{f};
  for (double d : sorted) shifted.push_back(f.time_shift(d));
  const InnerProductMatrix M = inner_product_matrix(shifted, shifted, v, ms, opt);
  const double n0 = M.values(0, 0).real();
  std::vector<double> ratio;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    ratio.push_back(std::sqrt(std::max(0.0, M.values(i + 1, i + 1).real()) / n0));

  const nlohmann::json inputs = {{"variant", std::string(to_string(v))},
                                 {"spin", spin_label(ms.s)},
                                 {"m", ms.m},
                                 {"deltas", sorted},
                                 {"ratios", ratio}};
  std::vector<CheckReport> out;

  double excess = -std::numeric_limits<double>::infinity();
  for (double r : ratio) excess = std::max(excess, r - 1.0);
  out.push_back(CheckReport::make("semigroup.contraction", inputs, std::max(excess, 0.0), 1e-10));

  double increase = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i] > 0.0 || sorted[i + 1] > 0.0) increase = std::max(increase, ratio[i + 1] - ratio[i]);
  auto mono = CheckReport::make("semigroup.monotone", inputs, increase, 0.0);
  mono.pass = increase < 0.0;
  out.push_back(mono);

  // Composition of shifts against the single combined shift, term by term.
  double law = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      const TestFunction two = f.time_shift(sorted[i]).time_shift(sorted[j]);
      const TestFunction one = f.time_shift(sorted[i] + sorted[j]);
      for (int mu = 0; mu < f.spin().dim(); ++mu) {
        const auto& a = two.component(mu);
        const auto& b = one.component(mu);
        if (a.size() != b.size()) {
          law = std::numeric_limits<double>::infinity();
          continue;
        }
        for (std::size_t t = 0; t < a.size(); ++t) {
          const double scale = std::max(1.0, std::abs(b[t].tau0));
          law = std::max(law, std::abs(a[t].tau0 - b[t].tau0) / scale + std::abs(a[t].coeff - b[t].coeff));
        }
      }
    }
  out.push_back(CheckReport::make("semigroup.law", inputs, law,
                                  8.0 * std::numeric_limits<double>::epsilon()));

  if (!sorted.empty() && sorted.back() > 0.0) {
    const double gap = ratio.back() * std::exp(ms.m * sorted.back());
    out.push_back(CheckReport::make("semigroup.mass_gap", inputs, gap, 10.0));
  }
  return out;
}

CheckReport mass_casimir_check(const TestFunction& f, const TestFunction& g, KernelVariant v,
                               const MassSpin& ms, double m_check, const QuadratureOptions& opt,
                               double tolerance) {
  const TestFunction hg = apply_generator({Generator::H, v}, g);
  TestFunction op = apply_generator({Generator::H, v}, hg);
  for (Generator p : {Generator::P1, Generator::P2, Generator::P3})
    op -= apply_generator({p, v}, apply_generator({p, v}, g));
  op -= cplx(m_check * m_check) * g;
  const InnerProductMatrix M = inner_product_matrix({f}, {op, g}, v, ms, opt);
  const double dev = std::abs(M.values(0, 0)) / std::abs(M.values(0, 1));
  auto r = CheckReport::make("casimir.mass",
                             {{"variant", std::string(to_string(v))},
                              {"spin", spin_label(ms.s)},
                              {"m", ms.m},
                              {"m_check", m_check}},
                             dev, tolerance);
  r.negative_control = m_check != ms.m;
  return r;
}

}  // namespace rqm
