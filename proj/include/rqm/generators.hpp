#pragma once

#include <array>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "rqm/check_report.hpp"
#include "rqm/hilbert.hpp"

namespace rqm {

enum class Generator { H, P1, P2, P3, J1, J2, J3, K1, K2, K3 };

inline constexpr std::array<Generator, 10> kAllGenerators{
    Generator::H,  Generator::P1, Generator::P2, Generator::P3, Generator::J1,
    Generator::J2, Generator::J3, Generator::K1, Generator::K2, Generator::K3};

std::string_view to_string(Generator g);
Generator parse_generator(std::string_view name);

struct GeneratorTag {
  Generator g;
  KernelVariant v;
};

/// Raised when a function is outside the domain of H or K (a term with
/// tau-exponent 0 has a jump at its support edge, so d/dtau would leave the family).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Spin part of J_i (axis 0..2): right +S, right_dual -S^t, left -S^t, left_dual +S.
SpinMatrix rotation_spin_term(KernelVariant v, Spin s, int axis);
/// Spin part of K_i: right +iS, right_dual -iS^t, left +iS^t, left_dual -iS.
SpinMatrix boost_spin_term(KernelVariant v, Spin s, int axis);

/// H = d/dtau, P = -i grad, J = -i x cross grad + spin, K^j = x^j d/dtau - tau d_j + spin.
/// Throws DomainError for H and K when some term has tau-exponent 0.
TestFunction apply_generator(const GeneratorTag& tag, const TestFunction& f);

/// Right-hand side of [A, B] as a combination of generators.
std::vector<std::pair<cplx, Generator>> commutator_rhs(Generator a, Generator b);

/// [A, B] f minus the expected combination applied to f, computed in the
/// closed family. measured = max residual coefficient / max coefficient of
/// AB f, BA f and the expected terms.
CheckReport check_commutator(Generator a, Generator b, KernelVariant v, const TestFunction& f,
                             double tolerance = 1e-13);

/// |<f|Ag> - <Af|g>| / (|<f|Ag>| + |<Af|g>| + eps), eps = 1e-12 (|f||Ag| + |Af||g|).
CheckReport check_hermiticity(const GeneratorTag& tag, const TestFunction& f, const TestFunction& g,
                              const MassSpin& ms, const QuadratureOptions& opt = {},
                              double tolerance = 1e-7);

/// check_hermiticity for all ten generators, sharing one quadrature grid.
std::vector<CheckReport> check_hermiticity_all(KernelVariant v, const TestFunction& f,
                                               const TestFunction& g, const MassSpin& ms,
                                               const QuadratureOptions& opt = {},
                                               double tolerance = 1e-7);

/// exp(-H delta) realised as the support shift tau0 -> tau0 + delta. Reports
/// semigroup.contraction (max ratio - 1), semigroup.monotone (max increase of
/// the norm ratio between consecutive positive deltas; must be negative),
/// semigroup.law (shift composition, relative tau0 mismatch) and
/// semigroup.mass_gap (ratio e^{m delta} at the largest delta, bound 10).
std::vector<CheckReport> semigroup_contraction_check(const TestFunction& f, KernelVariant v,
                                                     const MassSpin& ms,
                                                     const std::vector<double>& deltas,
                                                     const QuadratureOptions& opt = {});

/// |<f|(H^2 - P^2 - m_check^2) g>| / |<f|g>| with the kernel of mass ms.m.
/// A check with m_check != ms.m is marked as a negative control.
CheckReport mass_casimir_check(const TestFunction& f, const TestFunction& g, KernelVariant v,
                               const MassSpin& ms, double m_check, const QuadratureOptions& opt = {},
                               double tolerance = 1e-7);

}  // namespace rqm
