#pragma once

#include <cstdint>
#include <vector>

#include "rqm/check_report.hpp"
#include "rqm/monte_carlo.hpp"
#include "rqm/test_function.hpp"

namespace rqm {

/// h(tau/eps - eps + x.n) h(tau/eps - eps - x.n) with h(l) = exp(-1/l^2) for
/// l > 0 and 0 otherwise. Nonzero exactly on tau > eps (eps + |x.n|).
/// Throws std::invalid_argument unless eps > 0.
double wedge_multiplier(const FourVectorE& x, const Vec3& n, double eps);

/// base(x) * wedge_multiplier(x, direction, epsilon).
class WedgeFunction {
 public:
  /// direction is normalised; throws for a zero direction or epsilon <= 0.
  WedgeFunction(TestFunction base, const Vec3& direction, double epsilon);

  const TestFunction& base() const { return base_; }
  const Vec3& direction() const { return n_; }
  double epsilon() const { return eps_; }
  Spin spin() const { return base_.spin(); }

  std::vector<cplx> evaluate(const FourVectorE& x) const;
  /// Both wedge inequalities, strict.
  bool in_wedge(const FourVectorE& x) const;

 private:
  TestFunction base_;
  Vec3 n_;
  double eps_;
};

/// O(angle) x: rotation in the (tau, x.n) plane,
/// tau' = cos tau - sin s, s' = sin tau + cos s with s = x.n.
FourVectorE rotate_in_plane(const FourVectorE& x, const Vec3& n, double angle);

/// x -> f(O(l_k)^-1 ... O(l_1)^-1 x) for the rotations applied so far.
class RotatedWedgeFunction {
 public:
  explicit RotatedWedgeFunction(WedgeFunction w) : w_(std::move(w)) {}

  const WedgeFunction& wedge() const { return w_; }
  const std::vector<double>& angles() const { return angles_; }
  double total_angle() const;
  std::vector<cplx> evaluate(const FourVectorE& x) const;

 private:
  friend RotatedWedgeFunction rotate_pointwise(const RotatedWedgeFunction&, const Vec3&, double);
  WedgeFunction w_;
  std::vector<double> angles_;
};

/// Rotation by `angle` in the plane spanned by tau and `plane`, which must be
/// parallel to the wedge direction. Throws std::invalid_argument when the
/// accumulated angle reaches arctan(epsilon) or the plane is not the wedge's.
RotatedWedgeFunction rotate_pointwise(const WedgeFunction& f, const Vec3& plane, double angle);
RotatedWedgeFunction rotate_pointwise(const RotatedWedgeFunction& f, const Vec3& plane, double angle);

/// Quasi-random probes in the box tau in (0, L], |x - c| <= L around the base
/// centers; measured = number of nonzero samples outside the wedge.
CheckReport wedge_support_check(const WedgeFunction& w, std::size_t probes = 10000);

/// Probes with tau < 0; measured = max |value| of the rotated function.
CheckReport rotated_support_check(const RotatedWedgeFunction& f, std::size_t probes = 10000);

struct WedgeCheckOptions {
  McOptions mc;
  std::size_t probes = 10000;
  /// Bound on the continuity slope |<w1|E(l) w2> - <w1|w2>| / (l |<w1|w2>|).
  double slope_bound = 100.0;
};

/// For each angle: support of E(l) w1 and E(l) w2 in tau > 0, and
/// <E(l) w1|w2> = <w1|E(l) w2> within 3 combined standard errors (s = 0,
/// position-space Monte Carlo), failing also when the combined standard error
/// exceeds 2% of |<w1|w2>|. Then the continuity slope over the nonzero angles,
/// computed with common random numbers.
std::vector<CheckReport> boost_wedge_check(const WedgeFunction& w1, const WedgeFunction& w2,
                                           const std::vector<double>& angles, double m,
                                           std::uint64_t seed, const WedgeCheckOptions& opt = {});

}  // namespace rqm
