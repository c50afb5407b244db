#include "rqm/wedge.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/random/sobol.hpp>

namespace rqm {

namespace {

double h(double l) { return l > 0.0 ? std::exp(-1.0 / (l * l)) : 0.0; }

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

// Box enclosing the bulk of the base function.
struct ProbeBox {
  Vec3 center;
  double half_width;
  double tau_max;
};

ProbeBox probe_box(const WedgeFunction& w) {
  const ImportanceDensity d = ImportanceDensity::for_function(w.base());
  return {d.center, 6.0 * d.sigma, d.tau_min + 12.0 / d.rate};
}

template <class F>
void for_each_probe(std::size_t n, F&& body) {
  boost::random::sobol_engine<std::uint32_t, 32> qrng(4);
  for (std::size_t i = 0; i < n; ++i) {
    double u[4];
    for (double& x : u) x = (static_cast<double>(qrng()) + 0.5) * 0x1p-32;
    body(u);
  }
}

int plane_sign(const WedgeFunction& w, const Vec3& plane) {
  const double len = std::sqrt(norm2(plane));
  if (!(len > 0.0)) throw std::invalid_argument("rotate_pointwise: zero plane vector");
  const double c = dot(plane, w.direction()) / len;
  if (std::abs(std::abs(c) - 1.0) > 1e-12)
    throw std::invalid_argument("rotate_pointwise: plane must contain the wedge direction");
  return c > 0.0 ? 1 : -1;
}

}  // namespace

double wedge_multiplier(const FourVectorE& x, const Vec3& n, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("wedge_multiplier: epsilon must be positive");
  const double s = dot(x.spatial(), n);
  const double base = x.tau / eps - eps;
  return h(base + s) * h(base - s);
}

WedgeFunction::WedgeFunction(TestFunction base, const Vec3& direction, double epsilon)
    : base_(std::move(base)), eps_(epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("WedgeFunction: epsilon must be positive");
  const double len = std::sqrt(norm2(direction));
  if (!(len > 0.0)) throw std::invalid_argument("WedgeFunction: zero direction");
  for (int i = 0; i < 3; ++i) n_[i] = direction[i] / len;
}

std::vector<cplx> WedgeFunction::evaluate(const FourVectorE& x) const {
  const double g = wedge_multiplier(x, n_, eps_);
  std::vector<cplx> out(static_cast<std::size_t>(spin().dim()), 0.0);
  if (g == 0.0) return out;
  out = base_.evaluate(x);
  for (cplx& z : out) z *= g;
  return out;
}

bool WedgeFunction::in_wedge(const FourVectorE& x) const {
  const double s = dot(x.spatial(), n_);
  return x.tau > eps_ * (eps_ + s) && x.tau > eps_ * (eps_ - s);
}

FourVectorE rotate_in_plane(const FourVectorE& x, const Vec3& n, double angle) {
  const Vec3 xs = x.spatial();
  const double s = dot(xs, n);
  const double c = std::cos(angle), sn = std::sin(angle);
  const double tau = c * x.tau - sn * s;
  const double ds = sn * x.tau + c * s - s;
  return {tau, xs[0] + ds * n[0], xs[1] + ds * n[1], xs[2] + ds * n[2]};
}

double RotatedWedgeFunction::total_angle() const {
  double t = 0.0;
  for (double a : angles_) t += a;
  return t;
}

std::vector<cplx> RotatedWedgeFunction::evaluate(const FourVectorE& x) const {
  FourVectorE y = x;
  for (auto it = angles_.rbegin(); it != angles_.rend(); ++it) y = rotate_in_plane(y, w_.direction(), -*it);
  return w_.evaluate(y);
}

RotatedWedgeFunction rotate_pointwise(const RotatedWedgeFunction& f, const Vec3& plane, double angle) {
  const double a = plane_sign(f.wedge(), plane) * angle;
  const double limit = std::atan(f.wedge().epsilon());
  if (!(std::abs(f.total_angle() + a) < limit))
    throw std::invalid_argument("rotate_pointwise: total angle must stay below arctan(epsilon)");
  RotatedWedgeFunction out = f;
  out.angles_.push_back(a);
  return out;
}

RotatedWedgeFunction rotate_pointwise(const WedgeFunction& f, const Vec3& plane, double angle) {
  return rotate_pointwise(RotatedWedgeFunction(f), plane, angle);
}

CheckReport wedge_support_check(const WedgeFunction& w, std::size_t probes) {
  const ProbeBox box = probe_box(w);
  std::size_t nonzero = 0, outside = 0;
  for_each_probe(probes, [&](const double* u) {
    const FourVectorE x{u[0] * box.tau_max, box.center[0] + box.half_width * (2.0 * u[1] - 1.0),
                        box.center[1] + box.half_width * (2.0 * u[2] - 1.0),
                        box.center[2] + box.half_width * (2.0 * u[3] - 1.0)};
    if (max_abs(w.evaluate(x)) == 0.0) return;
    ++nonzero;
    if (!w.in_wedge(x)) ++outside;
  });
  return CheckReport::make("wedge.support_inside",
                           {{"epsilon", w.epsilon()}, {"probes", probes}, {"nonzero_probes", nonzero}},
                           static_cast<double>(outside), 0.0);
}

CheckReport rotated_support_check(const RotatedWedgeFunction& f, std::size_t probes) {
  const ProbeBox box = probe_box(f.wedge());
  double worst = 0.0;
  for_each_probe(probes, [&](const double* u) {
    const FourVectorE x{-u[0] * box.tau_max, box.center[0] + box.half_width * (2.0 * u[1] - 1.0),
                        box.center[1] + box.half_width * (2.0 * u[2] - 1.0),
                        box.center[2] + box.half_width * (2.0 * u[3] - 1.0)};
    worst = std::max(worst, max_abs(f.evaluate(x)));
  });
  return CheckReport::make("wedge.support_preserved",
                           {{"epsilon", f.wedge().epsilon()}, {"angle", f.total_angle()}, {"probes", probes}},
                           worst, 1e-300);
}

std::vector<CheckReport> boost_wedge_check(const WedgeFunction& w1, const WedgeFunction& w2,
                                           const std::vector<double>& angles, double m,
                                           std::uint64_t seed, const WedgeCheckOptions& opt) {
  if (w1.spin().twice() != 0 || w2.spin().twice() != 0)
    throw std::invalid_argument("boost_wedge_check: spin 0 only");
  const double limit = std::min(std::atan(w1.epsilon()), std::atan(w2.epsilon()));
  for (double a : angles)
    if (!(std::abs(a) < limit)) throw std::invalid_argument("boost_wedge_check: angle >= arctan(epsilon)");

  // Densities start at tau = 0 so they also cover the rotated supports.
  ImportanceDensity d1 = ImportanceDensity::for_function(w1.base());
  ImportanceDensity d2 = ImportanceDensity::for_function(w2.base());
  d1.tau_min = d2.tau_min = 0.0;
  const Mat4 theta = time_reflection();
  auto side = [](auto fn, const ImportanceDensity& d, const Mat4& map) {
    return McSide{[fn](const FourVectorE& x) { return fn.evaluate(x)[0]; }, d, map};
  };

  std::vector<CheckReport> out;
  const McResult base = two_point_mc(side(w1, d1, theta), side(w2, d2, Mat4::Identity()), m, seed + 1, opt.mc);
  double slope = 0.0;
  nlohmann::json devs = nlohmann::json::array();
  for (double a : angles) {
    const RotatedWedgeFunction r1 = rotate_pointwise(w1, w1.direction(), a);
    const RotatedWedgeFunction r2 = rotate_pointwise(w2, w2.direction(), a);
    auto s1 = rotated_support_check(r1, opt.probes);
    auto s2 = rotated_support_check(r2, opt.probes);
    s1.inputs["function"] = "w1";
    s2.inputs["function"] = "w2";
    out.push_back(std::move(s1));
    out.push_back(std::move(s2));

    // <E w1|w2> and <w1|E w2>; independent point sets unless the angle is 0.
    const McResult left =
        two_point_mc(side(r1, d1, theta), side(w2, d2, Mat4::Identity()), m, a == 0.0 ? seed + 1 : seed, opt.mc);
    const McResult right = two_point_mc(side(w1, d1, theta), side(r2, d2, Mat4::Identity()), m, seed + 1, opt.mc);
    const double sigma = std::hypot(left.std_error, right.std_error);
    const double diff = std::abs(left.value - right.value);
    const double z = diff == 0.0 ? 0.0 : diff / sigma;
    auto r = CheckReport::make("wedge.symmetry",
                               {{"angle", a},
                                {"epsilon", w1.epsilon()},
                                {"m", m},
                                {"seed", seed},
                                {"points", left.points},
                                {"rotated_left", {left.value.real(), left.value.imag()}},
                                {"rotated_right", {right.value.real(), right.value.imag()}},
                                {"relative_std_error", sigma / std::abs(base.value)}},
                               z, 3.0);
    r.std_error = sigma;
    if (!(sigma <= 0.02 * std::abs(base.value))) {
      r.pass = false;
      r.note = "standard error above 2% of the unrotated value";
    }
    out.push_back(std::move(r));

    if (a != 0.0) {
      // Same point set as the unrotated value, so the difference is smooth in the angle.
      const double dev = std::abs(right.value - base.value) / std::abs(base.value);
      slope = std::max(slope, dev / std::abs(a));
      devs.push_back({{"angle", a}, {"relative_deviation", dev}});
    }
  }
  auto c = CheckReport::make("wedge.continuity",
                             {{"epsilon", w1.epsilon()}, {"m", m}, {"seed", seed}, {"deviations", devs},
                              {"unrotated", {base.value.real(), base.value.imag()}}},
                             slope, opt.slope_bound);
  c.std_error = base.std_error;
  out.push_back(std::move(c));
  out.insert(out.begin(), wedge_support_check(w2, opt.probes));
  out.insert(out.begin(), wedge_support_check(w1, opt.probes));
  return out;
}

}  // namespace rqm
