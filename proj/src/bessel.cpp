#include "rqm/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rqm {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// A&S 9.6.13 and 9.6.11 with n = 1.
BesselK01 series(double x) {
  const double y = 0.25 * x * x;
  const double lg = std::log(0.5 * x) + std::numbers::egamma;

  // I0, I1 and the harmonic-number sums, accumulated together.
  double term0 = 1.0;  // y^k / (k!)^2
  double term1 = 1.0;  // y^k / (k! (k+1)!)
  double i0 = 1.0, i1 = 1.0;
  double harm = 0.0;  // H_k
  double sum0 = 0.0;
  // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
  double sum1 = 1.0 - 2.0 * std::numbers::egamma;
  for (int k = 1; k < kMaxIter; ++k) {
    term0 *= y / (double(k) * k);
    term1 *= y / (double(k) * (k + 1));
    harm += 1.0 / k;
    i0 += term0;
    i1 += term1;
    sum0 += term0 * harm;
    const double d1 = term1 * (2.0 * harm + 1.0 / (k + 1) - 2.0 * std::numbers::egamma);
    sum1 += d1;
    if (term0 < kEps * i0 && std::abs(d1) < kEps * std::abs(sum1)) break;
  }
  i1 *= 0.5 * x;
  const double k0 = -lg * i0 + sum0;
  const double k1 = 1.0 / x + std::log(0.5 * x) * i1 - 0.25 * x * sum1;
  return {k0, k1};
}

// Numerical Recipes bessik, CF2 branch at order 0.
BesselK01 continued_fraction(double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < kMaxIter; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h *= a1;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  return {k0, k1};
}

}  // namespace

BesselK01 bessel_k01(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k: argument must be positive");
  return x < 2.0 ? series(x) : continued_fraction(x);
}

double bessel_k0(double x) { return bessel_k01(x).k0; }
double bessel_k1(double x) { return bessel_k01(x).k1; }

double bessel_kn(int n, double x) {
  if (n < 0) n = -n;
  const BesselK01 k = bessel_k01(x);
  if (n == 0) return k.k0;
  double km = k.k0, kn = k.k1;
  for (int j = 1; j < n; ++j) {
    const double next = km + (2.0 * j / x) * kn;
    km = kn;
    kn = next;
  }
  return kn;
}

}  // namespace rqm
