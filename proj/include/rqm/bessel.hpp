#pragma once

namespace rqm {

struct BesselK01 {
  double k0;
  double k1;
};

/// K_0(x) and K_1(x) for x > 0. Power series with the logarithmic term below
/// x = 2, Steed's continued fraction (Temme's form) above. Throws
/// std::domain_error for x <= 0.
BesselK01 bessel_k01(double x);

double bessel_k0(double x);
double bessel_k1(double x);

/// K_n(x) by upward recurrence from K_0, K_1 (stable in this direction).
double bessel_kn(int n, double x);

}  // namespace rqm
