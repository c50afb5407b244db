#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "rqm/check_report.hpp"
#include "rqm/matrix2c.hpp"

namespace rqm {

/// Spin s stored as 2s. Magnetic indices are ordered +s, s-1, ..., -s and are
/// carried as 2*mu so half-integers stay exact.
class Spin {
 public:
  static constexpr int kMaxTwice = 20;

  constexpr Spin() = default;
  explicit Spin(int twice_s) : twice_(twice_s) {
    if (twice_s < 0) throw std::invalid_argument("Spin: 2s must be nonnegative");
  }

  int twice() const { return twice_; }
  int dim() const { return twice_ + 1; }
  double value() const { return 0.5 * twice_; }
  /// 2*mu of row/column `index`.
  int twice_mu(int index) const { return twice_ - 2 * index; }
  /// Row/column of 2*mu; -1 when out of range or of the wrong parity.
  int index_of(int twice_mu) const;

  friend bool operator==(Spin a, Spin b) { return a.twice_ == b.twice_; }

 private:
  int twice_ = 0;
};

std::string spin_label(Spin s);

using SpinMatrix = Eigen::MatrixXcd;

/// D^s(A) from the closed factorial sum, for any 2x2 matrix (the formula is a
/// homogeneous polynomial of degree 2s in the entries). Throws for 2s > 20.
SpinMatrix wigner_d_polynomial(Spin s, const Matrix2c& A);

/// D^s(A) for unimodular A (|det A - 1| <= 1e-10, unitarity not required).
SpinMatrix wigner_d(Spin s, const Matrix2c& A);

struct SpinMatrices {
  Spin spin;
  SpinMatrix x, y, z;

  const SpinMatrix& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

/// Angular momentum matrices from S_z and the ladder operators, so that
/// d/dl D^s(exp(i l n.sigma/2)) at l = 0 is i n.S.
SpinMatrices spin_matrices(Spin s);

/// Condon-Shortley <s1 mu1; s2 mu2 | s mu>; arguments are 2*mu. Out-of-range
/// or non-coupling index combinations give 0.
double clebsch_gordan(Spin s1, int twice_mu1, Spin s2, int twice_mu2, Spin s, int twice_mu);

/// max |D^s(A) D^s(B) - D^s(AB)|. Default tolerance 1e-11 when both arguments
/// are SU(2), otherwise 1e-8.
CheckReport check_group_law(Spin s, const Matrix2c& A, const Matrix2c& B,
                            std::optional<double> tolerance = std::nullopt);

/// Max deviation of both coupling identities between D^s1 (x) D^s2 and the
/// direct sum of D^s over s = |s1-s2| .. s1+s2.
CheckReport check_cg_addition(Spin s1, Spin s2, const Matrix2c& A, double tolerance = 1e-10);

}  // namespace rqm
