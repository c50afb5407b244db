#include "rqm/spin.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace rqm {

namespace {

constexpr int kMaxFactorial = 40;

// Exact through 25!; the D formula only needs up to 20!.
const std::array<long double, kMaxFactorial + 1>& factorials() {
  static const auto table = [] {
    std::array<long double, kMaxFactorial + 1> f{};
    f[0] = 1.0L;
    for (int n = 1; n <= kMaxFactorial; ++n) f[n] = f[n - 1] * n;
    return f;
  }();
  return table;
}

long double fact(int n) { return factorials().at(static_cast<std::size_t>(n)); }

// Neumaier-compensated complex accumulator.
struct CompensatedSum {
  double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

  static void add(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  void operator+=(cplx z) {
    add(re, cre, z.real());
    add(im, cim, z.imag());
  }
  cplx value() const { return {re + cre, im + cim}; }
};

// One term of the D sum: coefficient and the four exponents.
struct DTerm {
  double coeff;
  int pa, pb, pc, pd;
};

struct DTable {
  int twice_s = 0;
  // terms[row * dim + col]
  std::vector<std::vector<DTerm>> terms;
};

DTable build_table(int ts) {
  DTable t;
  t.twice_s = ts;
  const int dim = ts + 1;
  t.terms.resize(static_cast<std::size_t>(dim * dim));
  for (int r = 0; r < dim; ++r) {
    // s + mu = ts - r for row r, s - mu = r.
    const int n1 = ts - r, n2 = r;
    for (int c = 0; c < dim; ++c) {
      const int m1 = ts - c, m2 = c;
      const long double num = std::sqrt(fact(n1) * fact(n2) * fact(m1) * fact(m2));
      auto& cell = t.terms[static_cast<std::size_t>(r * dim + c)];
      const int kmin = std::max(0, n1 + m1 - ts);
      const int kmax = std::min(n1, m1);
      for (int k = kmin; k <= kmax; ++k) {
        const int pb = n1 - k, pc = m1 - k, pd = k - n1 - m1 + ts;
        const long double den = fact(k) * fact(pb) * fact(pc) * fact(pd);
        cell.push_back({static_cast<double>(num / den), k, pb, pc, pd});
      }
    }
  }
  return t;
}

const DTable& table_for(int ts) {
  static const auto tables = [] {
    std::vector<DTable> v;
    for (int ts = 0; ts <= Spin::kMaxTwice; ++ts) v.push_back(build_table(ts));
    return v;
  }();
  return tables.at(static_cast<std::size_t>(ts));
}

}  // namespace

int Spin::index_of(int twice_mu) const {
  if (twice_mu > twice_ || twice_mu < -twice_) return -1;
  if (((twice_ - twice_mu) & 1) != 0) return -1;
  return (twice_ - twice_mu) / 2;
}

std::string spin_label(Spin s) {
  return (s.twice() % 2 == 0) ? std::to_string(s.twice() / 2) : std::to_string(s.twice()) + "/2";
}

SpinMatrix wigner_d_polynomial(Spin s, const Matrix2c& A) {
  const int ts = s.twice();
  if (ts > Spin::kMaxTwice) throw std::domain_error("wigner_d: 2s > 20 is not supported");
  const int dim = s.dim();
  // Power tables; std::pow(0, 0) issues are avoided by explicit products.
  std::vector<cplx> pa(dim), pb(dim), pc(dim), pd(dim);
  pa[0] = pb[0] = pc[0] = pd[0] = 1.0;
  for (int j = 1; j < dim; ++j) {
    pa[j] = pa[j - 1] * A(0, 0);
    pb[j] = pb[j - 1] * A(0, 1);
    pc[j] = pc[j - 1] * A(1, 0);
    pd[j] = pd[j - 1] * A(1, 1);
  }
  const DTable& t = table_for(ts);
  SpinMatrix D(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      CompensatedSum acc;
      for (const DTerm& term : t.terms[static_cast<std::size_t>(r * dim + c)])
        acc += term.coeff * pa[term.pa] * pb[term.pb] * pc[term.pc] * pd[term.pd];
      D(r, c) = acc.value();
    }
  return D;
}

SpinMatrix wigner_d(Spin s, const Matrix2c& A) {
  if (!is_unimodular(A, 1e-10)) throw std::domain_error("wigner_d: |det A - 1| > 1e-10");
  return wigner_d_polynomial(s, A);
}

SpinMatrices spin_matrices(Spin s) {
  const int dim = s.dim();
  const double sv = s.value();
  SpinMatrix sz = SpinMatrix::Zero(dim, dim);
  SpinMatrix raise = SpinMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double mu = 0.5 * s.twice_mu(i);
    sz(i, i) = mu;
    if (i > 0) raise(i - 1, i) = std::sqrt(sv * (sv + 1.0) - mu * (mu + 1.0));
  }
  const SpinMatrix lower = raise.adjoint();
  SpinMatrices out{s, 0.5 * (raise + lower), (raise - lower) / cplx(0.0, 2.0), sz};
  return out;
}

double clebsch_gordan(Spin s1, int tm1, Spin s2, int tm2, Spin s, int tm) {
  const int j1 = s1.twice(), j2 = s2.twice(), J = s.twice();
  if (tm1 + tm2 != tm) return 0.0;
  if (s1.index_of(tm1) < 0 || s2.index_of(tm2) < 0 || s.index_of(tm) < 0) return 0.0;
  if (J < std::abs(j1 - j2) || J > j1 + j2 || ((j1 + j2 + J) & 1) != 0) return 0.0;

  // Racah's closed form; all factorial arguments below are integers.
  const int a = (J + j1 - j2) / 2, b = (J - j1 + j2) / 2, c = (j1 + j2 - J) / 2;
  const int d = (j1 + j2 + J) / 2 + 1;
  const long double pref =
      std::sqrt((J + 1) * fact(a) * fact(b) * fact(c) / fact(d) * fact((J + tm) / 2) *
                fact((J - tm) / 2) * fact((j1 - tm1) / 2) * fact((j1 + tm1) / 2) *
                fact((j2 - tm2) / 2) * fact((j2 + tm2) / 2));
  const int e1 = c, e2 = (j1 - tm1) / 2, e3 = (j2 + tm2) / 2;
  const int f1 = (J - j2 + tm1) / 2, f2 = (J - j1 - tm2) / 2;
  const int kmin = std::max({0, -f1, -f2});
  const int kmax = std::min({e1, e2, e3});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double term =
        1.0L / (fact(k) * fact(e1 - k) * fact(e2 - k) * fact(e3 - k) * fact(f1 + k) * fact(f2 + k));
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>(pref * sum);
}

CheckReport check_group_law(Spin s, const Matrix2c& A, const Matrix2c& B,
                            std::optional<double> tolerance) {
  const SpinMatrix lhs = wigner_d(s, A) * wigner_d(s, B);
  const SpinMatrix rhs = wigner_d(s, A * B);
  const double dev = (lhs - rhs).cwiseAbs().maxCoeff();
  const double tol = tolerance.value_or(is_su2(A, 1e-10) && is_su2(B, 1e-10) ? 1e-11 : 1e-8);
  return CheckReport::make("wigner.group_law",
                           {{"spin", spin_label(s)}, {"su2", is_su2(A, 1e-10) && is_su2(B, 1e-10)}},
                           dev, tol);
}

CheckReport check_cg_addition(Spin s1, Spin s2, const Matrix2c& A, double tolerance) {
  const int d1 = s1.dim(), d2 = s2.dim(), n = d1 * d2;
  // Rows: (s, mu) blocks for s = s1+s2 down to |s1-s2|; columns: (mu1, mu2).
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  SpinMatrix direct_sum = SpinMatrix::Zero(n, n);
  int row0 = 0;
  for (int J = s1.twice() + s2.twice(); J >= std::abs(s1.twice() - s2.twice()); J -= 2) {
    const Spin s(J);
    const SpinMatrix D = wigner_d(s, A);
    direct_sum.block(row0, row0, s.dim(), s.dim()) = D;
    for (int i = 0; i < s.dim(); ++i)
      for (int i1 = 0; i1 < d1; ++i1)
        for (int i2 = 0; i2 < d2; ++i2)
          C(row0 + i, i1 * d2 + i2) =
              clebsch_gordan(s1, s1.twice_mu(i1), s2, s2.twice_mu(i2), s, s.twice_mu(i));
    row0 += s.dim();
  }
  const SpinMatrix D1 = wigner_d(s1, A), D2 = wigner_d(s2, A);
  SpinMatrix prod(n, n);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int j1 = 0; j1 < d1; ++j1)
      prod.block(i1 * d2, j1 * d2, d2, d2) = D1(i1, j1) * D2;
  const SpinMatrix Cc = C.cast<cplx>();
  const double dev_reduce = (direct_sum - Cc * prod * Cc.transpose()).cwiseAbs().maxCoeff();
  const double dev_expand = (prod - Cc.transpose() * direct_sum * Cc).cwiseAbs().maxCoeff();
  auto r = CheckReport::make("wigner.cg_addition",
                             {{"s1", spin_label(s1)}, {"s2", spin_label(s2)},
                              {"reduce_deviation", dev_reduce}, {"expand_deviation", dev_expand}},
                             std::max(dev_reduce, dev_expand), tolerance);
  return r;
}

}  // namespace rqm
