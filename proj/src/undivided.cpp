#include "sbpdiss/undivided.hpp"

#include <cmath>

namespace sbpdiss {

UndividedDiff build_undivided_diff(const NodalDistribution& dist, int s) {
  const int n = dist.n;
  if (s < 1) throw OrderTooHigh("undivided order s must be >= 1");
  if (s > n - 1)
    throw OrderTooHigh("undivided order s=" + std::to_string(s) +
                       " needs at least s+1 nodes, got N=" + std::to_string(n));
  if ((dist.family == Family::LGL || dist.family == Family::LG) && s != dist.p)
    throw OrderTooHigh("spectral-element dissipation requires s = p");

  double sfact = 1.0;
  for (int k = 2; k <= s; ++k) sfact *= k;

  UndividedDiff ud;
  ud.s = s;
  ud.dist = dist;
  ud.matrix = Mat::Zero(n, n);
  ud.windows.resize(n);

  for (int i = 1; i <= n; ++i) {  // 1-based row index
    int lo, hi;
    if (s % 2 == 0) {
      lo = i - s / 2;
      hi = i + s / 2;
    } else {
      lo = i - s;
      hi = i;
    }
    if (lo < 1) { lo = 1; hi = s + 1; }
    if (hi > n) { lo = n - s; hi = n; }
    ud.windows[i - 1] = {lo - 1, hi - 1};

    const int m = s + 1;
    using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    LVec xs(m);
    for (int j = 0; j < m; ++j) xs(j) = dist.nodes(lo - 1 + j);
    const long double mid = xs.mean();

    // extended-precision solve keeps the row sums near machine-exact; the
    // annihilation of constants (k = 0) is then enforced exactly in double
    LMat v(m, m);
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) v(k, j) = std::pow(xs(j) - mid, (long double)k);
    LVec rhs = LVec::Zero(m);
    rhs(s) = sfact;
    Eigen::FullPivLU<LMat> lu(v);
    if (!lu.isInvertible())
      throw SingularStencil("repeated nodes in stencil window at row " +
                            std::to_string(i));
    LVec c = lu.solve(rhs);
    if (static_cast<double>((v * c - rhs).cwiseAbs().maxCoeff()) > 1e-12 * sfact)
      throw SingularStencil("stencil solve residual too large at row " +
                            std::to_string(i));
    Vec cd(m);
    for (int j = 0; j < m; ++j) cd(j) = static_cast<double>(c(j));
    int imax = 0;
    cd.cwiseAbs().maxCoeff(&imax);
    double sum = 0.0;
    for (int j = 0; j < m; ++j)
      if (j != imax) sum += cd(j);
    cd(imax) = -sum;
    for (int j = 0; j < m; ++j) ud.matrix(i - 1, lo - 1 + j) = cd(j);
  }
  return ud;
}

BoundaryCorrection build_boundary_correction(int n, int s) {
  if (n < s + 1)
    throw Error("boundary correction requires N >= s+1");
  BoundaryCorrection b;
  b.diag = Vec::Ones(n);
  if (s % 2 == 0) {
    b.n_left_zeros = s / 2;
    b.n_right_zeros = s / 2;
  } else {
    b.n_left_zeros = s - s / 2;
    b.n_right_zeros = 0;
  }
  for (int i = 0; i < b.n_left_zeros; ++i) b.diag(i) = 0.0;
  for (int i = 0; i < b.n_right_zeros; ++i) b.diag(n - 1 - i) = 0.0;
  return b;
}

Vec average_coefficient_halfnodes(const Vec& a) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    if (a(i) < 0.0)
      throw NegativeCoefficient("coefficient must be non-negative at node " +
                                std::to_string(i));
  Vec out = Vec::Zero(n);
  for (int i = 1; i < n; ++i) out(i) = 0.5 * (a(i - 1) + a(i));
  return out;
}

}  // namespace sbpdiss
