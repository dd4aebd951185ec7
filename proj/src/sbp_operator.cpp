#include "sbpdiss/sbp_operator.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace sbpdiss {

namespace {

// Interior central-difference stencil of order 2p (half-width p).
std::vector<double> interior_stencil(int p) {
  Mat a = Mat::Zero(p, p);
  Vec b = Vec::Zero(p);
  for (int m = 1; m <= p; ++m) {
    for (int k = 1; k <= p; ++k) a(m - 1, k - 1) = 2.0 * std::pow(k, 2 * m - 1);
    b(m - 1) = (m == 1) ? 1.0 : 0.0;
  }
  Vec c = a.fullPivLu().solve(b);
  std::vector<double> st(2 * p + 1, 0.0);
  for (int k = 1; k <= p; ++k) {
    st[p + k] = c(k - 1);
    st[p - k] = -c(k - 1);
  }
  return st;
}

struct Closure {
  std::vector<double> hb;                  // boundary norm weights
  std::vector<std::vector<double>> rows;   // boundary rows of D (undivided)
};

// Classical diagonal-norm closures. Interior order 2p, boundary order p.
// All sets are verified against the SBP and accuracy conditions in the tests
// rather than trusted.
Closure csbp_closure(int p) {
  Closure c;
  switch (p) {
    case 1:
      c.hb = {0.5};
      c.rows = {{-1.0, 1.0}};
      break;
    case 2:
      c.hb = {17.0 / 48, 59.0 / 48, 43.0 / 48, 49.0 / 48};
      c.rows = {
          {-24.0 / 17, 59.0 / 34, -4.0 / 17, -3.0 / 34, 0, 0},
          {-1.0 / 2, 0, 1.0 / 2, 0, 0, 0},
          {4.0 / 43, -59.0 / 86, 0, 59.0 / 86, -4.0 / 43, 0},
          {3.0 / 98, 0, -59.0 / 98, 0, 32.0 / 49, -4.0 / 49},
      };
      break;
    case 3:
      c.hb = {13649.0 / 43200, 12013.0 / 8640, 2711.0 / 4320,
              5359.0 / 4320,   7877.0 / 8640,  43801.0 / 43200};
      c.rows = {
          {-21600.0 / 13649, 104009.0 / 54596, 30443.0 / 81894,
           -33311.0 / 27298, 16863.0 / 27298, -15025.0 / 163788, 0, 0, 0},
          {-104009.0 / 240260, 0, -311.0 / 72078, 20229.0 / 24026,
           -24337.0 / 48052, 36661.0 / 360390, 0, 0, 0},
          {-30443.0 / 162660, 311.0 / 32532, 0, -11155.0 / 16266,
           41287.0 / 32532, -21999.0 / 54220, 0, 0, 0},
          {33311.0 / 107180, -20229.0 / 21436, 485.0 / 1398, 0,
           4147.0 / 21436, 25427.0 / 321540, 72.0 / 5359, 0, 0},
          {-16863.0 / 78770, 24337.0 / 31508, -41287.0 / 47262,
           -4147.0 / 15754, 0, 342523.0 / 472620, -1296.0 / 7877,
           144.0 / 7877, 0},
          {15025.0 / 525612, -36661.0 / 262806, 21999.0 / 87602,
           -25427.0 / 262806, -342523.0 / 525612, 0, 32400.0 / 43801,
           -6480.0 / 43801, 720.0 / 43801},
      };
      break;
    case 4:
      // Minimum-Frobenius-norm member of the (4,8) closure family for the
      // standard norm weights, computed once in exact rational arithmetic.
      c.hb = {1498139.0 / 5080320, 1107307.0 / 725760, 20761.0 / 80640,
              1304999.0 / 725760, 299527.0 / 725760,  103097.0 / 80640,
              670091.0 / 725760,  5127739.0 / 5080320};
      c.rows = {
          {-2540160.0 / 1498139, 206453678869.0 / 91362508776,
           -1037166409.0 / 11420313597, -62219441237.0 / 91362508776,
           -1175365621.0 / 22840627194, 32824323755.0 / 91362508776,
           -1725149665.0 / 22840627194, -107145311.0 / 4350595656, 0, 0, 0, 0},
          {-206453678869.0 / 472696070616, 0, 8284654691.0 / 67528010088,
           3571372142.0 / 8441001261, 2292481139.0 / 67528010088,
           -3298218005.0 / 16882002522, 908929135.0 / 22509336696,
           1419870103.0 / 118174017654, 0, 0, 0, 0},
          {1037166409.0 / 9970449489, -8284654691.0 / 11394799416, 0,
           9666534419.0 / 11394799416, -929740577.0 / 2848699854,
           3586637.0 / 32463816, -2818117.0 / 2848699854,
           -671213045.0 / 79763595912, 0, 0, 0, 0},
          {62219441237.0 / 557088413112, -3571372142.0 / 9948007377,
           -9666534419.0 / 79584059016, 0, 1347047221.0 / 8842673224,
           844899857.0 / 2842287822, -5729632301.0 / 79584059016,
           -1228445285.0 / 139272103278, 0, 0, 0, 0},
          {1175365621.0 / 31966120494, -2292481139.0 / 18266354568,
           929740577.0 / 4566588642, -1347047221.0 / 2029594952, 0,
           10325940595.0 / 18266354568, -2214170.0 / 326184903,
           -129991573.0 / 127864481976, -2592.0 / 299527, 0, 0, 0},
          {-32824323755.0 / 396097849224, 3298218005.0 / 14146351758,
           -46626281.0 / 2095755816, -844899857.0 / 2020907394,
           -10325940595.0 / 56585407032, 0, 30352782883.0 / 56585407032,
           -4499630381.0 / 49512231153, 3072.0 / 103097, -288.0 / 103097, 0, 0},
          {1725149665.0 / 71513451702, -908929135.0 / 13621609848,
           2818117.0 / 10216207386, 5729632301.0 / 40864829544,
           2214170.0 / 729729099, -30352782883.0 / 40864829544, 0,
           234869646581.0 / 286053806808, -145152.0 / 670091, 27648.0 / 670091,
           -2592.0 / 670091, 0},
          {107145311.0 / 14890954056, -1419870103.0 / 78177508794,
           671213045.0 / 312710035176, 64655015.0 / 4114605726,
           129991573.0 / 312710035176, 4499630381.0 / 39088754397,
           -234869646581.0 / 312710035176, 0, 4064256.0 / 5127739,
           -1016064.0 / 5127739, 193536.0 / 5127739, -18144.0 / 5127739},
      };
      break;
    default:
      throw DegreeUnsupported("CSBP closures available for p = 1..4, got p=" +
                              std::to_string(p));
  }
  return c;
}

SbpOperator build_csbp(const NodalDistribution& dist, double element_size) {
  const int n = dist.n;
  const int p = dist.p;
  Closure cl = csbp_closure(p);
  const int r = static_cast<int>(cl.hb.size());
  const int w = static_cast<int>(cl.rows[0].size());
  if (n < 2 * r || n < w)
    throw InsufficientNodes("CSBP p=" + std::to_string(p) +
                            " needs at least " + std::to_string(std::max(2 * r, w)) +
                            " nodes");
  const double dx = element_size / (n - 1);

  SbpOperator op;
  op.dist = dist;
  op.dx = element_size;
  op.node_spacing = dx;
  op.h = Vec::Ones(n) * dx;
  for (int i = 0; i < r; ++i) {
    op.h(i) = cl.hb[i] * dx;
    op.h(n - 1 - i) = cl.hb[i] * dx;
  }
  op.d = Mat::Zero(n, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < w; ++j) op.d(i, j) = cl.rows[i][j] / dx;
  auto st = interior_stencil(p);
  for (int i = r; i < n - r; ++i)
    for (int k = -p; k <= p; ++k) op.d(i, i + k) = st[k + p] / dx;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < w; ++j) op.d(n - 1 - i, n - 1 - j) = -cl.rows[i][j] / dx;

  op.e_left = Vec::Zero(n);
  op.e_left(0) = 1.0;
  op.e_right = Vec::Zero(n);
  op.e_right(n - 1) = 1.0;
  op.e = op.e_right * op.e_right.transpose() - op.e_left * op.e_left.transpose();
  op.q = op.h.asDiagonal() * op.d;
  return op;
}

SbpOperator build_se(const NodalDistribution& dist, double element_size) {
  const int p = dist.p;
  const int n = dist.n;
  Vec xr, wr;
  if (dist.family == Family::LGL)
    lgl_reference(p, xr, wr);
  else
    lg_reference(p, xr, wr);
  const double scale = element_size / 2.0;  // [-1,1] -> physical element

  SbpOperator op;
  op.dist = dist;
  op.dx = element_size;
  op.node_spacing = element_size / (n - 1);
  op.h = wr * scale;
  op.d = lagrange_diff_matrix(xr) / scale;
  op.e_left = lagrange_interp_vector(xr, -1.0);
  op.e_right = lagrange_interp_vector(xr, 1.0);
  op.e = op.e_right * op.e_right.transpose() - op.e_left * op.e_left.transpose();
  op.q = op.h.asDiagonal() * op.d;
  return op;
}

}  // namespace

SbpOperator build_sbp_operator(const NodalDistribution& dist, double element_size) {
  if (element_size <= 0.0) throw Error("element_size must be positive");
  switch (dist.family) {
    case Family::CSBP: return build_csbp(dist, element_size);
    case Family::LGL:
    case Family::LG: return build_se(dist, element_size);
  }
  throw UnsupportedFamily("bad family");
}

}  // namespace sbpdiss
