#include "sbpdiss/nodal.hpp"

#include <cmath>

namespace sbpdiss {

Family family_from_string(const std::string& s) {
  if (s == "CSBP" || s == "csbp") return Family::CSBP;
  if (s == "LGL" || s == "lgl") return Family::LGL;
  if (s == "LG" || s == "lg") return Family::LG;
  throw UnsupportedFamily("unknown operator family: " + s);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::CSBP: return "CSBP";
    case Family::LGL: return "LGL";
    case Family::LG: return "LG";
  }
  return "?";
}

void legendre_eval(int n, double x, double& pn, double& dpn) {
  if (n == 0) { pn = 1.0; dpn = 0.0; return; }
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  if (std::abs(1.0 - x * x) < 1e-14) {
    // endpoint limit: P'_n(+-1) = (+-1)^{n-1} n(n+1)/2
    double sgn = (x > 0 || n % 2 == 1) ? 1.0 : -1.0;
    if (x < 0) sgn = (n % 2 == 1) ? 1.0 : -1.0;
    dpn = sgn * 0.5 * n * (n + 1);
  } else {
    dpn = n * (x * p1 - p0) / (x * x - 1.0);
  }
}

void lgl_reference(int p, Vec& x, Vec& w) {
  const int n = p + 1;
  x.resize(n);
  w.resize(n);
  x(0) = -1.0;
  x(n - 1) = 1.0;
  // interior nodes are the roots of P'_p; Newton with Chebyshev-Lobatto seeds,
  // using P'' from the Legendre ODE
  for (int i = 1; i < n - 1; ++i) x(i) = -std::cos(M_PI * i / p);
  for (int it = 0; it < 200; ++it) {
    double shift = 0.0;
    for (int i = 1; i < n - 1; ++i) {
      double pn, dpn;
      legendre_eval(p, x(i), pn, dpn);
      double d2 = (2.0 * x(i) * dpn - p * (p + 1.0) * pn) / (1.0 - x(i) * x(i));
      double dx = dpn / d2;
      x(i) -= dx;
      shift = std::max(shift, std::abs(dx));
    }
    if (shift < 1e-15) break;
  }
  // symmetrize
  for (int i = 0; i < n / 2; ++i) {
    double v = 0.5 * (x(n - 1 - i) - x(i));
    x(i) = -v;
    x(n - 1 - i) = v;
  }
  for (int i = 0; i < n; ++i) {
    double pn, dpn;
    legendre_eval(p, x(i), pn, dpn);
    w(i) = 2.0 / (p * (p + 1.0) * pn * pn);
  }
}

void lg_reference(int p, Vec& x, Vec& w) {
  const int n = p + 1;
  x.resize(n);
  w.resize(n);
  for (int i = 1; i <= n; ++i)
    x(i - 1) = -std::cos(M_PI * (4.0 * i - 1.0) / (4.0 * n + 2.0));
  for (int it = 0; it < 200; ++it) {
    double shift = 0.0;
    for (int i = 0; i < n; ++i) {
      double pn, dpn;
      legendre_eval(n, x(i), pn, dpn);
      double dx = pn / dpn;
      x(i) -= dx;
      shift = std::max(shift, std::abs(dx));
    }
    if (shift < 1e-15) break;
  }
  for (int i = 0; i < n / 2; ++i) {
    double v = 0.5 * (x(n - 1 - i) - x(i));
    x(i) = -v;
    x(n - 1 - i) = v;
  }
  for (int i = 0; i < n; ++i) {
    double pn, dpn;
    legendre_eval(n, x(i), pn, dpn);
    w(i) = 2.0 / ((1.0 - x(i) * x(i)) * dpn * dpn);
  }
}

NodalDistribution build_nodal_distribution(Family family, int p, int n) {
  if (p < 1) throw DegreeUnsupported("degree p must be >= 1");
  NodalDistribution d;
  d.family = family;
  d.p = p;
  switch (family) {
    case Family::CSBP: {
      if (n < 2 * p + 1)
        throw InsufficientNodes("CSBP requires N >= 2p+1, got N=" +
                                std::to_string(n));
      d.n = n;
      d.nodes = Vec::LinSpaced(n, 0.0, n - 1.0);
      break;
    }
    case Family::LGL:
    case Family::LG: {
      d.n = p + 1;  // SE families force N = p+1
      Vec xr, wr;
      if (family == Family::LGL)
        lgl_reference(p, xr, wr);
      else
        lg_reference(p, xr, wr);
      d.nodes = (xr.array() + 1.0) * 0.5 * (d.n - 1.0);
      break;
    }
  }
  return d;
}

Mat lagrange_diff_matrix(const Vec& x) {
  const int n = static_cast<int>(x.size());
  Vec b = Vec::Ones(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) b(i) /= (x(i) - x(j));
  Mat d = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      d(i, j) = (b(j) / b(i)) / (x(i) - x(j));
      diag -= d(i, j);
    }
    d(i, i) = diag;
  }
  return d;
}

Vec lagrange_interp_vector(const Vec& x, double xi) {
  const int n = static_cast<int>(x.size());
  Vec out = Vec::Ones(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out(i) *= (xi - x(j)) / (x(i) - x(j));
  return out;
}

}  // namespace sbpdiss
