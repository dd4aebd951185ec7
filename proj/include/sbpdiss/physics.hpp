#ifndef SBPDISS_PHYSICS_HPP
#define SBPDISS_PHYSICS_HPP

#include "sbpdiss/defs.hpp"

namespace sbpdiss {

// All kernels are templated over the scalar type so semi-discretizations can
// be differentiated with the complex-step method. Non-analytic absolute
// values use smooth_abs (sign of the real part carries over).

template <class T, int N>
using SVec = Eigen::Matrix<T, N, 1>;
template <class T, int N>
using SMat = Eigen::Matrix<T, N, N>;

// ------------------------------------------------------------------ scalar

template <class T>
T linear_convection_flux(const T& u, double a) { return a * u; }

/// Burgers splitting f+- = (u^2/2 +- |u|u)/2; f+ + f- = u^2/2 exactly.
template <class T>
void burgers_flux_split(const T& u, T& fplus, T& fminus) {
  T f = u * u * 0.5;
  T fd = smooth_abs(u) * u;
  fplus = 0.5 * (f + fd);
  fminus = 0.5 * (f - fd);
}

/// Energy-conservative two-point flux for Burgers, (uL^2 + uL uR + uR^2)/6.
template <class T>
T burgers_ec_flux(const T& ul, const T& ur) {
  return (ul * ul + ul * ur + ur * ur) / 6.0;
}

// ------------------------------------------------------------------- Euler

struct EulerParams {
  double gamma = 1.4;
};

/// rho > 0 and p > 0 (on real parts).
template <class T, int Dim>
bool admissible(const SVec<T, Dim + 2>& u, const EulerParams& gas) {
  double rho = real_part(u(0));
  if (!(rho > 0.0) || !std::isfinite(rho)) return false;
  double ke = 0.0;
  for (int d = 0; d < Dim; ++d) ke += real_part(u(1 + d)) * real_part(u(1 + d));
  double p = (gas.gamma - 1.0) * (real_part(u(Dim + 1)) - 0.5 * ke / rho);
  return p > 0.0 && std::isfinite(p);
}

template <class T, int Dim>
void primitive(const SVec<T, Dim + 2>& u, const EulerParams& gas, T& rho,
               SVec<T, Dim>& v, T& p) {
  rho = u(0);
  T ke = T(0.0);
  for (int d = 0; d < Dim; ++d) {
    v(d) = u(1 + d) / rho;
    ke += u(1 + d) * v(d);
  }
  p = (gas.gamma - 1.0) * (u(Dim + 1) - 0.5 * ke);
}

template <class T, int Dim>
SVec<T, Dim + 2> conservative(const T& rho, const SVec<T, Dim>& v, const T& p,
                              const EulerParams& gas) {
  SVec<T, Dim + 2> u;
  u(0) = rho;
  T ke = T(0.0);
  for (int d = 0; d < Dim; ++d) {
    u(1 + d) = rho * v(d);
    ke += v(d) * v(d);
  }
  u(Dim + 1) = p / (gas.gamma - 1.0) + 0.5 * rho * ke;
  return u;
}

/// Physical flux in direction dir (energy flux v (e + p)).
template <class T, int Dim>
SVec<T, Dim + 2> euler_flux(const SVec<T, Dim + 2>& u, int dir,
                            const EulerParams& gas) {
  T rho, p;
  SVec<T, Dim> v;
  primitive<T, Dim>(u, gas, rho, v, p);
  SVec<T, Dim + 2> f;
  f(0) = u(1 + dir);
  for (int d = 0; d < Dim; ++d) f(1 + d) = u(1 + dir) * v(d);
  f(1 + dir) += p;
  f(Dim + 1) = v(dir) * (u(Dim + 1) + p);
  return f;
}

/// Entropy variables w = dS/du for S = -rho s / (gamma - 1), s = ln(p/rho^g).
template <class T, int Dim>
SVec<T, Dim + 2> entropy_variables(const SVec<T, Dim + 2>& u,
                                   const EulerParams& gas) {
  using std::log;
  T rho, p;
  SVec<T, Dim> v;
  primitive<T, Dim>(u, gas, rho, v, p);
  T s = log(p) - gas.gamma * log(rho);
  T ke = T(0.0);
  for (int d = 0; d < Dim; ++d) ke += v(d) * v(d);
  SVec<T, Dim + 2> w;
  w(0) = (gas.gamma - s) / (gas.gamma - 1.0) - 0.5 * rho * ke / p;
  for (int d = 0; d < Dim; ++d) w(1 + d) = rho * v(d) / p;
  w(Dim + 1) = -rho / p;
  return w;
}

/// Analytic inverse of the entropy-variable map.
template <class T, int Dim>
SVec<T, Dim + 2> conservative_from_entropy(const SVec<T, Dim + 2>& w,
                                           const EulerParams& gas) {
  using std::exp;
  using std::pow;
  const double g = gas.gamma;
  SVec<T, Dim> v;
  T ke = T(0.0);
  for (int d = 0; d < Dim; ++d) {
    v(d) = -w(1 + d) / w(Dim + 1);
    ke += v(d) * v(d);
  }
  T s = g - (g - 1.0) * (w(0) - 0.5 * w(Dim + 1) * ke);
  T rho = pow(-w(Dim + 1) * exp(s), 1.0 / (1.0 - g));
  T p = rho / (-w(Dim + 1));
  return conservative<T, Dim>(rho, v, p, gas);
}

/// Entropy density S(u) = -rho s / (gamma - 1).
template <class T, int Dim>
T entropy_density(const SVec<T, Dim + 2>& u, const EulerParams& gas) {
  using std::log;
  T rho, p;
  SVec<T, Dim> v;
  primitive<T, Dim>(u, gas, rho, v, p);
  T s = log(p) - gas.gamma * log(rho);
  return -rho * s / (gas.gamma - 1.0);
}

template <class T, int Dim>
T sound_speed(const SVec<T, Dim + 2>& u, const EulerParams& gas) {
  using std::sqrt;
  T rho, p;
  SVec<T, Dim> v;
  primitive<T, Dim>(u, gas, rho, v, p);
  return sqrt(gas.gamma * p / rho);
}

/// |v_dir| + c
template <class T, int Dim>
T max_wave_speed(const SVec<T, Dim + 2>& u, int dir, const EulerParams& gas) {
  using std::sqrt;
  T rho, p;
  SVec<T, Dim> v;
  primitive<T, Dim>(u, gas, rho, v, p);
  return smooth_abs(v(dir)) + sqrt(gas.gamma * p / rho);
}

/// Change-of-variables matrix du/dw (symmetric positive definite).
template <class T, int Dim>
SMat<T, Dim + 2> dudw(const SVec<T, Dim + 2>& u, const EulerParams& gas) {
  const double g = gas.gamma;
  T rho, p;
  SVec<T, Dim> v;
  primitive<T, Dim>(u, gas, rho, v, p);
  T e = u(Dim + 1);
  T hh = (e + p) / rho;  // total specific enthalpy
  T c2 = g * p / rho;
  SMat<T, Dim + 2> a;
  a(0, 0) = rho;
  for (int d = 0; d < Dim; ++d) {
    a(0, 1 + d) = u(1 + d);
    a(1 + d, 0) = u(1 + d);
  }
  for (int d = 0; d < Dim; ++d)
    for (int e2 = 0; e2 < Dim; ++e2)
      a(1 + d, 1 + e2) = u(1 + d) * v(e2) + (d == e2 ? p : T(0.0));
  a(0, Dim + 1) = e;
  a(Dim + 1, 0) = e;
  for (int d = 0; d < Dim; ++d) {
    a(1 + d, Dim + 1) = v(d) * (e + p);
    a(Dim + 1, 1 + d) = v(d) * (e + p);
  }
  a(Dim + 1, Dim + 1) = rho * hh * hh - c2 * p / (g - 1.0);
  return a;
}

/// Eigendecomposition of the direction-dir flux Jacobian.
/// Plain right eigenvectors R, or Barth-scaled X = R sqrt(T) with
/// X X^T = du/dw. Eigenvalues: v_dir - c, v_dir (x Dim), v_dir + c.
template <class T, int Dim>
struct EulerEig {
  SMat<T, Dim + 2> x;
  SVec<T, Dim + 2> lam;
};

template <class T, int Dim>
EulerEig<T, Dim> euler_eig(const SVec<T, Dim + 2>& u, int dir,
                           const EulerParams& gas, bool barth_scaled) {
  using std::sqrt;
  const double g = gas.gamma;
  const int n = Dim + 2;
  T rho, p;
  SVec<T, Dim> v;
  primitive<T, Dim>(u, gas, rho, v, p);
  T c = sqrt(g * p / rho);
  T hh = (u(Dim + 1) + p) / rho;
  T ke = T(0.0);
  for (int d = 0; d < Dim; ++d) ke += v(d) * v(d);

  EulerEig<T, Dim> eig;
  auto& x = eig.x;
  auto& lam = eig.lam;
  // column 0: v-c acoustic, column n-1: v+c acoustic, middle: entropy/shear
  lam(0) = v(dir) - c;
  lam(n - 1) = v(dir) + c;
  for (int k = 1; k < n - 1; ++k) lam(k) = v(dir);

  x.setZero();
  x(0, 0) = T(1.0);
  x(0, n - 1) = T(1.0);
  for (int d = 0; d < Dim; ++d) {
    x(1 + d, 0) = v(d);
    x(1 + d, n - 1) = v(d);
  }
  x(1 + dir, 0) -= c;
  x(1 + dir, n - 1) += c;
  x(n - 1, 0) = hh - v(dir) * c;
  x(n - 1, n - 1) = hh + v(dir) * c;
  // entropy mode
  x(0, 1) = T(1.0);
  for (int d = 0; d < Dim; ++d) x(1 + d, 1) = v(d);
  x(n - 1, 1) = 0.5 * ke;
  // shear modes (2D: one)
  if constexpr (Dim == 2) {
    const int od = 1 - dir;
    x(0, 2) = T(0.0);
    x(1 + od, 2) = T(1.0);
    x(1 + dir, 2) = T(0.0);
    x(n - 1, 2) = v(od);
  }
  if (barth_scaled) {
    // scaling of Barth: X X^T = du/dw
    SVec<T, Dim + 2> t;
    t(0) = rho / (2.0 * g);
    t(n - 1) = rho / (2.0 * g);
    t(1) = rho * (g - 1.0) / g;
    if constexpr (Dim == 2) t(2) = p;
    for (int j = 0; j < n; ++j) {
      T sq = sqrt(t(j));
      for (int i = 0; i < n; ++i) x(i, j) *= sq;
    }
  }
  return eig;
}

/// Solve a small dense system a y = b by Gaussian elimination with partial
/// pivoting on |Re|; keeps the path generic over complex scalars.
template <class T, int N>
SVec<T, N> solve_small(SMat<T, N> a, SVec<T, N> b) {
  for (int k = 0; k < N; ++k) {
    int piv = k;
    for (int i = k + 1; i < N; ++i)
      if (std::abs(real_part(a(i, k))) > std::abs(real_part(a(piv, k)))) piv = i;
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      std::swap(b(k), b(piv));
    }
    for (int i = k + 1; i < N; ++i) {
      T f = a(i, k) / a(k, k);
      for (int j = k; j < N; ++j) a(i, j) -= f * a(k, j);
      b(i) -= f * b(k);
    }
  }
  SVec<T, N> y;
  for (int i = N - 1; i >= 0; --i) {
    T acc = b(i);
    for (int j = i + 1; j < N; ++j) acc -= a(i, j) * y(j);
    y(i) = acc / a(i, i);
  }
  return y;
}

/// Logarithmic mean with a series expansion near aL = aR (guards 0/0).
/// Arguments are ordered canonically so the result is bitwise symmetric;
/// two-point flux symmetry (and with it exact conservation of Hadamard-form
/// volume terms) depends on that.
template <class T>
T logarithmic_mean(const T& al, const T& ar) {
  using std::log;
  const T& a = real_part(al) <= real_part(ar) ? al : ar;
  const T& b = real_part(al) <= real_part(ar) ? ar : al;
  T zeta = a / b;
  T f = (zeta - 1.0) / (zeta + 1.0);
  T u2 = f * f;
  if (real_part(u2) < 1e-4) {
    T ff = 1.0 + u2 / 3.0 + u2 * u2 / 5.0 + u2 * u2 * u2 / 7.0;
    return (a + b) / (2.0 * ff);
  }
  return (a + b) * f / log(zeta);
}

/// Chandrashekar entropy-conservative two-point flux, 1D Euler.
template <class T>
SVec<T, 3> chandrashekar_flux(const SVec<T, 3>& ul, const SVec<T, 3>& ur,
                              const EulerParams& gas) {
  T rhol, pl, rhor, pr;
  SVec<T, 1> vl, vr;
  primitive<T, 1>(ul, gas, rhol, vl, pl);
  primitive<T, 1>(ur, gas, rhor, vr, pr);
  T bl = 0.5 * rhol / pl;
  T br = 0.5 * rhor / pr;
  T rho_ln = logarithmic_mean(rhol, rhor);
  T b_ln = logarithmic_mean(bl, br);
  T rho_a = 0.5 * (rhol + rhor);
  T v_a = 0.5 * (vl(0) + vr(0));
  T b_a = 0.5 * (bl + br);
  T v2_a = 0.5 * (vl(0) * vl(0) + vr(0) * vr(0));
  T p_m = 0.5 * rho_a / b_a;
  SVec<T, 3> f;
  f(0) = rho_ln * v_a;
  f(1) = f(0) * v_a + p_m;
  f(2) = f(0) * 0.5 * (1.0 / ((gas.gamma - 1.0) * b_ln) - v2_a) + f(1) * v_a;
  return f;
}

/// Ranocha entropy-conservative two-point flux, 2D Euler, direction dir.
template <class T>
SVec<T, 4> ranocha_flux_2d(const SVec<T, 4>& ul, const SVec<T, 4>& ur, int dir,
                           const EulerParams& gas) {
  T rhol, pl, rhor, pr;
  SVec<T, 2> vl, vr;
  primitive<T, 2>(ul, gas, rhol, vl, pl);
  primitive<T, 2>(ur, gas, rhor, vr, pr);
  T rho_ln = logarithmic_mean(rhol, rhor);
  // 1/ln-mean(rho/p); uses ln-mean(rhoL pR, rhoR pL) = pL pR ln-mean(rhoL/pL, rhoR/pR)
  T inv_rho_p_ln = pl * pr / logarithmic_mean(rhol * pr, rhor * pl);
  T v1_a = 0.5 * (vl(0) + vr(0));
  T v2_a = 0.5 * (vl(1) + vr(1));
  T p_a = 0.5 * (pl + pr);
  T vsq_a = 0.5 * (vl(0) * vr(0) + vl(1) * vr(1));
  T vd_a = (dir == 0) ? v1_a : v2_a;
  SVec<T, 4> f;
  f(0) = rho_ln * vd_a;
  f(1) = f(0) * v1_a;
  f(2) = f(0) * v2_a;
  f(1 + dir) += p_a;
  T pv_flip = 0.5 * (pl * (dir == 0 ? vr(0) : vr(1)) + pr * (dir == 0 ? vl(0) : vl(1)));
  f(3) = f(0) * (vsq_a + inv_rho_p_ln / (gas.gamma - 1.0)) + pv_flip;
  return f;
}

/// Steger-Warming flux-vector splitting, 1D Euler.
template <class T>
void steger_warming_split(const SVec<T, 3>& u, const EulerParams& gas,
                          SVec<T, 3>& fplus, SVec<T, 3>& fminus) {
  using std::sqrt;
  const double g = gas.gamma;
  T rho, p;
  SVec<T, 1> v;
  primitive<T, 1>(u, gas, rho, v, p);
  T c = sqrt(g * p / rho);
  SVec<T, 3> lam;
  lam << v(0) - c, v(0), v(0) + c;
  for (int side = 0; side < 2; ++side) {
    SVec<T, 3> lp;
    for (int k = 0; k < 3; ++k) {
      T a = smooth_abs(lam(k));
      lp(k) = (side == 0) ? 0.5 * (lam(k) + a) : 0.5 * (lam(k) - a);
    }
    T l1 = lp(0), l2 = lp(1), l3 = lp(2);
    T fac = rho / (2.0 * g);
    SVec<T, 3> f;
    f(0) = fac * (l1 + 2.0 * (g - 1.0) * l2 + l3);
    f(1) = fac * ((v(0) - c) * l1 + 2.0 * (g - 1.0) * v(0) * l2 + (v(0) + c) * l3);
    T hh = c * c / (g - 1.0) + 0.5 * v(0) * v(0);
    f(2) = fac * ((hh - v(0) * c) * l1 + (g - 1.0) * v(0) * v(0) * l2 +
                  (hh + v(0) * c) * l3);
    if (side == 0) fplus = f; else fminus = f;
  }
}

// Roe-averaged primitive state (rho, v, p reconstructed from the Roe enthalpy).
template <class T, int Dim>
SVec<T, Dim + 2> roe_average(const SVec<T, Dim + 2>& ul,
                             const SVec<T, Dim + 2>& ur,
                             const EulerParams& gas) {
  using std::sqrt;
  const double g = gas.gamma;
  T rhol, pl, rhor, pr;
  SVec<T, Dim> vl, vr;
  primitive<T, Dim>(ul, gas, rhol, vl, pl);
  primitive<T, Dim>(ur, gas, rhor, vr, pr);
  T sl = sqrt(rhol), sr = sqrt(rhor);
  T rho = sl * sr;
  SVec<T, Dim> v;
  T ke = T(0.0);
  for (int d = 0; d < Dim; ++d) {
    v(d) = (sl * vl(d) + sr * vr(d)) / (sl + sr);
    ke += v(d) * v(d);
  }
  T hl = (ul(Dim + 1) + pl) / rhol;
  T hr = (ur(Dim + 1) + pr) / rhor;
  T hh = (sl * hl + sr * hr) / (sl + sr);
  T c2 = (g - 1.0) * (hh - 0.5 * ke);
  T p = rho * c2 / g;
  return conservative<T, Dim>(rho, v, p, gas);
}

/// Admissibility-checked entry points (throw NonAdmissibleState).
namespace checked {
Eigen::Vector3d entropy_variables_1d(const Eigen::Vector3d& u,
                                     const EulerParams& gas);
Eigen::Vector3d chandrashekar_flux_checked(const Eigen::Vector3d& ul,
                                           const Eigen::Vector3d& ur,
                                           const EulerParams& gas);
Eigen::Vector4d ranocha_flux_2d_checked(const Eigen::Vector4d& ul,
                                        const Eigen::Vector4d& ur, int dir,
                                        const EulerParams& gas);
}  // namespace checked

}  // namespace sbpdiss

#endif  // SBPDISS_PHYSICS_HPP
