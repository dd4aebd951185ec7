#ifndef SBPDISS_PROBLEMS_HPP
#define SBPDISS_PROBLEMS_HPP

#include <cmath>

#include "sbpdiss/physics.hpp"

namespace sbpdiss {

/// Gaussian pulse used for the linear-convection grid studies.
inline double gaussian_pulse(double x) {
  const double r = (x - 0.5) / 0.08;
  return std::exp(-0.5 * r * r);
}

inline double sinusoid_4pi(double x) { return std::sin(4.0 * M_PI * x); }

/// Burgers initial condition sin(2 pi x) + beta.
inline double burgers_ic(double x, double beta) {
  return std::sin(2.0 * M_PI * x) + beta;
}

/// 1D Euler density wave: rho = 1 + 0.98 sin(2 pi x), v = 0.1, p = 20.
inline Eigen::Vector3d density_wave_ic(double x, const EulerParams& gas) {
  const double rho = 1.0 + 0.98 * std::sin(2.0 * M_PI * x);
  const double v = 0.1;
  const double p = 20.0;
  Eigen::Vector3d u;
  u << rho, rho * v, p / (gas.gamma - 1.0) + 0.5 * rho * v * v;
  return u;
}

struct VortexParams {
  double mach = 0.5;
  double beta = 0.2;
  double radius = 0.5;
};

/// Unsteady isentropic vortex centered at (xc, yc) on [-5, 5]^2.
inline Eigen::Vector4d vortex_state(double x, double y, double xc, double yc,
                                    const VortexParams& vp,
                                    const EulerParams& gas) {
  const double g = gas.gamma;
  const double dx = x - xc, dy = y - yc;
  const double r2 = (dx * dx + dy * dy) / (vp.radius * vp.radius);
  const double ex = std::exp(-0.5 * r2);
  const double vx = vp.mach * (1.0 - vp.beta * (dy / vp.radius) * ex);
  const double vy = vp.mach * vp.beta * (dx / vp.radius) * ex;
  const double rho = std::pow(
      1.0 - 0.5 * (vp.mach * vp.beta) * (vp.mach * vp.beta) * (g - 1.0) *
                std::exp(-r2),
      1.0 / (g - 1.0));
  const double p = std::pow(rho, g) / g;
  Eigen::Vector4d u;
  u << rho, rho * vx, rho * vy,
      p / (g - 1.0) + 0.5 * rho * (vx * vx + vy * vy);
  return u;
}

/// Exact vortex solution at time t: the profile advects with (M_inf, 0),
/// wrapped periodically onto [-5, 5]^2.
inline Eigen::Vector4d vortex_exact(double x, double y, double t,
                                    const VortexParams& vp,
                                    const EulerParams& gas) {
  // displacement from the advected center, wrapped to [-5, 5]
  const double dx = std::remainder(x - vp.mach * t, 10.0);
  return vortex_state(dx, y, 0.0, 0.0, vp, gas);
}

/// Kelvin-Helmholtz initial condition on [-1, 1]^2.
inline Eigen::Vector4d khi_ic(double x, double y, const EulerParams& gas) {
  const double b = std::tanh(15.0 * y + 7.5) - std::tanh(15.0 * y - 7.5);
  const double rho = 0.5 + 0.75 * b;
  const double vx = 0.5 * b - 1.0;
  const double vy = 0.1 * std::sin(2.0 * M_PI * x);
  const double p = 1.0;
  Eigen::Vector4d u;
  u << rho, rho * vx, rho * vy,
      p / (gas.gamma - 1.0) + 0.5 * rho * (vx * vx + vy * vy);
  return u;
}

}  // namespace sbpdiss

#endif  // SBPDISS_PROBLEMS_HPP
