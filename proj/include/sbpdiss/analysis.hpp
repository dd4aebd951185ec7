#ifndef SBPDISS_ANALYSIS_HPP
#define SBPDISS_ANALYSIS_HPP

#include <functional>
#include <vector>

#include "sbpdiss/defs.hpp"

namespace sbpdiss {

using CplxRhsFn = std::function<void(double, const VecT<Cplx>&, VecT<Cplx>&)>;
using RealRhsFn = std::function<void(double, const Vec&, Vec&)>;

struct JacobianResult {
  Mat matrix;
  std::string method;  // "complex-step" or "central-difference"
};

/// Jacobian by the complex-step approximation, column j = Im R(u + i h e_j)/h.
JacobianResult jacobian_complex_step(const CplxRhsFn& rhs, const Vec& u,
                                     double t = 0.0, double h = 1e-30);

/// Central-difference fallback, h = 1e-6 * scale.
JacobianResult jacobian_central_fd(const RealRhsFn& rhs, const Vec& u,
                                   double t = 0.0);

struct SpectrumReport {
  Eigen::VectorXcd eigenvalues;
  double max_real_part = 0.0;
  double spectral_radius = 0.0;
  std::string jacobian_method;
};

/// Dense nonsymmetric eigenvalues (Hessenberg + shifted QR via Eigen).
Eigen::VectorXcd eigenvalues(const Mat& a);

SpectrumReport spectrum_of(const Mat& a, const std::string& method_tag = "");

struct ConvergenceReport {
  std::vector<int> grid_sizes;
  std::vector<double> mesh_sizes;
  std::vector<double> errors;  // H-norm (square-root convention)
  double rate = 0.0;
  double fit_residual = 0.0;
};

/// Least-squares slope of log(error) against log(h).
void fit_rate(ConvergenceReport& report);

}  // namespace sbpdiss

#endif  // SBPDISS_ANALYSIS_HPP
