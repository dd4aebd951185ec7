#include "sbpdiss/analysis.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace sbpdiss {

JacobianResult jacobian_complex_step(const CplxRhsFn& rhs, const Vec& u,
                                     double t, double h) {
  const int n = static_cast<int>(u.size());
  JacobianResult res;
  res.method = "complex-step";
  res.matrix.resize(n, n);
  VecT<Cplx> uc = u.cast<Cplx>();
  VecT<Cplx> r(n);
  for (int j = 0; j < n; ++j) {
    uc(j) += Cplx(0.0, h);
    rhs(t, uc, r);
    res.matrix.col(j) = r.imag() / h;
    uc(j) = Cplx(u(j), 0.0);
  }
  return res;
}

JacobianResult jacobian_central_fd(const RealRhsFn& rhs, const Vec& u, double t) {
  const int n = static_cast<int>(u.size());
  JacobianResult res;
  res.method = "central-difference";
  res.matrix.resize(n, n);
  const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
  const double h = 1e-6 * scale;
  Vec up = u, um = u, rp(n), rm(n);
  for (int j = 0; j < n; ++j) {
    up(j) += h;
    um(j) -= h;
    rhs(t, up, rp);
    rhs(t, um, rm);
    res.matrix.col(j) = (rp - rm) / (2.0 * h);
    up(j) = u(j);
    um(j) = u(j);
  }
  return res;
}

Eigen::VectorXcd eigenvalues(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("eigenvalues: square only");
  Eigen::EigenSolver<Mat> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("eigenvalue iteration failed to converge");
  return solver.eigenvalues();
}

SpectrumReport spectrum_of(const Mat& a, const std::string& method_tag) {
  SpectrumReport rep;
  rep.eigenvalues = eigenvalues(a);
  rep.jacobian_method = method_tag;
  rep.max_real_part = rep.eigenvalues.real().maxCoeff();
  rep.spectral_radius = rep.eigenvalues.cwiseAbs().maxCoeff();
  return rep;
}

void fit_rate(ConvergenceReport& report) {
  const int m = static_cast<int>(report.errors.size());
  if (m < 3) throw Error("rate fit requires at least 3 grids");
  Mat a(m, 2);
  Vec b(m);
  for (int i = 0; i < m; ++i) {
    a(i, 0) = std::log(report.mesh_sizes[i]);
    a(i, 1) = 1.0;
    b(i) = std::log(report.errors[i]);
  }
  Eigen::Vector2d sol = (a.transpose() * a).ldlt().solve(a.transpose() * b);
  report.rate = sol(0);
  report.fit_residual = (a * sol - b).norm();
}

}  // namespace sbpdiss
