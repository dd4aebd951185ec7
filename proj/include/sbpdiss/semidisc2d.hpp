#ifndef SBPDISS_SEMIDISC2D_HPP
#define SBPDISS_SEMIDISC2D_HPP

#include <functional>
#include <optional>

#include "sbpdiss/semidisc1d.hpp"

namespace sbpdiss {

struct Semi2DConfig {
  Scheme scheme = Scheme::HadamardEntropyStable;
  SatKind sat = SatKind::Rusanov;
  DissipationSpec diss;
  EulerParams gas;
  int kx = 1;  // blocks per direction
  int ky = 1;
  double x0 = -5.0, x1 = 5.0, y0 = -5.0, y1 = 5.0;
  double metric_jacobian = 1.0;  // Cartesian affine blocks
};

/// Periodic Kx x Ky lattice of tensor-product blocks for the 2D Euler
/// equations. State layout: block-major (bx*Ky + by), then node-major
/// (i*Ny + j), components fastest.
class SemiDisc2D {
 public:
  SemiDisc2D(const SbpOperator& op_xi, const SbpOperator& op_eta,
             const Semi2DConfig& cfg);

  int dofs() const { return n_blocks() * nx_ * ny_ * 4; }
  int n_blocks() const { return cfg_.kx * cfg_.ky; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const Semi2DConfig& config() const { return cfg_; }
  const SbpOperator& op_xi() const { return opx_; }
  const SbpOperator& op_eta() const { return opy_; }

  /// Physical coordinates of node (i, j) in block (bx, by).
  double node_x(int bx, int i) const;
  double node_y(int by, int j) const;
  /// Quadrature weight Hx(i) * Hy(j) (J = 1, physical operators).
  double node_weight(int i, int j) const { return opx_.h(i) * opy_.h(j); }

  template <class T>
  void rhs(double t, const VecT<T>& u, VecT<T>& out) const;
  void rhs_double(double t, const Vec& u, Vec& out) const { rhs<double>(t, u, out); }

  Functionals functionals(const Vec& u) const;
  bool admissible_state(const Vec& u) const;

  /// Initial condition helper: fills u from a callback u0(x, y) -> 4 components.
  Vec project(const std::function<Eigen::Vector4d(double, double)>& u0) const;

 private:
  template <class T>
  void direction_terms(const VecT<T>& u, VecT<T>& out, int dir) const;

  Semi2DConfig cfg_;
  SbpOperator opx_, opy_;
  Mat s2x_, s2y_;
  std::optional<DissipationOperator> dissx_, dissy_;
  int nx_ = 0, ny_ = 0;
};

/// One tensor direction of the 2D volume dissipation applied to q
/// (single block): -diag(J^-1) H^-1 Dt^T H_eta B A Dt q, with A built from
/// the per-node states in the given direction. Returns the contribution.
Vec apply_dissipation_2d(int direction, const SbpOperator& op_xi,
                         const SbpOperator& op_eta, const DissipationSpec& spec,
                         double metric_jacobian, const EulerParams& gas,
                         const Vec& q);

}  // namespace sbpdiss

#endif  // SBPDISS_SEMIDISC2D_HPP
