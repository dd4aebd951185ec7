#ifndef SBPDISS_DISSIPATION_HPP
#define SBPDISS_DISSIPATION_HPP

#include <vector>

#include "sbpdiss/physics.hpp"
#include "sbpdiss/sbp_operator.hpp"
#include "sbpdiss/undivided.hpp"

namespace sbpdiss {

enum class CoeffMode {
  NodalScalar,
  HalfNodeScalar,
  ScalarBlock,
  MatrixBlock,
  ScalarMatrixBlock,
  MatrixMatrixBlock,
};

enum class VarSet { Conservative, Entropy };

CoeffMode coeff_mode_from_string(const std::string& s);
std::string to_string(CoeffMode m);

struct DissipationSpec {
  double eps = 0.0;
  int s = 1;
  bool include_b = true;
  bool include_htilde = false;
  CoeffMode mode = CoeffMode::NodalScalar;
  VarSet vars = VarSet::Conservative;
  bool enabled() const { return eps > 0.0; }
};

/// Variable coefficient for one block: per-node scalars a_j >= 0 or per-node
/// symmetric PSD blocks A_j. Half-node averaging (odd s) is applied before
/// storage, so the leading entry/block is zero in that case.
struct CoefficientField {
  CoeffMode mode = CoeffMode::NodalScalar;
  Vec scalars;
  std::vector<Mat> blocks;
};

/// Volume dissipation A_D = -eps H^{-1} Dt_s^T C Dt_s for one block
/// (or one tensor direction of a 2D block). C = (H~)(B)(A) per configuration.
class DissipationOperator {
 public:
  DissipationOperator() = default;
  DissipationOperator(const SbpOperator& op, const DissipationSpec& spec);

  const DissipationSpec& spec() const { return spec_; }
  const UndividedDiff& undivided() const { return ud_; }
  const BoundaryCorrection& boundary() const { return bc_; }
  int size() const { return n_; }

  /// Diagonal of (H~?)(B?) applied on top of the variable coefficient.
  const Vec& structural_diag() const { return struct_diag_; }
  const Vec& hinv() const { return hinv_; }

  /// Dense matrix for a scalar coefficient diagonal (reference path).
  Mat dense_scalar_matrix(const Vec& coeff_diag) const;

  /// out += A_D q with scalar coefficient diagonal (not yet B/H~-scaled).
  template <class T>
  void apply_scalar(const VecT<T>& coeff_diag, const VecT<T>& q,
                    VecT<T>& out) const {
    if (q.size() != n_ || coeff_diag.size() != n_)
      throw DimensionMismatch("dissipation apply: bad sizes");
    VecT<T> w = real_matvec(ud_.matrix, q);
    for (int i = 0; i < n_; ++i) w(i) *= struct_diag_(i) * coeff_diag(i);
    VecT<T> z = real_matvec(dt_transpose_, w);
    for (int i = 0; i < n_; ++i) out(i) -= spec_.eps * hinv_(i) * z(i);
  }

  /// out += A_D q for a system of nc equations with per-node nc x nc blocks.
  /// q and out are node-major (node i, component c at i*nc + c).
  template <class T, int NC>
  void apply_system(const std::vector<SMat<T, NC>>& blocks, const VecT<T>& q,
                    VecT<T>& out) const {
    if (q.size() != n_ * NC || static_cast<int>(blocks.size()) != n_)
      throw DimensionMismatch("dissipation apply_system: bad sizes");
    MatT<T> w(n_, NC);
    for (int c = 0; c < NC; ++c) {
      VecT<T> col(n_);
      for (int i = 0; i < n_; ++i) col(i) = q(i * NC + c);
      w.col(c) = real_matvec(ud_.matrix, col);
    }
    MatT<T> cw(n_, NC);
    for (int i = 0; i < n_; ++i) {
      SVec<T, NC> wi = w.row(i).transpose();
      SVec<T, NC> ci = blocks[i] * wi;
      cw.row(i) = (struct_diag_(i) * ci).transpose();
    }
    for (int c = 0; c < NC; ++c) {
      VecT<T> z = real_matvec(dt_transpose_, VecT<T>(cw.col(c)));
      for (int i = 0; i < n_; ++i)
        out(i * NC + c) -= spec_.eps * hinv_(i) * z(i);
    }
  }

 private:
  DissipationSpec spec_;
  UndividedDiff ud_;
  BoundaryCorrection bc_;
  Mat dt_transpose_;
  Vec struct_diag_;  // (B?) * (H~?)
  Vec hinv_;
  int n_ = 0;
};

/// Dissipation operator restricted to scalar coefficient modes.
DissipationOperator assemble_scalar_dissipation(const SbpOperator& op,
                                                const DissipationSpec& spec);

/// Nodal scalar coefficient for the given mode: half-node averaged with a
/// leading zero for HalfNodeScalar, plain absolute values otherwise.
Vec make_scalar_coefficient(const Vec& a, CoeffMode mode);

/// Per-node system blocks for the 1D/2D Euler equations at the given states
/// (node-major, nc = dim+2 components per node). Odd s triggers half-node
/// block averaging with a leading zero block.
std::vector<Mat> build_system_blocks(const Vec& states, int dim, int dir,
                                     CoeffMode mode, const EulerParams& gas,
                                     bool halfnode_average);

/// Templated block construction used inside generic RHS paths.
template <class T, int NC>
std::vector<SMat<T, NC>> system_blocks_t(const VecT<T>& states, int dir,
                                         CoeffMode mode, const EulerParams& gas,
                                         bool halfnode_average) {
  constexpr int Dim = NC - 2;
  const int n = static_cast<int>(states.size()) / NC;
  std::vector<SMat<T, NC>> raw(n);
  for (int i = 0; i < n; ++i) {
    SVec<T, NC> u = states.template segment<NC>(i * NC);
    switch (mode) {
      case CoeffMode::ScalarBlock: {
        T lam = max_wave_speed<T, Dim>(u, dir, gas);
        raw[i] = lam * SMat<T, NC>::Identity();
        break;
      }
      case CoeffMode::MatrixBlock: {
        auto eig = euler_eig<T, Dim>(u, dir, gas, /*barth=*/false);
        // X |Lam| X^{-1}: solve X^T A^T = (X |Lam|)^T column by column
        SMat<T, NC> xl = eig.x;
        for (int j = 0; j < NC; ++j) xl.col(j) *= smooth_abs(eig.lam(j));
        SMat<T, NC> at;
        SMat<T, NC> xt = eig.x.transpose();
        for (int c = 0; c < NC; ++c)
          at.col(c) = solve_small<T, NC>(xt, SVec<T, NC>(xl.row(c).transpose()));
        raw[i] = at.transpose();
        break;
      }
      case CoeffMode::ScalarMatrixBlock: {
        T lam = max_wave_speed<T, Dim>(u, dir, gas);
        raw[i] = lam * dudw<T, Dim>(u, gas);
        break;
      }
      case CoeffMode::MatrixMatrixBlock: {
        auto eig = euler_eig<T, Dim>(u, dir, gas, /*barth=*/true);
        SMat<T, NC> xl = eig.x;
        for (int j = 0; j < NC; ++j) xl.col(j) *= smooth_abs(eig.lam(j));
        raw[i] = xl * eig.x.transpose();
        break;
      }
      default:
        throw UnsupportedConfig("scalar coefficient mode used for a system");
    }
  }
  if (!halfnode_average) return raw;
  std::vector<SMat<T, NC>> avg(n);
  avg[0].setZero();
  for (int i = 1; i < n; ++i) avg[i] = 0.5 * (raw[i - 1] + raw[i]);
  return avg;
}

}  // namespace sbpdiss

#endif  // SBPDISS_DISSIPATION_HPP
