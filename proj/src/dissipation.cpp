#include "sbpdiss/dissipation.hpp"

namespace sbpdiss {

CoeffMode coeff_mode_from_string(const std::string& s) {
  if (s == "scalar") return CoeffMode::NodalScalar;
  if (s == "halfnode-scalar") return CoeffMode::HalfNodeScalar;
  if (s == "scalar-block") return CoeffMode::ScalarBlock;
  if (s == "matrix-block" || s == "matrix") return CoeffMode::MatrixBlock;
  if (s == "scalar-matrix") return CoeffMode::ScalarMatrixBlock;
  if (s == "matrix-matrix") return CoeffMode::MatrixMatrixBlock;
  throw ValidationError("mode", "unknown coefficient mode: " + s);
}

std::string to_string(CoeffMode m) {
  switch (m) {
    case CoeffMode::NodalScalar: return "scalar";
    case CoeffMode::HalfNodeScalar: return "halfnode-scalar";
    case CoeffMode::ScalarBlock: return "scalar-block";
    case CoeffMode::MatrixBlock: return "matrix-block";
    case CoeffMode::ScalarMatrixBlock: return "scalar-matrix";
    case CoeffMode::MatrixMatrixBlock: return "matrix-matrix";
  }
  return "?";
}

DissipationOperator::DissipationOperator(const SbpOperator& op,
                                         const DissipationSpec& spec)
    : spec_(spec), n_(op.size()) {
  if (spec.eps < 0.0) throw NegativeCoefficient("eps must be >= 0");
  ud_ = build_undivided_diff(op.dist, spec.s);
  bc_ = build_boundary_correction(n_, spec.s);
  dt_transpose_ = ud_.matrix.transpose();
  struct_diag_ = Vec::Ones(n_);
  if (spec.include_b) struct_diag_ = struct_diag_.cwiseProduct(bc_.diag);
  if (spec.include_htilde)
    struct_diag_ = struct_diag_.cwiseProduct(op.h / op.node_spacing);
  hinv_ = op.h.cwiseInverse();
}

Mat DissipationOperator::dense_scalar_matrix(const Vec& coeff_diag) const {
  if (coeff_diag.size() != n_)
    throw DimensionMismatch("dense_scalar_matrix: bad coefficient size");
  Vec c = struct_diag_.cwiseProduct(coeff_diag);
  return -spec_.eps * hinv_.asDiagonal() * dt_transpose_ * c.asDiagonal() *
         ud_.matrix;
}

DissipationOperator assemble_scalar_dissipation(const SbpOperator& op,
                                                const DissipationSpec& spec) {
  if (spec.mode != CoeffMode::NodalScalar && spec.mode != CoeffMode::HalfNodeScalar)
    throw UnsupportedConfig("assemble_scalar_dissipation expects a scalar mode");
  return DissipationOperator(op, spec);
}

Vec make_scalar_coefficient(const Vec& a, CoeffMode mode) {
  if (mode == CoeffMode::HalfNodeScalar)
    return average_coefficient_halfnodes(a.cwiseAbs());
  return a.cwiseAbs();
}

std::vector<Mat> build_system_blocks(const Vec& states, int dim, int dir,
                                     CoeffMode mode, const EulerParams& gas,
                                     bool halfnode_average) {
  const int nc = dim + 2;
  const int n = static_cast<int>(states.size()) / nc;
  for (int i = 0; i < n; ++i) {
    bool ok = dim == 1 ? admissible<double, 1>(states.segment<3>(i * 3), gas)
                       : admissible<double, 2>(states.segment<4>(i * 4), gas);
    if (!ok)
      throw NonAdmissibleState("non-admissible state at node " +
                               std::to_string(i));
  }
  std::vector<Mat> out(n);
  if (dim == 1) {
    auto blocks = system_blocks_t<double, 3>(states, dir, mode, gas,
                                             halfnode_average);
    for (int i = 0; i < n; ++i) out[i] = blocks[i];
  } else if (dim == 2) {
    auto blocks = system_blocks_t<double, 4>(states, dir, mode, gas,
                                             halfnode_average);
    for (int i = 0; i < n; ++i) out[i] = blocks[i];
  } else {
    throw UnsupportedConfig("build_system_blocks: dim must be 1 or 2");
  }
  return out;
}

}  // namespace sbpdiss
