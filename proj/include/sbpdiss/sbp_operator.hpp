#ifndef SBPDISS_SBP_OPERATOR_HPP
#define SBPDISS_SBP_OPERATOR_HPP

#include "sbpdiss/nodal.hpp"

namespace sbpdiss {

/// Diagonal-norm first-derivative SBP operator on one 1D block.
///
/// H is the diagonal quadrature (units of length), D approximates d/dx
/// (units 1/length), Q = H D satisfies Q + Q^T = E. For families with
/// boundary nodes E = diag(-1, 0, ..., 0, 1); for LG it is the dense
/// extrapolation form e_R e_R^T - e_L e_L^T.
struct SbpOperator {
  NodalDistribution dist;
  Vec h;         // diagonal of H
  Mat d;         // derivative matrix
  Mat q;         // H * D
  Mat e;         // boundary matrix
  Vec e_left;    // interpolation/selection vector to the left edge
  Vec e_right;   // ... to the right edge
  double dx = 1.0;       // element size (physical length of the block)
  double node_spacing = 1.0;  // physical length / (N-1), scales undivided ops

  int size() const { return dist.n; }
};

/// Build the operator for a block of physical length element_size.
/// CSBP p=1..4 use the classical diagonal-norm boundary closures; LGL/LG use
/// exact Lagrange differentiation with Gauss quadrature weights.
SbpOperator build_sbp_operator(const NodalDistribution& dist, double element_size);

/// The 5-node p_u=2 upwind finite-difference pair on [0, 1] (h = 1/4).
/// D_minus follows from D_+ by the reflection relation
/// [D-]_{i,j} = -[D+]_{N+1-i,N+1-j}, equivalently H D- = E - (H D+)^T.
struct UpwindOperator {
  Mat d_plus;
  Mat d_minus;
  Vec h;
  Mat d_central;  // (D+ + D-)/2
  Mat s;          // -H (D+ - D-)/2, symmetric positive semi-definite
};

UpwindOperator build_upwind_pu2_block();

}  // namespace sbpdiss

#endif  // SBPDISS_SBP_OPERATOR_HPP
