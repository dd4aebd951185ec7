#ifndef SBPDISS_UNDIVIDED_HPP
#define SBPDISS_UNDIVIDED_HPP

#include "sbpdiss/nodal.hpp"

namespace sbpdiss {

/// Minimum-width undivided difference operator approximating dx^s d^s/dx^s.
/// Annihilates monomials x~^k for k < s and maps x~^s to s! exactly.
struct UndividedDiff {
  int s = 1;
  NodalDistribution dist;
  Mat matrix;
  std::vector<std::pair<int, int>> windows;  // inclusive column range per row
};

/// Row i draws on s+1 consecutive nodes: a centered window for even s, a
/// backward window for odd s, clamped at the boundaries (clamped rows repeat
/// the nearest valid window). Coefficients solve the per-row Vandermonde
/// system of the accuracy conditions, with nodes shifted to the window
/// midpoint to control conditioning.
UndividedDiff build_undivided_diff(const NodalDistribution& dist, int s);

/// Diagonal 0/1 boundary correction. Even s: ceil(s/2) zeros at each end;
/// odd s: ceil(s/2) zeros at the left end only (backward bias).
struct BoundaryCorrection {
  Vec diag;
  int n_left_zeros = 0;
  int n_right_zeros = 0;
};

BoundaryCorrection build_boundary_correction(int n, int s);

/// Half-node averaging of a non-negative coefficient vector:
/// diag(0, (a1+a2)/2, ..., (a_{N-1}+a_N)/2). Used for odd s so the variable
/// coefficient enters without directional bias.
Vec average_coefficient_halfnodes(const Vec& a);

}  // namespace sbpdiss

#endif  // SBPDISS_UNDIVIDED_HPP
