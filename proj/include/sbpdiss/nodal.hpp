#ifndef SBPDISS_NODAL_HPP
#define SBPDISS_NODAL_HPP

#include "sbpdiss/defs.hpp"

namespace sbpdiss {

enum class Family { CSBP, LGL, LG };

Family family_from_string(const std::string& s);
std::string to_string(Family f);

/// Nodal distribution on the undivided reference domain [0, N-1].
/// Spectral-element families (LGL, LG) are mapped affinely from [-1, 1]
/// and are forced to N = p+1 nodes.
struct NodalDistribution {
  Family family;
  int p = 0;
  int n = 0;
  Vec nodes;  // strictly increasing, 0 <= x(0), x(n-1) <= n-1
};

NodalDistribution build_nodal_distribution(Family family, int p, int n);

/// Legendre polynomial P_n and its derivative at x.
void legendre_eval(int n, double x, double& pn, double& dpn);

/// Gauss-Lobatto nodes/weights on [-1, 1], degree p (p+1 nodes).
void lgl_reference(int p, Vec& x, Vec& w);
/// Gauss nodes/weights on [-1, 1] with p+1 nodes (exact to degree 2p+1).
void lg_reference(int p, Vec& x, Vec& w);

/// Derivative matrix of the Lagrange basis on nodes x (barycentric form).
Mat lagrange_diff_matrix(const Vec& x);
/// Lagrange basis evaluated at point xi: out(i) = l_i(xi).
Vec lagrange_interp_vector(const Vec& x, double xi);

}  // namespace sbpdiss

#endif  // SBPDISS_NODAL_HPP
