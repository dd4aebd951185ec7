#include "sbpdiss/physics.hpp"

namespace sbpdiss {

// Validated entry points; the templated kernels in the header skip checks so
// they stay usable on complex-perturbed states.

namespace checked {

Eigen::Vector3d entropy_variables_1d(const Eigen::Vector3d& u,
                                     const EulerParams& gas) {
  if (!admissible<double, 1>(u, gas))
    throw NonAdmissibleState("entropy_variables: rho or p not positive");
  return entropy_variables<double, 1>(u, gas);
}

Eigen::Vector3d chandrashekar_flux_checked(const Eigen::Vector3d& ul,
                                           const Eigen::Vector3d& ur,
                                           const EulerParams& gas) {
  if (!admissible<double, 1>(ul, gas) || !admissible<double, 1>(ur, gas))
    throw NonAdmissibleState("chandrashekar_flux: non-admissible input state");
  return chandrashekar_flux<double>(ul, ur, gas);
}

Eigen::Vector4d ranocha_flux_2d_checked(const Eigen::Vector4d& ul,
                                        const Eigen::Vector4d& ur, int dir,
                                        const EulerParams& gas) {
  if (!admissible<double, 2>(ul, gas) || !admissible<double, 2>(ur, gas))
    throw NonAdmissibleState("ranocha_flux_2d: non-admissible input state");
  return ranocha_flux_2d<double>(ul, ur, dir, gas);
}

}  // namespace checked

}  // namespace sbpdiss
