#ifndef SBPDISS_INTEGRATE_HPP
#define SBPDISS_INTEGRATE_HPP

#include <functional>
#include <vector>

#include "sbpdiss/defs.hpp"

namespace sbpdiss {

enum class TimeMethod { RK4, DormandPrince54 };

struct IntegratorOptions {
  TimeMethod method = TimeMethod::DormandPrince54;
  double rtol = 1e-11;
  double atol = 1e-11;
  double dt_init = 0.0;   // 0: pick automatically (adaptive) / required for RK4
  double dt_min = 1e-10;  // adaptive floor; dropping below it is a crash
  double t_final = 1.0;
};

struct CrashInfo {
  bool crashed = false;
  double time = 0.0;
  std::string cause;
};

struct Trajectory {
  std::vector<double> times;   // recorded output times actually reached
  std::vector<Vec> states;
  CrashInfo crash;
  long steps_accepted = 0;
  long steps_rejected = 0;
};

using RhsFn = std::function<void(double, const Vec&, Vec&)>;
using AdmissibleFn = std::function<bool(const Vec&)>;

/// Advance u0 to t_final (or crash), recording the state at output_times
/// (always records t=0 and the final reached time). The admissibility
/// callback is evaluated after every accepted step.
Trajectory integrate(const RhsFn& rhs, const Vec& u0,
                     const IntegratorOptions& opt,
                     const AdmissibleFn& admissible = {},
                     const std::vector<double>& output_times = {});

}  // namespace sbpdiss

#endif  // SBPDISS_INTEGRATE_HPP
