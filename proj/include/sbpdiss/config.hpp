#ifndef SBPDISS_CONFIG_HPP
#define SBPDISS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sbpdiss/integrate.hpp"
#include "sbpdiss/semidisc1d.hpp"

namespace sbpdiss {

/// Fully resolved experiment configuration. Parsed from flat JSON key/value
/// text; unknown keys are rejected, required keys per command enforced, and
/// eps presets ("large" = 3.125*5^-s, "small" = 0.625*5^-s,
/// "se" = 0.1*2.25^-p) resolved to numbers.
struct ExperimentConfig {
  std::string command;
  Family family = Family::CSBP;
  int p = 2;
  int n = 0;            // nodes per block (FD) / forced p+1 (SE)
  int blocks = 1;       // 1D block count
  int blocks_x = 1;     // 2D lattice
  int blocks_y = 1;
  PdeId pde = PdeId::LinearConvection;
  Scheme scheme = Scheme::Central;
  SatKind sat = SatKind::LaxFriedrichs;

  double eps = 0.0;
  std::string eps_preset;  // empty when eps given numerically
  int s = 0;               // 0: default s = p+1 (FD) / p (SE)
  bool include_b = true;
  bool include_htilde = false;
  CoeffMode mode = CoeffMode::NodalScalar;
  VarSet vars = VarSet::Conservative;

  double wave_speed = 1.0;
  double gamma = 1.4;
  double burgers_beta = 1.5;
  double mach = 0.5;
  double vortex_beta = 0.2;
  double vortex_radius = 0.5;

  TimeMethod method = TimeMethod::DormandPrince54;
  double rtol = 1e-11;
  double atol = 1e-11;
  double dt_init = 0.0;
  double cfl = 0.0;  // fixed-step RK4: dt = cfl * h_min / max wave speed
  double t_final = 1.0;
  int n_outputs = 20;
  bool track_spectrum = false;

  std::vector<int> grids;
  uint64_t seed = 20240101u;

  std::string echo_json;  // resolved config, canonical JSON
  std::string hash;       // fnv-1a of echo_json
};

ExperimentConfig parse_config(const std::string& text);

/// Re-serialize the resolved config (canonical ordering) and stamp the hash.
void finalize_config(ExperimentConfig& cfg);

}  // namespace sbpdiss

#endif  // SBPDISS_CONFIG_HPP
