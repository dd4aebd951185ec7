#ifndef SBPDISS_EXPERIMENTS_HPP
#define SBPDISS_EXPERIMENTS_HPP

#include <map>

#include "sbpdiss/analysis.hpp"
#include "sbpdiss/config.hpp"
#include "sbpdiss/io.hpp"
#include "sbpdiss/semidisc2d.hpp"

namespace sbpdiss {

struct ExperimentResult {
  std::map<std::string, Table> tables;
  int exit_code = 0;
  bool crashed = false;
  double crash_time = 0.0;
};

/// Builds the periodic 1D semi-discretization described by the config.
SemiDisc1D make_semidisc1d(const ExperimentConfig& cfg);

/// Initial condition on the semi-discretization's nodes for its PDE
/// (gaussian for linear convection, sin+beta for Burgers, density wave
/// for 1D Euler).
Vec initial_condition_1d(const SemiDisc1D& sd, const ExperimentConfig& cfg);

ExperimentResult run_verify(const ExperimentConfig& cfg);
ExperimentResult run_spectra(const ExperimentConfig& cfg);
ExperimentResult run_convergence(const ExperimentConfig& cfg);
ExperimentResult run_run1d(const ExperimentConfig& cfg);
ExperimentResult run_vortex(const ExperimentConfig& cfg);
ExperimentResult run_khi_demo(const ExperimentConfig& cfg);
ExperimentResult run_dump_operator(const ExperimentConfig& cfg,
                                   const std::string& out_dir);
ExperimentResult run_dump_dissipation(const ExperimentConfig& cfg,
                                      const std::string& out_dir);

ExperimentResult run_command(const ExperimentConfig& cfg,
                             const std::string& out_dir);

/// Write tables + manifest.json into out_dir (empty out_dir: skip writing).
void emit_result(const ExperimentResult& result, const ExperimentConfig& cfg,
                 const std::string& out_dir);

}  // namespace sbpdiss

#endif  // SBPDISS_EXPERIMENTS_HPP
