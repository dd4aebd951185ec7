// sbpdiss command-line front end.
//
// Usage: sbpdiss <command> --config <path> [--out <dir>] [--seed <u64>]
//                [--threads <n>]
//
// Exit codes: 0 success, 2 validation error, 3 invariant failure,
// 4 runtime crash. PDE crashes in non-verify commands are reported as data
// (exit 0).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbpdiss/experiments.hpp"

using namespace sbpdiss;

int main(int argc, char** argv) {
  CLI::App app{"Stable volume dissipation operators for SBP discretizations"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;

  std::vector<std::string> command_names = {
      "verify",        "spectra",  "convergence",  "run1d",
      "vortex",        "khi-demo", "dump-operator", "dump-dissipation"};
  for (const auto& name : command_names) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "path to JSON config")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "override RNG seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--threads", threads,
                    "worker hint (runs are serial for determinism)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config " << config_path << "\n";
      return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();

    ExperimentConfig cfg = parse_config(ss.str());
    if (cfg.command != command)
      throw ValidationError("command", "config command '" + cfg.command +
                                           "' does not match CLI command '" +
                                           command + "'");
    if (seed_given) {
      cfg.seed = seed;
      finalize_config(cfg);
    }

    ExperimentResult result = run_command(cfg, out_dir);
    emit_result(result, cfg, out_dir);

    if (command == "verify") {
      const Table& t = result.tables.at("invariants");
      for (const auto& row : t.rows)
        std::cout << (row[3] == "1" ? "PASS " : "FAIL ") << row[0]
                  << "  residual=" << row[1] << "  tol=" << row[2] << "\n";
      std::cout << (result.exit_code == 0 ? "all invariants pass"
                                          : "INVARIANT FAILURES") << "\n";
    } else {
      for (const auto& [name, table] : result.tables)
        std::cout << name << ": " << table.rows.size() << " rows\n";
      if (result.crashed)
        std::cout << "crash_time=" << format_g17(result.crash_time) << "\n";
    }
    std::cout << "config_hash=" << cfg.hash << "\n";
    return result.exit_code;
  } catch (const ValidationError& e) {
    nlohmann::json err = {{"error", "validation"}, {"field", e.field},
                          {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const ParseError& e) {
    nlohmann::json err = {{"error", "parse"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err = {{"error", "runtime"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 4;
  }
}
