#include "sbpdiss/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "sbpdiss/integrate.hpp"
#include "sbpdiss/io.hpp"

namespace sbpdiss {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands = {
    "verify",        "spectra",   "convergence", "run1d",
    "vortex",        "khi-demo",  "dump-operator", "dump-dissipation"};

// every key the schema knows, used for unknown-key rejection
const std::set<std::string> kAllKeys = {
    "command", "family", "p", "N", "blocks", "blocks_x", "blocks_y",
    "pde", "scheme", "sat", "eps", "s", "include_B", "include_Htilde",
    "mode", "variables", "a", "gamma", "beta", "mach", "vortex_beta",
    "vortex_R", "method", "rtol", "atol", "dt_init", "cfl", "t_final",
    "n_outputs", "track_spectrum", "grids", "seed"};

// required keys per command (on top of schema validity)
std::vector<std::string> required_keys(const std::string& cmd) {
  if (cmd == "spectra") return {"family", "p", "N"};
  if (cmd == "convergence") return {"family", "p", "grids"};
  if (cmd == "run1d") return {"pde", "family", "p", "N"};
  if (cmd == "vortex") return {"family", "p", "grids"};
  if (cmd == "khi-demo") return {"family", "p", "N"};
  if (cmd == "dump-operator") return {"family", "p", "N"};
  if (cmd == "dump-dissipation") return {"family", "p", "N", "s"};
  return {};
}

double require_number(const json& j, const std::string& key) {
  if (!j.at(key).is_number())
    throw ValidationError(key, "field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");

  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kAllKeys.count(it.key()))
      throw ValidationError(it.key(), "unknown config key: " + it.key());

  ExperimentConfig c;
  if (!j.contains("command"))
    throw ValidationError("command", "missing required field 'command'");
  c.command = j.at("command").get<std::string>();
  if (!kCommands.count(c.command))
    throw ValidationError("command", "unknown command: " + c.command);

  for (const auto& key : required_keys(c.command))
    if (!j.contains(key))
      throw ValidationError(key, "missing required field '" + key + "'");

  if (j.contains("family")) {
    try {
      c.family = family_from_string(j.at("family").get<std::string>());
    } catch (const UnsupportedFamily& e) {
      throw ValidationError("family", e.what());
    }
  }
  if (j.contains("p")) c.p = static_cast<int>(require_number(j, "p"));
  if (j.contains("N")) c.n = static_cast<int>(require_number(j, "N"));
  if (c.family == Family::LGL || c.family == Family::LG) c.n = c.p + 1;
  if (j.contains("blocks")) c.blocks = static_cast<int>(require_number(j, "blocks"));
  if (j.contains("blocks_x"))
    c.blocks_x = static_cast<int>(require_number(j, "blocks_x"));
  if (j.contains("blocks_y"))
    c.blocks_y = static_cast<int>(require_number(j, "blocks_y"));
  if (j.contains("pde")) c.pde = pde_from_string(j.at("pde").get<std::string>());
  if (j.contains("scheme"))
    c.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  if (j.contains("sat")) c.sat = sat_from_string(j.at("sat").get<std::string>());

  if (j.contains("s")) c.s = static_cast<int>(require_number(j, "s"));
  if (c.s == 0)
    c.s = (c.family == Family::CSBP) ? c.p + 1 : c.p;

  if (j.contains("eps")) {
    if (j.at("eps").is_string()) {
      c.eps_preset = j.at("eps").get<std::string>();
      if (c.eps_preset == "large")
        c.eps = 3.125 * std::pow(5.0, -c.s);
      else if (c.eps_preset == "small")
        c.eps = 0.625 * std::pow(5.0, -c.s);
      else if (c.eps_preset == "se")
        c.eps = 0.1 * std::pow(2.25, -c.p);
      else
        throw ValidationError("eps", "unknown eps preset: " + c.eps_preset);
    } else {
      c.eps = require_number(j, "eps");
      if (c.eps < 0.0) throw ValidationError("eps", "eps must be >= 0");
    }
  }
  if (j.contains("include_B")) {
    c.include_b = j.at("include_B").get<bool>();
  } else if (c.family != Family::CSBP) {
    // spectral elements use the plain C = I form by default (the choice of
    // C only rescales the unique SE operator; presets are calibrated for it)
    c.include_b = false;
  }
  if (j.contains("include_Htilde"))
    c.include_htilde = j.at("include_Htilde").get<bool>();
  if (j.contains("mode"))
    c.mode = coeff_mode_from_string(j.at("mode").get<std::string>());
  if (j.contains("variables")) {
    std::string v = j.at("variables").get<std::string>();
    if (v == "conservative") c.vars = VarSet::Conservative;
    else if (v == "entropy") c.vars = VarSet::Entropy;
    else throw ValidationError("variables", "unknown variable set: " + v);
  }

  if (j.contains("a")) c.wave_speed = require_number(j, "a");
  if (j.contains("gamma")) c.gamma = require_number(j, "gamma");
  if (j.contains("beta")) c.burgers_beta = require_number(j, "beta");
  if (j.contains("mach")) c.mach = require_number(j, "mach");
  if (j.contains("vortex_beta")) c.vortex_beta = require_number(j, "vortex_beta");
  if (j.contains("vortex_R")) c.vortex_radius = require_number(j, "vortex_R");

  if (j.contains("method")) {
    std::string m = j.at("method").get<std::string>();
    if (m == "rk4") c.method = TimeMethod::RK4;
    else if (m == "dp54") c.method = TimeMethod::DormandPrince54;
    else throw ValidationError("method", "unknown method: " + m);
  }
  if (j.contains("rtol")) c.rtol = require_number(j, "rtol");
  if (j.contains("atol")) c.atol = require_number(j, "atol");
  if (j.contains("dt_init")) c.dt_init = require_number(j, "dt_init");
  if (j.contains("cfl")) c.cfl = require_number(j, "cfl");
  if (j.contains("t_final")) c.t_final = require_number(j, "t_final");
  if (j.contains("n_outputs"))
    c.n_outputs = static_cast<int>(require_number(j, "n_outputs"));
  if (j.contains("track_spectrum"))
    c.track_spectrum = j.at("track_spectrum").get<bool>();
  if (j.contains("grids")) {
    if (!j.at("grids").is_array())
      throw ValidationError("grids", "grids must be an array of integers");
    for (const auto& g : j.at("grids")) c.grids.push_back(g.get<int>());
  }
  if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();

  finalize_config(c);
  return c;
}

void finalize_config(ExperimentConfig& c) {
  json e;
  e["command"] = c.command;
  e["family"] = to_string(c.family);
  e["p"] = c.p;
  e["N"] = c.n;
  e["blocks"] = c.blocks;
  e["blocks_x"] = c.blocks_x;
  e["blocks_y"] = c.blocks_y;
  e["pde"] = to_string(c.pde);
  e["scheme"] = to_string(c.scheme);
  e["sat"] = to_string(c.sat);
  e["eps"] = c.eps;
  if (!c.eps_preset.empty()) e["eps_preset"] = c.eps_preset;
  e["s"] = c.s;
  e["include_B"] = c.include_b;
  e["include_Htilde"] = c.include_htilde;
  e["mode"] = to_string(c.mode);
  e["variables"] = c.vars == VarSet::Entropy ? "entropy" : "conservative";
  e["a"] = c.wave_speed;
  e["gamma"] = c.gamma;
  e["beta"] = c.burgers_beta;
  e["mach"] = c.mach;
  e["vortex_beta"] = c.vortex_beta;
  e["vortex_R"] = c.vortex_radius;
  e["method"] = c.method == TimeMethod::RK4 ? "rk4" : "dp54";
  e["rtol"] = c.rtol;
  e["atol"] = c.atol;
  e["dt_init"] = c.dt_init;
  e["cfl"] = c.cfl;
  e["t_final"] = c.t_final;
  e["n_outputs"] = c.n_outputs;
  e["track_spectrum"] = c.track_spectrum;
  e["grids"] = c.grids;
  e["seed"] = c.seed;
  c.echo_json = e.dump(2);
  c.hash = fnv1a_hex(c.echo_json);
}

}  // namespace sbpdiss
