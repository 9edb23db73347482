// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fockdyn/csv.hpp"
#include "fockdyn/presets.hpp"
#include "fockdyn/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Overrides {
  // run-level
  std::uint64_t seed = 0;
  std::string name;
  double t_max = 0.0;
  int steps = 0;
  int realizations = 0;
  std::vector<double> epsilons, j_values, sigma_p_values;
  std::vector<std::string> outputs;
  std::string k0_policy;
  int k0_index = 0;
  bool eps_t_axis = false;
  int sf_bins = 0;
  std::string model;
  // spin chain
  int qubits = 0;
  double gradient = 0.0, omega0 = 0.0, nu = 0.0, ising_j = 0.0, rabi = 0.0, sigma_p = 0.0,
         epsilon = 0.0;
  // tbri
  int orbitals = 0, particles = 0;
  double d0 = 0.0, v0 = 0.0;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--name", o.name, "run name (default output stem)");
  cmd->add_option("--t_max", o.t_max, "time grid end (eps*t end in eps_t_axis mode)");
  cmd->add_option("--steps", o.steps, "time grid samples");
  cmd->add_option("--realizations", o.realizations, "disorder realizations");
  cmd->add_option("--epsilons", o.epsilons, "perturbation strengths")->delimiter(',');
  cmd->add_option("--j_values", o.j_values, "spin chain J sweep")->delimiter(',');
  cmd->add_option("--sigma_p_values", o.sigma_p_values, "spin chain sigma_p sweep")
      ->delimiter(',');
  cmd->add_option("--outputs", o.outputs,
                  "any of entropy,fidelity,w0,sf,spacing,theory-overlay")
      ->delimiter(',');
  cmd->add_option("--k0_policy", o.k0_policy, "index | spectrum-center");
  cmd->add_option("--k0_index", o.k0_index, "initial basis state for k0_policy=index");
  cmd->add_flag("--eps_t_axis", o.eps_t_axis, "report fidelity against eps*t");
  cmd->add_option("--sf_bins", o.sf_bins, "strength function bins");
  cmd->add_option("--model", o.model, "tbri | spin-chain");
  cmd->add_option("--L", o.qubits, "qubit count");
  cmd->add_option("--a", o.gradient, "field gradient");
  cmd->add_option("--omega0", o.omega0, "base Larmor frequency");
  cmd->add_option("--nu", o.nu, "drive frequency");
  cmd->add_option("--J", o.ising_j, "nearest-neighbor Ising coupling");
  cmd->add_option("--Omega0", o.rabi, "mean Rabi frequency");
  cmd->add_option("--sigma_p", o.sigma_p, "Rabi disorder std");
  cmd->add_option("--epsilon", o.epsilon, "model perturbation std");
  cmd->add_option("--M", o.orbitals, "single-particle states");
  cmd->add_option("--Np", o.particles, "particle count");
  cmd->add_option("--d0", o.d0, "mean single-particle spacing");
  cmd->add_option("--V0", o.v0, "two-body coupling scale");
}

void apply_overrides(const CLI::App* cmd, const Overrides& o, fockdyn::ExperimentConfig& cfg) {
  using fockdyn::K0Policy;
  using fockdyn::ModelKind;
  if (cmd->count("--seed")) cfg.seed = o.seed;
  if (cmd->count("--name")) cfg.name = o.name;
  if (cmd->count("--t_max")) cfg.t_max = o.t_max;
  if (cmd->count("--steps")) cfg.steps = o.steps;
  if (cmd->count("--realizations")) cfg.realizations = o.realizations;
  if (cmd->count("--epsilons")) cfg.epsilons = o.epsilons;
  if (cmd->count("--j_values")) cfg.j_values = o.j_values;
  if (cmd->count("--sigma_p_values")) cfg.sigma_p_values = o.sigma_p_values;
  if (cmd->count("--outputs")) {
    std::string joined;
    for (std::size_t i = 0; i < o.outputs.size(); ++i) {
      if (i) joined += ",";
      joined += o.outputs[i];
    }
    cfg.outputs = fockdyn::parse_config_text("outputs = " + joined).outputs;
  }
  if (cmd->count("--k0_policy")) {
    if (o.k0_policy == "index") cfg.k0_policy = K0Policy::Index;
    else if (o.k0_policy == "spectrum-center") cfg.k0_policy = K0Policy::SpectrumCenter;
    else throw std::invalid_argument("unknown k0_policy '" + o.k0_policy + "'");
  }
  if (cmd->count("--k0_index")) cfg.k0_index = o.k0_index;
  if (cmd->count("--eps_t_axis")) cfg.eps_t_axis = o.eps_t_axis;
  if (cmd->count("--sf_bins")) cfg.sf_bins = o.sf_bins;
  if (cmd->count("--model")) {
    if (o.model == "tbri") cfg.model = ModelKind::Tbri;
    else if (o.model == "spin-chain") cfg.model = ModelKind::SpinChain;
    else throw std::invalid_argument("unknown model '" + o.model + "'");
  }
  if (cmd->count("--L")) cfg.spin.qubit_count = o.qubits;
  if (cmd->count("--a")) cfg.spin.gradient = o.gradient;
  if (cmd->count("--omega0")) cfg.spin.omega0 = o.omega0;
  if (cmd->count("--nu")) cfg.spin.nu = o.nu;
  if (cmd->count("--J")) cfg.spin.ising_j = o.ising_j;
  if (cmd->count("--Omega0")) cfg.spin.rabi = o.rabi;
  if (cmd->count("--sigma_p")) cfg.spin.rabi_disorder = o.sigma_p;
  if (cmd->count("--epsilon")) cfg.spin.perturbation_std = o.epsilon;
  if (cmd->count("--M")) cfg.tbri.orbital_count = o.orbitals;
  if (cmd->count("--Np")) cfg.tbri.particle_count = o.particles;
  if (cmd->count("--d0")) cfg.tbri.level_spacing = o.d0;
  if (cmd->count("--V0")) cfg.tbri.coupling_scale = o.v0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fockdyn - wave-packet dynamics, entropy and fidelity for the "
               "two-body random interaction model and the single-pulse spin chain"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "run an experiment and write CSV output");
  std::string config_path, preset_name, out_path;
  int threads = 0;
  Overrides overrides;
  run_cmd->add_option("--config", config_path, "config file (key = value format)");
  run_cmd->add_option("--preset", preset_name, "start from a named preset");
  run_cmd->add_option("--out", out_path, "output CSV path (default <name>.csv)");
  run_cmd->add_option("--threads", threads, "OpenMP worker count");
  add_override_flags(run_cmd, overrides);

  // preset
  auto* preset_cmd = app.add_subcommand("preset", "print a preset's full configuration");
  std::string show_name, preset_out;
  preset_cmd->add_option("name", show_name, "preset name")->required();
  preset_cmd->add_option("--out", preset_out, "write the config to a file instead of stdout");

  // list-presets
  auto* list_cmd = app.add_subcommand("list-presets", "list available presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& name : fockdyn::preset_names()) std::cout << name << "\n";
      return 0;
    }
    if (preset_cmd->parsed()) {
      const std::string text = fockdyn::serialize_config(fockdyn::preset(show_name));
      if (preset_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(preset_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + preset_out + "'");
        out << text;
      }
      return 0;
    }

    // run
    if (threads > 0) {
#ifdef _OPENMP
      omp_set_num_threads(threads);
#endif
    }
    fockdyn::ExperimentConfig cfg;
    if (!preset_name.empty() && !config_path.empty()) {
      throw std::invalid_argument("--preset and --config are mutually exclusive");
    }
    if (!preset_name.empty()) {
      cfg = fockdyn::preset(preset_name);
    } else if (!config_path.empty()) {
      cfg = fockdyn::parse_config_text(read_file(config_path));
    } else {
      throw std::invalid_argument("run needs --preset or --config");
    }
    apply_overrides(run_cmd, overrides, cfg);
    cfg.validate();

    const fockdyn::EnsembleResult result = fockdyn::run_experiment(cfg);
    const std::string path = out_path.empty() ? cfg.name + ".csv" : out_path;
    fockdyn::write_csv(result, path);
    std::cout << "wrote " << path << " (+ sidecar " << path << ".meta)\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
