// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fockdyn/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace fockdyn {

namespace {

SpinChainParams chain_base() {
  SpinChainParams p;
  p.qubit_count = 8;
  p.gradient = 1.0;
  p.omega0 = 100.0;
  p.nu = 100.0;  // resonant drive: xi_k = a k
  p.ising_j = 0.0;
  p.rabi = 100.0;
  p.rabi_disorder = 0.0;
  return p;
}

/// Saturation-covering grid: t_max = 20 / Delta_E with the clean-chain width
/// Delta_E = sqrt(L) Omega0 / 2.
double chain_t_max(const SpinChainParams& p) {
  return 20.0 / (std::sqrt(static_cast<double>(p.qubit_count)) * p.rabi / 2.0);
}

}  // namespace

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig config;
  config.name = name;
  config.seed = 1;

  if (name == "fig1") {
    config.model = ModelKind::SpinChain;
    config.spin = chain_base();
    config.j_values = {0.0, 10.0, 100.0};
    config.sigma_p_values = {5.0, 10.0, 20.0};
    config.outputs = {OutputKind::Entropy, OutputKind::W0};
    config.t_max = chain_t_max(config.spin);
    config.steps = 400;
    config.realizations = 20;
    return config;
  }
  if (name == "fig2") {
    config.model = ModelKind::SpinChain;
    config.spin = chain_base();
    config.j_values = {0.0, 5.0, 10.0, 15.0, 20.0, 30.0, 50.0, 70.0, 100.0};
    config.sigma_p_values = {5.0, 20.0};
    config.outputs = {OutputKind::Entropy};
    config.t_max = chain_t_max(config.spin);
    config.steps = 400;
    config.realizations = 20;
    return config;
  }
  if (name == "fig3") {
    config.model = ModelKind::SpinChain;
    config.spin = chain_base();
    config.j_values = {100.0};
    config.sigma_p_values = {0.0, 15.0, 50.0};
    config.outputs = {OutputKind::Entropy, OutputKind::W0, OutputKind::TheoryOverlay};
    config.t_max = 0.04;  // short scale: linear rise plus the onset of saturation
    config.steps = 400;
    config.realizations = 20;
    return config;
  }
  if (name == "fig4") {
    config.model = ModelKind::SpinChain;
    config.spin = chain_base();
    config.j_values = {0.0, 100.0};
    config.sigma_p_values = {0.0, 15.0, 50.0};
    config.epsilons = {5.0, 10.0, 20.0};
    config.outputs = {OutputKind::Fidelity};
    config.t_max = 0.6;
    config.steps = 300;
    config.realizations = 20;
    return config;
  }
  if (name == "fig5") {
    config.model = ModelKind::SpinChain;
    config.spin = chain_base();
    config.j_values = {0.0, 100.0};
    config.sigma_p_values = {0.0};
    config.epsilons = {3.0, 5.0, 7.0};
    config.outputs = {OutputKind::Fidelity};
    config.eps_t_axis = true;
    config.t_max = 6.0;  // range of eps * t
    config.steps = 300;
    config.realizations = 20;
    return config;
  }
  if (name == "tbri-sf") {
    config.model = ModelKind::Tbri;
    config.tbri = {12, 6, 1.0, 0.4, 0};
    config.outputs = {OutputKind::Sf, OutputKind::TheoryOverlay};
    config.t_max = 1.0;
    config.steps = 2;
    config.realizations = 10;
    config.sf_bins = 51;
    return config;
  }
  if (name == "tbri-fidelity") {
    config.model = ModelKind::Tbri;
    config.tbri = {12, 6, 1.0, 0.1, 0};
    config.outputs = {OutputKind::W0, OutputKind::TheoryOverlay};
    config.t_max = 12.0;
    config.steps = 400;
    config.realizations = 20;
    return config;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "tbri-sf", "tbri-fidelity"};
}

}  // namespace fockdyn
