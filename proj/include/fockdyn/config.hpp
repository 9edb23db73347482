// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fockdyn/hamiltonian.hpp"

namespace fockdyn {

enum class ModelKind { Tbri, SpinChain };

enum class K0Policy {
  Index,           ///< explicit basis index
  SpectrumCenter,  ///< diagonal energy closest to the median, lowest index on ties
};

enum class OutputKind { Entropy, Fidelity, W0, Sf, Spacing, TheoryOverlay };

/// Full description of one ensemble experiment. The spin-chain sweep lists
/// (J, sigma_p) expand into a cross product of series; an empty list means
/// "use the single value from the model parameters".
struct ExperimentConfig {
  std::string name = "custom";
  ModelKind model = ModelKind::SpinChain;
  TbriParams tbri;
  SpinChainParams spin;

  K0Policy k0_policy = K0Policy::SpectrumCenter;
  int k0_index = 0;

  double t_max = 1.0;  ///< end of the time grid; end of the eps*t grid in eps_t_axis mode
  int steps = 400;
  int realizations = 20;
  std::uint64_t seed = 1;

  std::vector<OutputKind> outputs;
  std::vector<double> epsilons;  ///< perturbation strengths for fidelity sweeps

  std::vector<double> j_values;
  std::vector<double> sigma_p_values;

  bool eps_t_axis = false;  ///< plot fidelity against eps * t (scaling collapse mode)
  int sf_bins = 51;

  bool wants(OutputKind kind) const;
  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

/// Parses the flat key = value format with # comments and a [model] section.
ExperimentConfig parse_config_text(const std::string& text);

/// Inverse of parse_config_text; also used as the metadata sidecar echo.
std::string serialize_config(const ExperimentConfig& config);

std::string to_string(ModelKind kind);
std::string to_string(K0Policy policy);
std::string to_string(OutputKind kind);

}  // namespace fockdyn
