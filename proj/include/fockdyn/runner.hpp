// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fockdyn/config.hpp"

namespace fockdyn {

struct TraceColumn {
  std::string name;
  std::vector<double> mean;
  std::vector<double> stderr_of_mean;
};

/// One axis plus a set of named mean/standard-error columns.
struct TraceBlock {
  std::string axis_name;
  std::vector<double> axis;
  std::vector<TraceColumn> columns;
};

/// Disorder-ensemble averages of everything the experiment requested. Time
/// traces, the strength-function histogram and the spacing histogram live on
/// different axes, so each gets its own block. Scalars (gap ratios, widths,
/// fit parameters, first minima) go to the metadata sidecar.
struct EnsembleResult {
  TraceBlock traces;
  std::optional<TraceBlock> sf;
  std::optional<TraceBlock> spacing;
  std::vector<std::pair<std::string, std::string>> scalars;
  std::string config_echo;
  std::uint64_t master_seed = 0;
};

/// Stream id for the RNG of one (series, realization, purpose) triple.
/// Purpose 0 draws the model's own disorder; purpose 1 + e draws the fidelity
/// perturbation for epsilon index e.
std::uint64_t derive_stream(int series, int realization, int purpose);

/// Basis state whose deterministic diagonal energy is closest to the median
/// of the diagonal, ties broken by the lowest index.
int spectrum_center_index(const std::vector<double>& diagonal);

/// Runs the experiment: R realizations per series on independent RNG
/// streams (concurrently; the reduction is in fixed realization order, so
/// output bytes are independent of the worker count), averaged into mean
/// traces with standard errors.
EnsembleResult run_experiment(const ExperimentConfig& config);

}  // namespace fockdyn
