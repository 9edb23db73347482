// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "fockdyn/spectral.hpp"

namespace fockdyn {

/// Shannon entropy -sum w ln w in nats, with 0 ln 0 := 0. Throws if the
/// vector is not a probability distribution within 1e-8.
double shannon_entropy(std::span<const double> w);

/// Two effective-size measures of a probability vector.
struct Participation {
  double effective_states;  ///< exp(S), number of principal components
  double inverse_ratio;     ///< 1 / sum w^2
};

Participation participation_number(std::span<const double> w);

/// Entropy history of a packet, with the normalization S_max = ln N used for
/// the saturation plots.
struct EntropyTrace {
  std::vector<double> times;
  std::vector<double> entropy;     ///< nats
  std::vector<double> normalized;  ///< entropy / ln N
  double max_entropy = 0.0;        ///< ln N
};

EntropyTrace packet_entropy(const PacketTrajectory& trajectory);

/// Location and depth of the first entropy minimum after the initial rise.
struct FirstMinimumReport {
  double time = 0.0;
  double entropy = 0.0;  ///< un-smoothed S at the minimum
  double ratio = 0.0;    ///< entropy / S_max
  bool found = false;
};

/// Smooths with a centered moving average of the given odd window (shrunk
/// symmetrically near the edges), then reports the first strict local
/// minimum that follows the first strict local maximum. found = false for
/// monotone traces.
FirstMinimumReport first_minimum(const EntropyTrace& trace, int smoothing_window = 5);

}  // namespace fockdyn
