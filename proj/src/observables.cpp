// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fockdyn/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fockdyn {

namespace {

void check_distribution(std::span<const double> w) {
  double sum = 0.0;
  for (double p : w) {
    if (p < -1e-12) throw std::invalid_argument("probability vector has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-8) {
    throw std::invalid_argument("probability vector is not normalized (sum = " +
                                std::to_string(sum) + ")");
  }
}

}  // namespace

double shannon_entropy(std::span<const double> w) {
  check_distribution(w);
  double s = 0.0;
  for (double p : w) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

Participation participation_number(std::span<const double> w) {
  check_distribution(w);
  double s = 0.0, sq = 0.0;
  for (double p : w) {
    if (p > 0.0) s -= p * std::log(p);
    sq += p * p;
  }
  return {std::exp(s), 1.0 / sq};
}

EntropyTrace packet_entropy(const PacketTrajectory& trajectory) {
  EntropyTrace trace;
  trace.times = trajectory.times;
  trace.max_entropy = std::log(static_cast<double>(trajectory.weights.cols()));
  trace.entropy.reserve(trajectory.times.size());
  trace.normalized.reserve(trajectory.times.size());
  for (Eigen::Index it = 0; it < trajectory.weights.rows(); ++it) {
    const auto row = trajectory.weights.row(it);
    const double s = shannon_entropy(std::span<const double>(row.data(), row.size()));
    trace.entropy.push_back(s);
    trace.normalized.push_back(s / trace.max_entropy);
  }
  return trace;
}

FirstMinimumReport first_minimum(const EntropyTrace& trace, int smoothing_window) {
  const auto& s = trace.entropy;
  const std::size_t n = s.size();
  FirstMinimumReport report;
  if (n < 3) return report;
  if (smoothing_window < 1 || smoothing_window % 2 == 0) {
    throw std::invalid_argument("first_minimum: smoothing window must be odd and positive");
  }

  const std::size_t half = static_cast<std::size_t>(smoothing_window / 2);
  std::vector<double> smooth(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t reach = std::min({half, i, n - 1 - i});
    double acc = 0.0;
    for (std::size_t j = i - reach; j <= i + reach; ++j) acc += s[j];
    smooth[i] = acc / static_cast<double>(2 * reach + 1);
  }

  std::size_t max_index = 0;
  bool have_max = false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (smooth[i] > smooth[i - 1] && smooth[i] > smooth[i + 1]) {
      max_index = i;
      have_max = true;
      break;
    }
  }
  if (!have_max) return report;

  for (std::size_t i = max_index + 1; i + 1 < n; ++i) {
    if (smooth[i] < smooth[i - 1] && smooth[i] < smooth[i + 1]) {
      report.time = trace.times[i];
      report.entropy = s[i];
      report.ratio = s[i] / trace.max_entropy;
      report.found = true;
      return report;
    }
  }
  return report;
}

}  // namespace fockdyn
