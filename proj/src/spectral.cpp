// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fockdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fockdyn {

namespace {

void fix_eigenvector_signs(Eigen::MatrixXd& states) {
  for (int a = 0; a < states.cols(); ++a) {
    int argmax = 0;
    double best = 0.0;
    for (int k = 0; k < states.rows(); ++k) {
      const double mag = std::abs(states(k, a));
      if (mag > best) {
        best = mag;
        argmax = k;
      }
    }
    if (states(argmax, a) < 0.0) states.col(a) = -states.col(a);
  }
}

/// w_m(t) for one time point; writes one row of the weight matrix.
void packet_weights_at(const Eigen::MatrixXd& overlap, const Eigen::VectorXd& energies,
                       double t, PacketTrajectory::WeightMatrix& weights, int row) {
  const int n = static_cast<int>(energies.size());
  Eigen::VectorXd cosv(n), sinv(n);
  for (int a = 0; a < n; ++a) {
    const double phase = energies[a] * t;
    cosv[a] = std::cos(phase);
    sinv[a] = std::sin(phase);
  }
  const Eigen::VectorXd re = overlap * cosv;
  const Eigen::VectorXd im = overlap * sinv;
  weights.row(row) = (re.array().square() + im.array().square()).transpose();
}

PacketTrajectory evolve_packet_impl(const SpectralDecomposition& dec, int k0,
                                    const std::vector<double>& times, bool parallel) {
  const int n = dec.dimension();
  if (k0 < 0 || k0 >= n) throw std::out_of_range("evolve_packet: k0 out of range");

  // overlap(m, a) = C_m^a C_k0^a
  Eigen::MatrixXd overlap = dec.states;
  for (int a = 0; a < n; ++a) overlap.col(a) *= dec.states(k0, a);

  PacketTrajectory traj;
  traj.times = times;
  traj.initial_state = k0;
  traj.weights.resize(static_cast<Eigen::Index>(times.size()), n);

  const int steps = static_cast<int>(times.size());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int it = 0; it < steps; ++it) {
      packet_weights_at(overlap, dec.energies, times[static_cast<std::size_t>(it)], traj.weights,
                        it);
    }
  } else {
    for (int it = 0; it < steps; ++it) {
      packet_weights_at(overlap, dec.energies, times[static_cast<std::size_t>(it)], traj.weights,
                        it);
    }
  }

  traj.return_probability.resize(times.size());
  for (int it = 0; it < steps; ++it) {
    traj.return_probability[static_cast<std::size_t>(it)] = traj.weights(it, k0);
  }
  return traj;
}

/// F(t) for one time point from the precomputed eigenbasis overlap
/// G = C_p^T C_u and initial amplitudes a_u, a_p.
double fidelity_at(const Eigen::MatrixXd& g, const Eigen::VectorXd& amp_u,
                   const Eigen::VectorXd& amp_p, const Eigen::VectorXd& energies_u,
                   const Eigen::VectorXd& energies_p, double t) {
  const int n = static_cast<int>(amp_u.size());
  Eigen::VectorXd u_re(n), u_im(n), p_re(n), p_im(n);
  for (int a = 0; a < n; ++a) {
    const double pu = energies_u[a] * t;
    u_re[a] = amp_u[a] * std::cos(pu);
    u_im[a] = -amp_u[a] * std::sin(pu);
    const double pp = energies_p[a] * t;
    p_re[a] = amp_p[a] * std::cos(pp);
    p_im[a] = -amp_p[a] * std::sin(pp);
  }
  const Eigen::VectorXd gu_re = g * u_re;
  const Eigen::VectorXd gu_im = g * u_im;
  const double overlap_re = p_re.dot(gu_re) + p_im.dot(gu_im);
  const double overlap_im = p_re.dot(gu_im) - p_im.dot(gu_re);
  return overlap_re * overlap_re + overlap_im * overlap_im;
}

std::vector<double> overlap_fidelity_impl(const SpectralDecomposition& unperturbed,
                                          const SpectralDecomposition& perturbed,
                                          const Eigen::VectorXd& psi0,
                                          const std::vector<double>& times, bool parallel) {
  const int n = unperturbed.dimension();
  if (perturbed.dimension() != n || psi0.size() != n) {
    throw std::invalid_argument("overlap_fidelity: dimension mismatch");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("overlap_fidelity: psi0 must be normalized");
  }

  const Eigen::MatrixXd g = perturbed.states.transpose() * unperturbed.states;
  const Eigen::VectorXd amp_u = unperturbed.states.transpose() * psi0;
  const Eigen::VectorXd amp_p = perturbed.states.transpose() * psi0;

  std::vector<double> fidelity(times.size());
  const int steps = static_cast<int>(times.size());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int it = 0; it < steps; ++it) {
      fidelity[static_cast<std::size_t>(it)] =
          fidelity_at(g, amp_u, amp_p, unperturbed.energies, perturbed.energies,
                      times[static_cast<std::size_t>(it)]);
    }
  } else {
    for (int it = 0; it < steps; ++it) {
      fidelity[static_cast<std::size_t>(it)] =
          fidelity_at(g, amp_u, amp_p, unperturbed.energies, perturbed.energies,
                      times[static_cast<std::size_t>(it)]);
    }
  }
  return fidelity;
}

}  // namespace

SpectralDecomposition diagonalize(const SymmetricHamiltonian& h) {
  const Eigen::MatrixXd dense = h.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "diagonalize: eigensolver failed to converge (N=" << h.dimension()
        << ", |H|_F=" << dense.norm() << ", diag range [" << dense.diagonal().minCoeff() << ", "
        << dense.diagonal().maxCoeff() << "], offdiag entries " << h.offdiag().size() << ")";
    throw std::runtime_error(msg.str());
  }
  SpectralDecomposition dec;
  dec.energies = solver.eigenvalues();
  dec.states = solver.eigenvectors();
  fix_eigenvector_signs(dec.states);
  return dec;
}

PacketTrajectory evolve_packet(const SpectralDecomposition& dec, int k0,
                               const std::vector<double>& times) {
  return evolve_packet_impl(dec, k0, times, true);
}

PacketTrajectory evolve_packet_serial(const SpectralDecomposition& dec, int k0,
                                      const std::vector<double>& times) {
  return evolve_packet_impl(dec, k0, times, false);
}

std::vector<double> return_probability(const SpectralDecomposition& dec, int k0,
                                       const std::vector<double>& times) {
  const int n = dec.dimension();
  if (k0 < 0 || k0 >= n) throw std::out_of_range("return_probability: k0 out of range");
  Eigen::VectorXd sf_weights(n);
  for (int a = 0; a < n; ++a) sf_weights[a] = dec.states(k0, a) * dec.states(k0, a);

  std::vector<double> w0(times.size());
  for (std::size_t it = 0; it < times.size(); ++it) {
    double re = 0.0, im = 0.0;
    for (int a = 0; a < n; ++a) {
      const double phase = dec.energies[a] * times[it];
      re += sf_weights[a] * std::cos(phase);
      im -= sf_weights[a] * std::sin(phase);
    }
    w0[it] = re * re + im * im;
  }
  return w0;
}

std::vector<double> overlap_fidelity(const SpectralDecomposition& unperturbed,
                                     const SpectralDecomposition& perturbed,
                                     const Eigen::VectorXd& psi0,
                                     const std::vector<double>& times) {
  return overlap_fidelity_impl(unperturbed, perturbed, psi0, times, true);
}

std::vector<double> overlap_fidelity_serial(const SpectralDecomposition& unperturbed,
                                            const SpectralDecomposition& perturbed,
                                            const Eigen::VectorXd& psi0,
                                            const std::vector<double>& times) {
  return overlap_fidelity_impl(unperturbed, perturbed, psi0, times, false);
}

StrengthFunctionProfile strength_function(const SpectralDecomposition& dec, int k0,
                                          int bin_count) {
  if (bin_count < 1) throw std::invalid_argument("strength_function: need at least one bin");
  const double lo = dec.energies[0];
  const double hi = dec.energies[dec.dimension() - 1];
  const double pad = 1e-9 * std::max(1.0, hi - lo);
  std::vector<double> edges(static_cast<std::size_t>(bin_count) + 1);
  for (int b = 0; b <= bin_count; ++b) {
    edges[static_cast<std::size_t>(b)] =
        (lo - pad) + (hi - lo + 2 * pad) * b / static_cast<double>(bin_count);
  }
  return strength_function(dec, k0, edges);
}

StrengthFunctionProfile strength_function(const SpectralDecomposition& dec, int k0,
                                          const std::vector<double>& bin_edges) {
  const int n = dec.dimension();
  if (k0 < 0 || k0 >= n) throw std::out_of_range("strength_function: k0 out of range");
  if (bin_edges.size() < 2) throw std::invalid_argument("strength_function: need >= 2 edges");
  const int bins = static_cast<int>(bin_edges.size()) - 1;

  StrengthFunctionProfile profile;
  profile.bin_edges = bin_edges;
  profile.heights.assign(static_cast<std::size_t>(bins), 0.0);
  profile.well_populated = n >= 5 * bins;

  double centroid = 0.0;
  for (int a = 0; a < n; ++a) {
    centroid += dec.states(k0, a) * dec.states(k0, a) * dec.energies[a];
  }
  double variance = 0.0;
  for (int a = 0; a < n; ++a) {
    const double w = dec.states(k0, a) * dec.states(k0, a);
    const double d = dec.energies[a] - centroid;
    variance += w * d * d;

    auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), dec.energies[a]);
    int b = static_cast<int>(it - bin_edges.begin()) - 1;
    b = std::clamp(b, 0, bins - 1);
    profile.heights[static_cast<std::size_t>(b)] += w;
  }
  for (int b = 0; b < bins; ++b) {
    const double width = bin_edges[static_cast<std::size_t>(b) + 1] - bin_edges[static_cast<std::size_t>(b)];
    profile.heights[static_cast<std::size_t>(b)] /= width;
  }
  profile.centroid = centroid;
  profile.variance = variance;
  return profile;
}

SpacingStatistics level_spacing_statistics(const Eigen::VectorXd& energies,
                                           double window_fraction) {
  std::vector<double> levels(energies.data(), energies.data() + energies.size());
  std::sort(levels.begin(), levels.end());

  // Outer 10% of levels excluded, split between both spectrum edges.
  const std::size_t trim = levels.size() / 20;
  std::vector<double> kept(levels.begin() + static_cast<std::ptrdiff_t>(trim),
                           levels.end() - static_cast<std::ptrdiff_t>(trim));
  if (kept.size() < 100) {
    throw std::invalid_argument("level_spacing_statistics: fewer than 100 bulk levels");
  }

  const double span = kept.back() - kept.front();
  if (span <= 0.0) {
    throw std::invalid_argument("level_spacing_statistics: degenerate spectrum span");
  }

  // Merge numerically degenerate levels before any spacing is formed.
  const double degeneracy_tol = 1e-10 * span;
  std::vector<double> merged;
  merged.reserve(kept.size());
  merged.push_back(kept.front());
  std::size_t merged_away = 0;
  for (std::size_t i = 1; i < kept.size(); ++i) {
    if (kept[i] - merged.back() < degeneracy_tol) {
      ++merged_away;
    } else {
      merged.push_back(kept[i]);
    }
  }

  SpacingStatistics stats;
  stats.level_count = static_cast<int>(merged.size());
  stats.degenerate_fraction = static_cast<double>(merged_away) / static_cast<double>(kept.size());

  const std::size_t n_spacings = merged.size() - 1;
  std::vector<double> spacings(n_spacings), midpoints(n_spacings);
  for (std::size_t i = 0; i < n_spacings; ++i) {
    spacings[i] = merged[i + 1] - merged[i];
    midpoints[i] = 0.5 * (merged[i + 1] + merged[i]);
  }

  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  for (std::size_t i = 0; i + 1 < n_spacings; ++i) {
    const double a = spacings[i];
    const double b = spacings[i + 1];
    ratio_sum += std::min(a, b) / std::max(a, b);
    ++ratio_count;
  }
  stats.mean_gap_ratio = ratio_count ? ratio_sum / static_cast<double>(ratio_count) : 0.0;

  // Unfold by the local mean spacing over a sliding energy window.
  const double half_window = 0.5 * window_fraction * span;
  std::vector<double> unfolded(n_spacings);
  std::size_t lo = 0, hi = 0;
  double window_sum = 0.0;
  for (std::size_t i = 0; i < n_spacings; ++i) {
    while (hi < n_spacings && midpoints[hi] <= midpoints[i] + half_window) {
      window_sum += spacings[hi];
      ++hi;
    }
    while (midpoints[lo] < midpoints[i] - half_window) {
      window_sum -= spacings[lo];
      ++lo;
    }
    const double local_mean = window_sum / static_cast<double>(hi - lo);
    unfolded[i] = spacings[i] / local_mean;
  }

  const int bins = 40;
  const double s_max = 4.0;
  stats.bin_edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b) stats.bin_edges[static_cast<std::size_t>(b)] = s_max * b / bins;
  stats.heights.assign(bins, 0.0);
  for (double s : unfolded) {
    const int b = static_cast<int>(s / s_max * bins);
    if (b >= 0 && b < bins) stats.heights[static_cast<std::size_t>(b)] += 1.0;
  }
  const double norm = static_cast<double>(n_spacings) * (s_max / bins);
  for (double& hgt : stats.heights) hgt /= norm;
  return stats;
}

}  // namespace fockdyn
