// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fockdyn/hamiltonian.hpp"

namespace fockdyn {

/// Eigenvalues (ascending) and orthonormal eigenvectors of a real symmetric
/// Hamiltonian. states(k, alpha) is the component of basis state k in
/// eigenstate alpha; each column's largest-magnitude component is made
/// positive so the decomposition is deterministic for a fixed matrix.
struct SpectralDecomposition {
  Eigen::VectorXd energies;
  Eigen::MatrixXd states;

  int dimension() const noexcept { return static_cast<int>(energies.size()); }
};

/// Dense symmetric eigensolve (tridiagonalization + implicit QL). Throws a
/// diagnostic error with matrix statistics if the solver fails to converge.
SpectralDecomposition diagonalize(const SymmetricHamiltonian& h);

/// Wave-packet history of an initial basis state: per-time probabilities
/// w_m(t) over the unperturbed basis and the return probability W0(t).
/// weights(it, m) is w_m(times[it]); rows are stored contiguously.
struct PacketTrajectory {
  using WeightMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  std::vector<double> times;
  WeightMatrix weights;
  std::vector<double> return_probability;
  int initial_state = 0;
};

/// Spectral time evolution from basis state k0 (hbar = 1):
/// A_m(t) = sum_alpha C_m^a C_k0^a exp(-i E^a t), w_m = |A_m|^2.
/// Time points are computed independently and in parallel; the result is
/// identical to the serial reference for any thread count.
PacketTrajectory evolve_packet(const SpectralDecomposition& dec, int k0,
                               const std::vector<double>& times);

/// Serial reference implementation, kept for testing and benchmarking.
PacketTrajectory evolve_packet_serial(const SpectralDecomposition& dec, int k0,
                                      const std::vector<double>& times);

/// Return probability alone: W0(t) = |sum_a (C_k0^a)^2 exp(-i E^a t)|^2.
std::vector<double> return_probability(const SpectralDecomposition& dec, int k0,
                                       const std::vector<double>& times);

/// Squared overlap of the states evolved from psi0 under two Hamiltonians,
/// F(t) = |<Psi_p(t)|Psi_u(t)>|^2. Requires equal dimensions and unit psi0.
std::vector<double> overlap_fidelity(const SpectralDecomposition& unperturbed,
                                     const SpectralDecomposition& perturbed,
                                     const Eigen::VectorXd& psi0,
                                     const std::vector<double>& times);

/// Serial reference for overlap_fidelity.
std::vector<double> overlap_fidelity_serial(const SpectralDecomposition& unperturbed,
                                            const SpectralDecomposition& perturbed,
                                            const Eigen::VectorXd& psi0,
                                            const std::vector<double>& times);

/// Binned strength function P(E, E_k0): the weight (C_k0^a)^2 of basis state
/// k0 on each exact eigenstate, histogrammed against eigenenergy and
/// normalized to unit integral. Moments are computed from the unbinned
/// weights, so centroid == H_{k0,k0} and variance == sum_{m!=k0} H_{m,k0}^2
/// hold as exact sum rules.
struct StrengthFunctionProfile {
  std::vector<double> bin_edges;
  std::vector<double> heights;
  double centroid = 0.0;
  double variance = 0.0;
  bool well_populated = true;  ///< mean eigenstate count per bin >= 5
};

StrengthFunctionProfile strength_function(const SpectralDecomposition& dec, int k0,
                                          int bin_count);

/// Same, on caller-supplied bin edges (for ensemble averaging on a common
/// grid); weights outside the range are clamped into the edge bins.
StrengthFunctionProfile strength_function(const SpectralDecomposition& dec, int k0,
                                          const std::vector<double>& bin_edges);

/// Nearest-neighbor spacing statistics of one spectrum.
struct SpacingStatistics {
  std::vector<double> bin_edges;  ///< histogram of unfolded spacings
  std::vector<double> heights;    ///< density-normalized
  double mean_gap_ratio = 0.0;    ///< <min(s_i, s_i+1) / max(s_i, s_i+1)>
  int level_count = 0;            ///< levels used after edge trim and merging
  double degenerate_fraction = 0.0;  ///< fraction of levels merged as degenerate
};

/// Trims the outer 10% of levels (5% per edge), merges (near-)degenerate
/// levels, unfolds each spacing by the local mean spacing within a sliding
/// energy window of width window_fraction * span, and returns the spacing
/// histogram plus the mean adjacent-gap ratio. Requires >= 100 levels after
/// the trim.
SpacingStatistics level_spacing_statistics(const Eigen::VectorXd& energies,
                                           double window_fraction = 0.05);

}  // namespace fockdyn
