// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Compares the OpenMP evolution kernels against their serial references on a
// chain large enough to show the parallel speedup, and checks that both
// paths produce identical numbers.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fockdyn/hamiltonian.hpp"
#include "fockdyn/spectral.hpp"

using namespace fockdyn;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

}  // namespace

int main() {
  const int qubits = 10;  // N = 1024
  const int steps = 600;

  SpinBasis basis(qubits);
  SpinChainParams params;
  params.qubit_count = qubits;
  params.ising_j = 100.0;
  params.rabi_disorder = 10.0;
  params.seed = 7;
  auto [h0, v] = build_spin_chain(basis, params);
  const SymmetricHamiltonian h = add(h0, v);

  auto start = clock_type::now();
  const SpectralDecomposition dec = diagonalize(h);
  std::printf("diagonalize      N=%-5d                 %8.3f s\n", h.dimension(),
              seconds_since(start));

  std::vector<double> times(steps);
  for (int i = 0; i < steps; ++i) times[static_cast<std::size_t>(i)] = 0.2 * i / (steps - 1);
  const int k0 = basis.dimension() / 2;

  start = clock_type::now();
  const PacketTrajectory serial = evolve_packet_serial(dec, k0, times);
  const double t_serial = seconds_since(start);

  start = clock_type::now();
  const PacketTrajectory parallel = evolve_packet(dec, k0, times);
  const double t_parallel = seconds_since(start);

  const double max_diff = (serial.weights - parallel.weights).cwiseAbs().maxCoeff();
  std::printf("evolve_packet    serial %7.3f s  omp %7.3f s  speedup %.2fx  max |diff| %g\n",
              t_serial, t_parallel, t_serial / t_parallel, max_diff);

  const SymmetricHamiltonian sigma = add_perturbation(v, 5.0, 11);
  const SpectralDecomposition dec_p = diagonalize(add(h, sigma));
  Eigen::VectorXd psi0 = Eigen::VectorXd::Zero(h.dimension());
  psi0[k0] = 1.0;

  start = clock_type::now();
  const std::vector<double> f_serial = overlap_fidelity_serial(dec, dec_p, psi0, times);
  const double tf_serial = seconds_since(start);

  start = clock_type::now();
  const std::vector<double> f_parallel = overlap_fidelity(dec, dec_p, psi0, times);
  const double tf_parallel = seconds_since(start);

  double f_diff = 0.0;
  for (std::size_t i = 0; i < f_serial.size(); ++i) {
    f_diff = std::max(f_diff, std::abs(f_serial[i] - f_parallel[i]));
  }
  std::printf("overlap_fidelity serial %7.3f s  omp %7.3f s  speedup %.2fx  max |diff| %g\n",
              tf_serial, tf_parallel, tf_serial / tf_parallel, f_diff);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#endif
  return (max_diff == 0.0 && f_diff == 0.0) ? 0 : 1;
}
