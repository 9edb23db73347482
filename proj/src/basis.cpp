// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fockdyn/basis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace fockdyn {

std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 0; i < k; ++i) {
    result = result * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  }
  return result;
}

FermionBasis FermionBasis::enumerate(int orbital_count, int particle_count,
                                     std::size_t dimension_cap) {
  if (orbital_count < 0 || orbital_count > 24) {
    throw std::invalid_argument("fermion basis: orbital count must be in [0, 24], got " +
                                std::to_string(orbital_count));
  }
  if (particle_count < 0 || particle_count > orbital_count) {
    throw std::invalid_argument("fermion basis: particle count must be in [0, M], got Np=" +
                                std::to_string(particle_count) + " for M=" +
                                std::to_string(orbital_count));
  }
  const std::uint64_t dim = binomial(orbital_count, particle_count);
  if (dim > dimension_cap) {
    throw std::invalid_argument("fermion basis: dimension " + std::to_string(dim) +
                                " exceeds cap " + std::to_string(dimension_cap));
  }

  FermionBasis basis;
  basis.orbital_count_ = orbital_count;
  basis.particle_count_ = particle_count;
  basis.states_.reserve(dim);

  if (particle_count == 0) {
    basis.states_.push_back(0);
    return basis;
  }

  // Gosper's hack walks the Np-bit masks in ascending integer order.
  const std::uint32_t limit = orbital_count < 32 ? (1u << orbital_count) : 0xffffffffu;
  std::uint32_t mask = (1u << particle_count) - 1;
  while (mask < limit) {
    basis.states_.push_back(mask);
    const std::uint32_t c = mask & (0u - mask);
    const std::uint32_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return basis;
}

int FermionBasis::index_of(std::uint32_t mask) const noexcept {
  auto it = std::lower_bound(states_.begin(), states_.end(), mask);
  if (it == states_.end() || *it != mask) return -1;
  return static_cast<int>(it - states_.begin());
}

SpinBasis::SpinBasis(int qubit_count) : qubit_count_(qubit_count) {
  if (qubit_count < 1 || qubit_count > 16) {
    throw std::invalid_argument("spin basis: qubit count must be in [1, 16], got " +
                                std::to_string(qubit_count));
  }
}

std::vector<int> directly_coupled(const FermionBasis& basis, int k0) {
  if (k0 < 0 || k0 >= basis.dimension()) {
    throw std::out_of_range("directly_coupled: basis index out of range");
  }
  const std::uint32_t ref = basis.state(k0);
  std::vector<int> coupled;
  for (int m = 0; m < basis.dimension(); ++m) {
    if (m == k0) continue;
    const int moved = std::popcount(ref ^ basis.state(m)) / 2;
    if (moved <= 2) coupled.push_back(m);
  }
  return coupled;
}

std::vector<int> directly_coupled(const SpinBasis& basis, int k0) {
  if (k0 < 0 || k0 >= basis.dimension()) {
    throw std::out_of_range("directly_coupled: basis index out of range");
  }
  std::vector<int> coupled;
  coupled.reserve(basis.qubit_count());
  for (int k = 0; k < basis.qubit_count(); ++k) coupled.push_back(k0 ^ (1 << k));
  std::sort(coupled.begin(), coupled.end());
  return coupled;
}

}  // namespace fockdyn
