// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace fockdyn {

/// How basis states are connected by the interaction operator.
enum class CouplingKind {
  TwoBody,     ///< fermions: states differing in at most two orbitals each way
  SingleFlip,  ///< spin chain: states differing in exactly one binary digit
};

/// Many-body basis of Np fermions on M single-particle orbitals.
///
/// States are occupation bitmasks (bit s set <=> orbital s occupied), stored
/// in ascending integer order so that index_of(state(i)) == i. Immutable
/// after construction and safe to share across threads.
class FermionBasis {
 public:
  /// Enumerates all C(M, Np) occupation masks. Requires 0 <= Np <= M <= 24
  /// and a resulting dimension within `dimension_cap`.
  static FermionBasis enumerate(int orbital_count, int particle_count,
                                std::size_t dimension_cap = 65536);

  int orbital_count() const noexcept { return orbital_count_; }
  int particle_count() const noexcept { return particle_count_; }
  int dimension() const noexcept { return static_cast<int>(states_.size()); }

  std::uint32_t state(int index) const { return states_[static_cast<std::size_t>(index)]; }
  const std::vector<std::uint32_t>& states() const noexcept { return states_; }

  /// Index of an occupation mask; -1 if the mask is not in the basis.
  int index_of(std::uint32_t mask) const noexcept;

 private:
  FermionBasis() = default;
  int orbital_count_ = 0;
  int particle_count_ = 0;
  std::vector<std::uint32_t> states_;
};

/// Computational basis of an L-qubit chain. State index s has binary digits
/// i_{L-1}...i_0 with digit k = 1 <=> qubit k excited; the all-down ground
/// state is index 0.
class SpinBasis {
 public:
  /// Requires 1 <= L <= 16.
  explicit SpinBasis(int qubit_count);

  int qubit_count() const noexcept { return qubit_count_; }
  int dimension() const noexcept { return 1 << qubit_count_; }

  /// Digit i_k of state index s.
  static int digit(int s, int k) noexcept { return (s >> k) & 1; }

 private:
  int qubit_count_;
};

/// Basis indices directly coupled to k0 by the two-body interaction: every
/// m != k0 whose occupation differs from k0's in at most two orbitals each
/// way. Returned in ascending index order.
std::vector<int> directly_coupled(const FermionBasis& basis, int k0);

/// Basis indices reachable from k0 by a single spin flip (exactly L of them),
/// in ascending index order.
std::vector<int> directly_coupled(const SpinBasis& basis, int k0);

/// Binomial coefficient in 64-bit arithmetic (exact for the sizes used here).
std::uint64_t binomial(int n, int k) noexcept;

}  // namespace fockdyn
