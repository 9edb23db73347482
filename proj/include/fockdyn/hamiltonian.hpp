// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "fockdyn/basis.hpp"

namespace fockdyn {

/// Where a matrix entry's randomness came from.
enum class EntryTag : std::uint8_t { Deterministic, Disorder, Perturbation };

struct OffDiagEntry {
  int i;  ///< row, i < j
  int j;  ///< column
  double value;
  EntryTag tag;
};

/// Real symmetric Hamiltonian split into a diagonal part and a sparse
/// off-diagonal part. Each unordered pair (i, j) is stored once (i < j);
/// the sparsity pattern never exceeds the model's directly-coupled pairs.
/// Immutable in normal use; built matrices are safe to share across threads.
class SymmetricHamiltonian {
 public:
  SymmetricHamiltonian() = default;
  SymmetricHamiltonian(int dimension, CouplingKind kind)
      : dimension_(dimension), kind_(kind), diagonal_(dimension, 0.0) {}

  int dimension() const noexcept { return dimension_; }
  CouplingKind coupling_kind() const noexcept { return kind_; }

  const std::vector<double>& diagonal() const noexcept { return diagonal_; }
  std::vector<double>& diagonal() noexcept { return diagonal_; }

  /// Off-diagonal entries sorted by (i, j), i < j.
  const std::vector<OffDiagEntry>& offdiag() const noexcept { return offdiag_; }

  /// Appends an entry; callers must keep (i, j) ascending and i < j.
  void push_entry(int i, int j, double value, EntryTag tag) {
    offdiag_.push_back({i, j, value, tag});
  }

  /// Sorts entries by (i, j); merges nothing (duplicate pairs are a bug).
  void sort_entries();

  /// All off-diagonal couplings of row k as (other index, value) pairs.
  std::vector<std::pair<int, double>> row_couplings(int k) const;

  Eigen::MatrixXd dense() const;

 private:
  int dimension_ = 0;
  CouplingKind kind_ = CouplingKind::TwoBody;
  std::vector<double> diagonal_;
  std::vector<OffDiagEntry> offdiag_;
};

/// Sum of two Hamiltonians on the same basis; entries at the same (i, j) are
/// merged (left operand's tag wins).
SymmetricHamiltonian add(const SymmetricHamiltonian& a, const SymmetricHamiltonian& b);

struct TbriParams {
  int orbital_count = 0;        ///< M
  int particle_count = 0;       ///< Np
  double level_spacing = 1.0;   ///< d0, mean single-particle spacing
  double coupling_scale = 0.0;  ///< V0, std of the two-body amplitudes
  std::uint64_t seed = 0;
};

struct SpinChainParams {
  int qubit_count = 8;       ///< L
  double gradient = 1.0;     ///< a, per-site Larmor increment
  double omega0 = 100.0;     ///< base Larmor frequency
  double nu = 100.0;         ///< drive frequency; detunings are xi_k = omega0 + a k - nu
  double ising_j = 0.0;      ///< J, nearest-neighbor coupling
  double rabi = 100.0;       ///< Omega0, mean Rabi frequency
  double rabi_disorder = 0.0;     ///< sigma_p, std of the per-element Rabi noise
  double perturbation_std = 0.0;  ///< epsilon, std of the fidelity perturbation
  std::uint64_t seed = 0;
};

/// Equally spaced single-particle spectrum eps_s = d0 * s, s = 0..M-1.
std::vector<double> single_particle_energies(int orbital_count, double level_spacing);

/// One Gaussian amplitude per normal-ordered two-body operator
/// a+_{s1} a+_{s2} a_{s3} a_{s4} with s1 < s2, s3 < s4, identified by its
/// (creation pair, annihilation pair) index. Hermiticity makes the quadruple
/// and its conjugate (pairs swapped) share a single draw, so the table is a
/// symmetric pair-by-pair matrix.
class TwoBodyAmplitudes {
 public:
  static TwoBodyAmplitudes draw(int orbital_count, double scale, std::uint64_t seed);

  int orbital_count() const noexcept { return orbital_count_; }
  int pair_count() const noexcept { return pair_count_; }

  /// Index of the ordered orbital pair (a, b), a < b.
  int pair_index(int a, int b) const noexcept {
    return a * orbital_count_ - a * (a + 1) / 2 + (b - a - 1);
  }

  /// Amplitude shared by the quadruple (p | q) and its Hermitian partner (q | p).
  double value(int pair_p, int pair_q) const noexcept {
    const int i = pair_p <= pair_q ? pair_p : pair_q;
    const int j = pair_p <= pair_q ? pair_q : pair_p;
    return values_[static_cast<std::size_t>(i) * pair_count_ -
                   static_cast<std::size_t>(i) * (i + 1) / 2 + j];
  }

 private:
  int orbital_count_ = 0;
  int pair_count_ = 0;
  std::vector<double> values_;  // packed upper triangle, row-major
};

/// Assembles the two-body random interaction Hamiltonian: Slater diagonal
/// plus the interaction applied ket by ket in occupation-ordered normal form.
SymmetricHamiltonian build_tbri(const FermionBasis& basis, const TbriParams& params);

/// Same, with a caller-supplied amplitude table (used to cross-check the
/// assembly against an independent construction).
SymmetricHamiltonian build_tbri(const FermionBasis& basis, const TbriParams& params,
                                const TwoBodyAmplitudes& amplitudes);

/// Diagonal H0 (detuning + Ising terms) and off-diagonal V (Rabi single-flip
/// terms, with optional per-element disorder) of the single-pulse chain.
std::pair<SymmetricHamiltonian, SymmetricHamiltonian> build_spin_chain(
    const SpinBasis& basis, const SpinChainParams& params);

/// Random perturbation with exactly V's sparsity pattern; every unordered
/// pair gets an independent Gaussian(0, epsilon^2) draw on a fresh stream.
SymmetricHamiltonian add_perturbation(const SymmetricHamiltonian& v, double epsilon,
                                      std::uint64_t seed);

/// Strength-function variance from the matrix itself: sum of squared
/// couplings out of row k0.
double delta_e_squared_direct(const SymmetricHamiltonian& h, int k0);

/// Closed-form ensemble width of the TBRI strength function,
/// V0^2 Np (Np-1) (M-Np) (M-Np+3) / 4.
double delta_e_squared_tbri(double coupling_scale, int particle_count, int orbital_count);

}  // namespace fockdyn
