// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fockdyn/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "fockdyn/rng.hpp"

namespace fockdyn {

namespace {

/// Parity of the number of occupied orbitals below s; the fermionic sign of
/// moving a_s / a+_s through the occupation-ordered product.
inline int parity_below(std::uint32_t mask, int s) noexcept {
  return std::popcount(mask & ((1u << s) - 1u)) & 1;
}

}  // namespace

void SymmetricHamiltonian::sort_entries() {
  std::sort(offdiag_.begin(), offdiag_.end(), [](const OffDiagEntry& a, const OffDiagEntry& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
}

std::vector<std::pair<int, double>> SymmetricHamiltonian::row_couplings(int k) const {
  std::vector<std::pair<int, double>> row;
  for (const auto& e : offdiag_) {
    if (e.i == k) row.emplace_back(e.j, e.value);
    else if (e.j == k) row.emplace_back(e.i, e.value);
  }
  std::sort(row.begin(), row.end());
  return row;
}

Eigen::MatrixXd SymmetricHamiltonian::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dimension_, dimension_);
  for (int i = 0; i < dimension_; ++i) m(i, i) = diagonal_[static_cast<std::size_t>(i)];
  for (const auto& e : offdiag_) {
    m(e.i, e.j) = e.value;
    m(e.j, e.i) = e.value;
  }
  return m;
}

SymmetricHamiltonian add(const SymmetricHamiltonian& a, const SymmetricHamiltonian& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("hamiltonian add: dimension mismatch");
  }
  SymmetricHamiltonian sum(a.dimension(), a.coupling_kind());
  for (int i = 0; i < a.dimension(); ++i) {
    sum.diagonal()[static_cast<std::size_t>(i)] =
        a.diagonal()[static_cast<std::size_t>(i)] + b.diagonal()[static_cast<std::size_t>(i)];
  }
  const auto& ea = a.offdiag();
  const auto& eb = b.offdiag();
  std::size_t ia = 0, ib = 0;
  auto key = [](const OffDiagEntry& e) { return std::pair<int, int>(e.i, e.j); };
  while (ia < ea.size() || ib < eb.size()) {
    if (ib == eb.size() || (ia < ea.size() && key(ea[ia]) < key(eb[ib]))) {
      sum.push_entry(ea[ia].i, ea[ia].j, ea[ia].value, ea[ia].tag);
      ++ia;
    } else if (ia == ea.size() || key(eb[ib]) < key(ea[ia])) {
      sum.push_entry(eb[ib].i, eb[ib].j, eb[ib].value, eb[ib].tag);
      ++ib;
    } else {
      sum.push_entry(ea[ia].i, ea[ia].j, ea[ia].value + eb[ib].value, ea[ia].tag);
      ++ia;
      ++ib;
    }
  }
  return sum;
}

std::vector<double> single_particle_energies(int orbital_count, double level_spacing) {
  if (orbital_count < 1) throw std::invalid_argument("single_particle_energies: M must be >= 1");
  if (level_spacing <= 0.0) throw std::invalid_argument("single_particle_energies: d0 must be > 0");
  std::vector<double> energies(static_cast<std::size_t>(orbital_count));
  for (int s = 0; s < orbital_count; ++s) {
    energies[static_cast<std::size_t>(s)] = level_spacing * s;
  }
  return energies;
}

TwoBodyAmplitudes TwoBodyAmplitudes::draw(int orbital_count, double scale, std::uint64_t seed) {
  if (scale < 0.0) throw std::invalid_argument("two-body amplitudes: V0 must be >= 0");
  TwoBodyAmplitudes amps;
  amps.orbital_count_ = orbital_count;
  amps.pair_count_ = orbital_count * (orbital_count - 1) / 2;
  const std::size_t packed =
      static_cast<std::size_t>(amps.pair_count_) * (amps.pair_count_ + 1) / 2;
  amps.values_.resize(packed);
  RngStream rng(seed, 0);
  for (auto& v : amps.values_) v = rng.next_gaussian(0.0, scale);
  return amps;
}

SymmetricHamiltonian build_tbri(const FermionBasis& basis, const TbriParams& params) {
  return build_tbri(basis, params,
                    TwoBodyAmplitudes::draw(params.orbital_count, params.coupling_scale,
                                            params.seed));
}

SymmetricHamiltonian build_tbri(const FermionBasis& basis, const TbriParams& params,
                                const TwoBodyAmplitudes& amplitudes) {
  if (basis.orbital_count() != params.orbital_count ||
      basis.particle_count() != params.particle_count) {
    throw std::invalid_argument("build_tbri: basis and params disagree");
  }
  if (amplitudes.orbital_count() != params.orbital_count) {
    throw std::invalid_argument("build_tbri: amplitude table has wrong orbital count");
  }

  const int n = basis.dimension();
  const int m_orb = params.orbital_count;
  const auto eps = single_particle_energies(m_orb, params.level_spacing);
  SymmetricHamiltonian h(n, CouplingKind::TwoBody);

  std::vector<int> occupied, creation_avail;
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  std::vector<int> touched;

  for (int k = 0; k < n; ++k) {
    const std::uint32_t ket = basis.state(k);

    double diag = 0.0;
    occupied.clear();
    for (int s = 0; s < m_orb; ++s) {
      if (ket & (1u << s)) {
        diag += eps[static_cast<std::size_t>(s)];
        occupied.push_back(s);
      }
    }

    touched.clear();
    // Apply a+_a a+_b a_c a_d (a<b, c<d) to |k>, right to left, tracking the
    // fermionic sign from the occupation-ordered normal form.
    for (std::size_t ci = 0; ci < occupied.size(); ++ci) {
      for (std::size_t di = ci + 1; di < occupied.size(); ++di) {
        const int c = occupied[ci];
        const int d = occupied[di];
        int sign = parity_below(ket, d);
        const std::uint32_t after_d = ket & ~(1u << d);
        sign ^= parity_below(after_d, c);
        const std::uint32_t after_cd = after_d & ~(1u << c);
        const int ann_pair = amplitudes.pair_index(c, d);

        creation_avail.clear();
        for (int s = 0; s < m_orb; ++s) {
          if (!(after_cd & (1u << s))) creation_avail.push_back(s);
        }
        for (std::size_t ai = 0; ai < creation_avail.size(); ++ai) {
          for (std::size_t bi = ai + 1; bi < creation_avail.size(); ++bi) {
            const int a = creation_avail[ai];
            const int b = creation_avail[bi];
            int s2 = sign ^ parity_below(after_cd, b);
            const std::uint32_t after_b = after_cd | (1u << b);
            s2 ^= parity_below(after_b, a);
            const std::uint32_t result = after_b | (1u << a);

            const double v = amplitudes.value(amplitudes.pair_index(a, b), ann_pair);
            const double signed_v = s2 ? -v : v;
            if (result == ket) {
              diag += signed_v;
            } else {
              const int m = basis.index_of(result);
              if (m > k) {
                if (row[static_cast<std::size_t>(m)] == 0.0 &&
                    std::find(touched.begin(), touched.end(), m) == touched.end()) {
                  touched.push_back(m);
                }
                row[static_cast<std::size_t>(m)] += signed_v;
              }
            }
          }
        }
      }
    }

    h.diagonal()[static_cast<std::size_t>(k)] = diag;
    std::sort(touched.begin(), touched.end());
    for (int m : touched) {
      h.push_entry(k, m, row[static_cast<std::size_t>(m)], EntryTag::Disorder);
      row[static_cast<std::size_t>(m)] = 0.0;
    }
  }
  return h;
}

std::pair<SymmetricHamiltonian, SymmetricHamiltonian> build_spin_chain(
    const SpinBasis& basis, const SpinChainParams& params) {
  if (params.rabi_disorder < 0.0 || params.perturbation_std < 0.0) {
    throw std::invalid_argument("build_spin_chain: noise widths must be >= 0");
  }
  const int l = basis.qubit_count();
  const int n = basis.dimension();

  SymmetricHamiltonian h0(n, CouplingKind::SingleFlip);
  for (int s = 0; s < n; ++s) {
    double energy = 0.0;
    for (int k = 0; k < l; ++k) {
      const double mk = SpinBasis::digit(s, k) ? 0.5 : -0.5;
      const double xi = params.omega0 + params.gradient * k - params.nu;
      energy -= xi * mk;
      if (k + 1 < l) {
        const double mk1 = SpinBasis::digit(s, k + 1) ? 0.5 : -0.5;
        energy -= 2.0 * params.ising_j * mk * mk1;
      }
    }
    h0.diagonal()[static_cast<std::size_t>(s)] = energy;
  }

  SymmetricHamiltonian v(n, CouplingKind::SingleFlip);
  RngStream rng(params.seed, 0);
  const EntryTag tag = params.rabi_disorder > 0.0 ? EntryTag::Disorder : EntryTag::Deterministic;
  for (int s = 0; s < n; ++s) {
    for (int k = 0; k < l; ++k) {
      if (SpinBasis::digit(s, k)) continue;  // partner s|1<<k is above s
      const double noise =
          params.rabi_disorder > 0.0 ? rng.next_gaussian(0.0, params.rabi_disorder) : 0.0;
      v.push_entry(s, s | (1 << k), -0.5 * (params.rabi + noise), tag);
    }
  }
  v.sort_entries();
  return {std::move(h0), std::move(v)};
}

SymmetricHamiltonian add_perturbation(const SymmetricHamiltonian& v, double epsilon,
                                      std::uint64_t seed) {
  if (epsilon < 0.0) throw std::invalid_argument("add_perturbation: epsilon must be >= 0");
  SymmetricHamiltonian sigma(v.dimension(), v.coupling_kind());
  RngStream rng(seed, 0);
  for (const auto& e : v.offdiag()) {
    const double value = epsilon > 0.0 ? rng.next_gaussian(0.0, epsilon) : 0.0;
    sigma.push_entry(e.i, e.j, value, EntryTag::Perturbation);
  }
  return sigma;
}

double delta_e_squared_direct(const SymmetricHamiltonian& h, int k0) {
  if (k0 < 0 || k0 >= h.dimension()) {
    throw std::out_of_range("delta_e_squared_direct: index out of range");
  }
  double sum = 0.0;
  for (const auto& e : h.offdiag()) {
    if (e.i == k0 || e.j == k0) sum += e.value * e.value;
  }
  return sum;
}

double delta_e_squared_tbri(double coupling_scale, int particle_count, int orbital_count) {
  if (particle_count < 0 || particle_count > orbital_count) {
    throw std::invalid_argument("delta_e_squared_tbri: need 0 <= Np <= M");
  }
  const double np = particle_count;
  const double holes = orbital_count - particle_count;
  return 0.25 * coupling_scale * coupling_scale * np * (np - 1.0) * holes * (holes + 3.0);
}

}  // namespace fockdyn
