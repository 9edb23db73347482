// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "fockdyn/hamiltonian.hpp"
#include "fockdyn/spectral.hpp"

namespace fockdyn {

/// Error function, absolute accuracy <= 1e-12 on the real line. Uses the
/// alternating Maclaurin series for |z| <= 2 and a Lentz-evaluated continued
/// fraction for the complementary function beyond.
double error_function(double z);

/// Scaled complementary error function exp(z^2) erfc(z) for z >= 0; safe
/// where exp(z^2) alone would overflow.
double scaled_complementary_erf(double z);

/// Gaussian-cut Lorentzian parameters of the strength-function profile
/// B exp(-(E-E0)^2 / 2 sigma^2) / ((E-E0)^2 + Gamma^2/4).
struct SfFitParams {
  double normalization = 0.0;    ///< B
  double gamma = 0.0;            ///< Lorentzian-like width
  double sigma = 0.0;            ///< Gaussian cutoff width
  double delta_e_squared = 0.0;  ///< second moment consistent with the above
};

struct SfRelations {
  double normalization;    ///< B from the unit-integral condition
  double delta_e_squared;  ///< second moment implied by (Gamma, sigma)
};

/// Normalization and second moment of the profile as functions of
/// (Gamma, sigma); internally uses the scaled complementary error function so
/// Gamma >> sigma cannot overflow.
SfRelations sf_relations(double gamma, double sigma);

/// The profile itself, for overlays and fit residuals.
double sf_profile(double energy, double centroid, const SfFitParams& params);

struct SfFitResult {
  SfFitParams params;
  double residual;  ///< summed squared height misfit at the best parameters
};

/// One-parameter least-squares fit of the profile to a measured histogram:
/// Gamma is scanned, sigma is solved from the measured variance by bisection
/// on [sqrt(variance)/10, 10 sqrt(variance)], B follows from the unit
/// integral, and the centroid is pinned to the measured first moment.
/// Throws if no Gamma candidate admits a sigma root in the bracket.
SfFitResult fit_strength_function(const StrengthFunctionProfile& profile);

/// Fermi-golden-rule half-width 2 pi <V^2> rho_f of basis state k0, with the
/// coupled-state density estimated as (N_f - 1) / (diagonal energy span of
/// the coupled states).
double gamma_golden_rule(const SymmetricHamiltonian& h, int k0);

enum class DecayRegime {
  PerturbativeQuadratic,  ///< 1 - DeltaE^2 t^2, clamped at zero
  LorentzianExponential,  ///< exp(Gamma0^2 / (pi DeltaE^2) - Gamma0 t)
  Gaussian,               ///< exp(-DeltaE^2 t^2)
  LongTimeExponential,    ///< (pi^2 G^2 / 8 DeltaE^2) exp(G^2/(4 DeltaE^2) - G t)
};

struct DecayParams {
  double delta_e_squared = 0.0;  ///< strength-function variance
  double gamma0 = 0.0;           ///< golden-rule width (Lorentzian regime)
  double gamma = 0.0;            ///< effective width (long-time regime)
};

double w0_predicted(DecayRegime regime, const DecayParams& params, double t);

/// Poisson cascade occupation of shell n at time t: (G t)^n exp(-G t) / n!.
double cascade_wn(double gamma, double t, int n);

/// Same with the small-time substitution x = -ln W0(t) in place of Gamma t.
double cascade_wn_from_w0(double w0, int n);

enum class EntropyLaw {
  ExactCascade,  ///< full cascade sum, truncated at machine precision
  Linear,        ///< Gamma t ln N_f
  SmallTime,     ///< (width t)^2; pass DeltaE as the width
};

/// Predicted packet entropy under the cascade flow. For SmallTime the width
/// argument is read as DeltaE, giving the leading DeltaE^2 t^2 term.
double entropy_predicted(double width, double t, double coupled_count, EntropyLaw law);

/// Two-level phenomenological entropy driven by the measured return
/// probability: S = -W0 ln W0 - (1 - W0) ln((1 - W0) / Npc).
double entropy_phenomenological(double w0, double npc_max);
std::vector<double> entropy_phenomenological(std::span<const double> w0_trace, double npc_max);

/// Ingredients of the short-time fidelity expansion
/// F = 1 - (deltaE^2 + Re<k0|[H, Sigma]|k0>) t^2.
struct PerturbativeFidelityTerms {
  double delta_e_squared = 0.0;  ///< sum of squared Sigma couplings out of k0
  double commutator = 0.0;       ///< <k0|(H Sigma - Sigma H)|k0>, zero for real symmetric pairs
  int coupled_count = 0;         ///< N_eps, non-zero Sigma elements in row k0
};

PerturbativeFidelityTerms perturbative_fidelity_terms(const SymmetricHamiltonian& h,
                                                      const SymmetricHamiltonian& sigma, int k0);

double perturbative_fidelity(const SymmetricHamiltonian& h, const SymmetricHamiltonian& sigma,
                             int k0, double t);

}  // namespace fockdyn
