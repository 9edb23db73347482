// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fockdyn/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fockdyn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

/// Continued fraction 1 / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))) evaluated
/// with the modified Lentz scheme; equals sqrt(pi) * exp(z^2) * erfc(z).
double erfc_continued_fraction(double z) {
  const double tiny = 1e-300;
  double f = tiny, c = f, d = 0.0;
  for (int j = 1; j < 300; ++j) {
    const double a = j == 1 ? 1.0 : 0.5 * static_cast<double>(j - 1);
    d = z + a * d;
    if (d == 0.0) d = tiny;
    c = z + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

/// Alternating Maclaurin series, adequate for |z| <= 2 where cancellation is
/// mild.
double erf_series(double z) {
  const double z2 = z * z;
  double term = z;
  double sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -z2 / static_cast<double>(n);
    const double contribution = term / static_cast<double>(2 * n + 1);
    sum += contribution;
    if (std::abs(contribution) < 1e-18 * std::abs(sum)) break;
  }
  return 2.0 / kSqrtPi * sum;
}

}  // namespace

double error_function(double z) {
  if (std::isnan(z)) return z;
  const double a = std::abs(z);
  double value;
  if (a <= 2.0) {
    value = erf_series(a);
  } else {
    value = 1.0 - std::exp(-a * a) * erfc_continued_fraction(a) / kSqrtPi;
  }
  return z < 0.0 ? -value : value;
}

double scaled_complementary_erf(double z) {
  if (z < 0.0) throw std::invalid_argument("scaled_complementary_erf: z must be >= 0");
  if (z < 2.0) return std::exp(z * z) * (1.0 - erf_series(z));
  return erfc_continued_fraction(z) / kSqrtPi;
}

SfRelations sf_relations(double gamma, double sigma) {
  if (gamma <= 0.0 || sigma <= 0.0) {
    throw std::invalid_argument("sf_relations: Gamma and sigma must be > 0");
  }
  const double x = gamma / (sigma * std::sqrt(8.0));
  const double erfcx = scaled_complementary_erf(x);
  const double normalization = gamma / (2.0 * kPi * erfcx);
  const double delta_e_squared =
      normalization * (sigma * std::sqrt(2.0 * kPi) - 0.5 * kPi * gamma * erfcx);
  return {normalization, delta_e_squared};
}

double sf_profile(double energy, double centroid, const SfFitParams& params) {
  const double d = energy - centroid;
  return params.normalization * std::exp(-d * d / (2.0 * params.sigma * params.sigma)) /
         (d * d + 0.25 * params.gamma * params.gamma);
}

namespace {

/// Solves sf_relations(gamma, sigma).delta_e_squared == target for sigma on
/// the spec bracket; returns NaN when the bracket does not straddle a root.
double solve_sigma(double gamma, double target, double delta_e) {
  double lo = delta_e / 10.0;
  double hi = delta_e * 10.0;
  auto f = [&](double sigma) { return sf_relations(gamma, sigma).delta_e_squared - target; };
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) return std::numeric_limits<double>::quiet_NaN();
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm <= 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
    if ((hi - lo) < 1e-10 * hi) break;
  }
  return 0.5 * (lo + hi);
}

double fit_residual(const StrengthFunctionProfile& profile, const SfFitParams& params) {
  double residual = 0.0;
  for (std::size_t b = 0; b + 1 < profile.bin_edges.size(); ++b) {
    const double center = 0.5 * (profile.bin_edges[b] + profile.bin_edges[b + 1]);
    const double diff = sf_profile(center, profile.centroid, params) - profile.heights[b];
    residual += diff * diff;
  }
  return residual;
}

}  // namespace

SfFitResult fit_strength_function(const StrengthFunctionProfile& profile) {
  if (profile.variance <= 0.0) {
    throw std::invalid_argument("fit_strength_function: profile has no measured variance");
  }
  const double delta_e = std::sqrt(profile.variance);

  auto evaluate = [&](double gamma) -> std::pair<double, SfFitParams> {
    const double sigma = solve_sigma(gamma, profile.variance, delta_e);
    if (std::isnan(sigma)) {
      return {std::numeric_limits<double>::infinity(), SfFitParams{}};
    }
    const SfRelations rel = sf_relations(gamma, sigma);
    SfFitParams params{rel.normalization, gamma, sigma, rel.delta_e_squared};
    return {fit_residual(profile, params), params};
  };

  // Coarse logarithmic scan, then golden-section refinement around the best
  // candidate.
  const int scan_points = 160;
  const double g_lo = delta_e / 30.0;
  const double g_hi = delta_e * 30.0;
  double best_gamma = std::numeric_limits<double>::quiet_NaN();
  double best_residual = std::numeric_limits<double>::infinity();
  SfFitParams best_params;
  int best_index = -1;
  for (int i = 0; i < scan_points; ++i) {
    const double gamma =
        g_lo * std::pow(g_hi / g_lo, static_cast<double>(i) / (scan_points - 1));
    auto [residual, params] = evaluate(gamma);
    if (residual < best_residual) {
      best_residual = residual;
      best_gamma = gamma;
      best_params = params;
      best_index = i;
    }
  }
  if (best_index < 0) {
    throw std::runtime_error(
        "fit_strength_function: no sigma root in bracket for any Gamma candidate");
  }

  const double step = std::pow(g_hi / g_lo, 1.0 / (scan_points - 1));
  double a = best_gamma / step;
  double b = best_gamma * step;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  auto [r1, p1] = evaluate(x1);
  auto [r2, p2] = evaluate(x2);
  for (int iter = 0; iter < 80 && (b - a) > 1e-9 * b; ++iter) {
    if (r1 <= r2) {
      b = x2;
      x2 = x1;
      r2 = r1;
      p2 = p1;
      x1 = b - ratio * (b - a);
      std::tie(r1, p1) = evaluate(x1);
    } else {
      a = x1;
      x1 = x2;
      r1 = r2;
      p1 = p2;
      x2 = a + ratio * (b - a);
      std::tie(r2, p2) = evaluate(x2);
    }
  }
  if (r1 < best_residual) {
    best_residual = r1;
    best_params = p1;
  }
  if (r2 < best_residual) {
    best_residual = r2;
    best_params = p2;
  }
  return {best_params, best_residual};
}

double gamma_golden_rule(const SymmetricHamiltonian& h, int k0) {
  const auto row = h.row_couplings(k0);
  const int n_f = static_cast<int>(row.size());
  if (n_f < 2) throw std::invalid_argument("gamma_golden_rule: need at least two coupled states");

  double mean_sq = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [m, v] : row) {
    mean_sq += v * v;
    const double e = h.diagonal()[static_cast<std::size_t>(m)];
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  mean_sq /= static_cast<double>(n_f);
  const double span = hi - lo;
  if (span <= 0.0) {
    throw std::invalid_argument("gamma_golden_rule: coupled states span zero energy");
  }
  return 2.0 * kPi * mean_sq * static_cast<double>(n_f - 1) / span;
}

double w0_predicted(DecayRegime regime, const DecayParams& params, double t) {
  if (t < 0.0) throw std::invalid_argument("w0_predicted: t must be >= 0");
  switch (regime) {
    case DecayRegime::PerturbativeQuadratic:
      return std::max(0.0, 1.0 - params.delta_e_squared * t * t);
    case DecayRegime::LorentzianExponential:
      return std::exp(params.gamma0 * params.gamma0 / (kPi * params.delta_e_squared) -
                      params.gamma0 * t);
    case DecayRegime::Gaussian:
      return std::exp(-params.delta_e_squared * t * t);
    case DecayRegime::LongTimeExponential: {
      const double g2 = params.gamma * params.gamma;
      return kPi * kPi * g2 / (8.0 * params.delta_e_squared) *
             std::exp(0.25 * g2 / params.delta_e_squared - params.gamma * t);
    }
  }
  throw std::logic_error("w0_predicted: unknown regime");
}

namespace {

double poisson_weight(double x, int n) {
  if (n < 0) throw std::invalid_argument("cascade shell index must be >= 0");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(n) * std::log(x) - x -
                  std::lgamma(static_cast<double>(n) + 1.0));
}

}  // namespace

double cascade_wn(double gamma, double t, int n) {
  if (t < 0.0 || gamma < 0.0) throw std::invalid_argument("cascade_wn: need gamma, t >= 0");
  return poisson_weight(gamma * t, n);
}

double cascade_wn_from_w0(double w0, int n) {
  if (w0 <= 0.0 || w0 > 1.0) throw std::invalid_argument("cascade_wn_from_w0: W0 must be in (0, 1]");
  return poisson_weight(-std::log(w0), n);
}

double entropy_predicted(double width, double t, double coupled_count, EntropyLaw law) {
  if (t < 0.0) throw std::invalid_argument("entropy_predicted: t must be >= 0");
  if (coupled_count < 1.0) throw std::invalid_argument("entropy_predicted: N_f must be >= 1");
  switch (law) {
    case EntropyLaw::Linear:
      return width * t * std::log(coupled_count);
    case EntropyLaw::SmallTime:
      return width * width * t * t;
    case EntropyLaw::ExactCascade: {
      const double x = width * t;
      if (x == 0.0) return 0.0;
      // S = x ln N_f + x - sum_n P_n(x) ln(x^n / n!)
      double cascade_term = 0.0;
      double weight = std::exp(-x);
      double log_term = 0.0;  // ln(x^n / n!)
      const double log_x = std::log(x);
      for (int n = 0; n < 100000; ++n) {
        if (n > 0) {
          weight *= x / static_cast<double>(n);
          log_term += log_x - std::log(static_cast<double>(n));
        }
        const double term = weight * log_term;
        cascade_term += term;
        if (static_cast<double>(n) > x && std::abs(term) < 1e-16) break;
      }
      return x * std::log(coupled_count) + x - cascade_term;
    }
  }
  throw std::logic_error("entropy_predicted: unknown law");
}

double entropy_phenomenological(double w0, double npc_max) {
  if (npc_max < 1.0) throw std::invalid_argument("entropy_phenomenological: Npc must be >= 1");
  if (w0 > 1.0 && w0 < 1.0 + 1e-12) w0 = 1.0;
  if (w0 <= 0.0 || w0 > 1.0) {
    throw std::invalid_argument("entropy_phenomenological: W0 must be in (0, 1]");
  }
  if (w0 == 1.0) return 0.0;
  return -w0 * std::log(w0) - (1.0 - w0) * std::log((1.0 - w0) / npc_max);
}

std::vector<double> entropy_phenomenological(std::span<const double> w0_trace, double npc_max) {
  std::vector<double> entropy;
  entropy.reserve(w0_trace.size());
  for (double w0 : w0_trace) entropy.push_back(entropy_phenomenological(w0, npc_max));
  return entropy;
}

PerturbativeFidelityTerms perturbative_fidelity_terms(const SymmetricHamiltonian& h,
                                                      const SymmetricHamiltonian& sigma, int k0) {
  if (h.dimension() != sigma.dimension()) {
    throw std::invalid_argument("perturbative_fidelity: dimension mismatch");
  }
  PerturbativeFidelityTerms terms;
  std::vector<double> h_row(static_cast<std::size_t>(h.dimension()), 0.0);
  std::vector<double> s_row(static_cast<std::size_t>(h.dimension()), 0.0);
  h_row[static_cast<std::size_t>(k0)] = h.diagonal()[static_cast<std::size_t>(k0)];
  s_row[static_cast<std::size_t>(k0)] = sigma.diagonal()[static_cast<std::size_t>(k0)];
  for (const auto& [m, v] : h.row_couplings(k0)) h_row[static_cast<std::size_t>(m)] = v;
  for (const auto& [m, v] : sigma.row_couplings(k0)) {
    s_row[static_cast<std::size_t>(m)] = v;
    if (m != k0 && v != 0.0) ++terms.coupled_count;
    if (m != k0) terms.delta_e_squared += v * v;
  }
  // (H Sigma - Sigma H)_{k0,k0}: summed term by term; exactly zero whenever
  // both matrices are real symmetric.
  double commutator = 0.0;
  for (int m = 0; m < h.dimension(); ++m) {
    commutator += h_row[static_cast<std::size_t>(m)] * s_row[static_cast<std::size_t>(m)] -
                  s_row[static_cast<std::size_t>(m)] * h_row[static_cast<std::size_t>(m)];
  }
  terms.commutator = commutator;
  return terms;
}

double perturbative_fidelity(const SymmetricHamiltonian& h, const SymmetricHamiltonian& sigma,
                             int k0, double t) {
  const auto terms = perturbative_fidelity_terms(h, sigma, k0);
  return 1.0 - (terms.delta_e_squared + terms.commutator) * t * t;
}

}  // namespace fockdyn
