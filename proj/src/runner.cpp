// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fockdyn/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "fockdyn/observables.hpp"
#include "fockdyn/rng.hpp"
#include "fockdyn/spectral.hpp"
#include "fockdyn/theory.hpp"

namespace fockdyn {

namespace {

std::string value_token(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string token(buf, ptr);
  std::replace(token.begin(), token.end(), '.', 'p');
  std::replace(token.begin(), token.end(), '-', 'm');
  return token;
}

std::string format_scalar(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 15);
  return std::string(buf, ptr);
}

struct SeriesSpec {
  int index = 0;
  std::string label;  // empty, or e.g. "_J100_sp20"
  SpinChainParams spin;
};

struct RealizationData {
  std::vector<double> entropy;
  std::vector<double> entropy_norm;
  std::vector<double> w0;
  std::vector<std::vector<double>> fidelity;  // per epsilon
  std::vector<double> sf_heights;
  double sf_centroid = 0.0;
  double sf_variance = 0.0;
  std::vector<double> spacing_heights;
  double gap_ratio = 0.0;
  double degenerate_fraction = 0.0;
  double delta_e2 = 0.0;
  double gamma0 = 0.0;
};

std::vector<double> slater_diagonal(const FermionBasis& basis, double level_spacing) {
  const auto eps = single_particle_energies(basis.orbital_count(), level_spacing);
  std::vector<double> diag(static_cast<std::size_t>(basis.dimension()), 0.0);
  for (int k = 0; k < basis.dimension(); ++k) {
    const std::uint32_t mask = basis.state(k);
    for (int s = 0; s < basis.orbital_count(); ++s) {
      if (mask & (1u << s)) diag[static_cast<std::size_t>(k)] += eps[static_cast<std::size_t>(s)];
    }
  }
  return diag;
}

/// Common strength-function bin edges for all realizations of one series:
/// an analytic width estimate keeps the grid independent of the draws.
std::vector<double> sf_edges_for(const ExperimentConfig& config, const SeriesSpec& series,
                                 double centroid) {
  double width;
  if (config.model == ModelKind::SpinChain) {
    const double l = series.spin.qubit_count;
    width = std::sqrt(l *
                      (series.spin.rabi * series.spin.rabi +
                       series.spin.rabi_disorder * series.spin.rabi_disorder) /
                      4.0);
  } else {
    width = std::sqrt(delta_e_squared_tbri(config.tbri.coupling_scale,
                                           config.tbri.particle_count,
                                           config.tbri.orbital_count));
  }
  width = std::max(width, config.model == ModelKind::Tbri ? config.tbri.level_spacing : 1.0);
  std::vector<double> edges(static_cast<std::size_t>(config.sf_bins) + 1);
  for (int b = 0; b <= config.sf_bins; ++b) {
    edges[static_cast<std::size_t>(b)] =
        centroid - 8.0 * width + 16.0 * width * b / static_cast<double>(config.sf_bins);
  }
  return edges;
}

RealizationData run_single(const ExperimentConfig& config, const SeriesSpec& series,
                           int realization, const std::vector<double>& axis,
                           const std::vector<double>& sf_edges, int k0) {
  RealizationData out;

  SymmetricHamiltonian h;
  const SymmetricHamiltonian* pattern = nullptr;  // sparsity source for perturbations
  SymmetricHamiltonian v_part;
  if (config.model == ModelKind::SpinChain) {
    SpinBasis basis(series.spin.qubit_count);
    SpinChainParams params = series.spin;
    params.seed = substream(config.seed, derive_stream(series.index, realization, 0));
    auto [h0, v] = build_spin_chain(basis, params);
    v_part = std::move(v);
    h = add(h0, v_part);
    pattern = &v_part;
  } else {
    const FermionBasis basis =
        FermionBasis::enumerate(config.tbri.orbital_count, config.tbri.particle_count);
    TbriParams params = config.tbri;
    params.seed = substream(config.seed, derive_stream(series.index, realization, 0));
    h = build_tbri(basis, params);
    pattern = &h;
  }

  out.delta_e2 = delta_e_squared_direct(h, k0);

  const bool want_trajectory =
      config.wants(OutputKind::Entropy) || config.wants(OutputKind::W0);
  const bool want_fidelity = config.wants(OutputKind::Fidelity);
  const bool want_sf = config.wants(OutputKind::Sf);
  const bool want_spacing = config.wants(OutputKind::Spacing);

  SpectralDecomposition dec;
  if (want_trajectory || want_fidelity || want_sf || want_spacing) {
    dec = diagonalize(h);
  }

  if (want_trajectory) {
    const PacketTrajectory traj = evolve_packet(dec, k0, axis);
    if (config.wants(OutputKind::W0)) out.w0 = traj.return_probability;
    if (config.wants(OutputKind::Entropy)) {
      EntropyTrace trace = packet_entropy(traj);
      out.entropy = std::move(trace.entropy);
      out.entropy_norm = std::move(trace.normalized);
    }
  }

  if (want_fidelity) {
    Eigen::VectorXd psi0 = Eigen::VectorXd::Zero(h.dimension());
    psi0[k0] = 1.0;
    out.fidelity.resize(config.epsilons.size());
    // The epsilon sweep scales one shared draw per realization (the stream
    // yields the same unit deviates), so curves at different strengths see
    // the same perturbation direction and scaling plots compare like with
    // like.
    const std::uint64_t seed = substream(config.seed, derive_stream(series.index, realization, 1));
    for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
      const SymmetricHamiltonian sigma = add_perturbation(*pattern, config.epsilons[e], seed);
      const SymmetricHamiltonian perturbed = add(h, sigma);
      const SpectralDecomposition dec_p = diagonalize(perturbed);
      std::vector<double> times = axis;
      if (config.eps_t_axis) {
        for (double& t : times) t /= config.epsilons[e];
      }
      out.fidelity[e] = overlap_fidelity(dec, dec_p, psi0, times);
    }
  }

  if (want_sf) {
    const StrengthFunctionProfile profile = strength_function(dec, k0, sf_edges);
    out.sf_heights = profile.heights;
    out.sf_centroid = profile.centroid;
    out.sf_variance = profile.variance;
  }

  if (want_spacing) {
    const SpacingStatistics stats = level_spacing_statistics(dec.energies);
    out.spacing_heights = stats.heights;
    out.gap_ratio = stats.mean_gap_ratio;
    out.degenerate_fraction = stats.degenerate_fraction;
  }

  if (config.wants(OutputKind::TheoryOverlay) && config.model == ModelKind::Tbri) {
    out.gamma0 = gamma_golden_rule(h, k0);
  }
  return out;
}

TraceColumn reduce_column(const std::string& name, const std::vector<RealizationData>& data,
                          const std::vector<double>& (*getter)(const RealizationData&,
                                                               std::size_t),
                          std::size_t slot) {
  const int r_count = static_cast<int>(data.size());
  const std::size_t length = getter(data[0], slot).size();
  TraceColumn column;
  column.name = name;
  column.mean.assign(length, 0.0);
  column.stderr_of_mean.assign(length, 0.0);
  for (int r = 0; r < r_count; ++r) {
    const auto& x = getter(data[static_cast<std::size_t>(r)], slot);
    for (std::size_t i = 0; i < length; ++i) column.mean[i] += x[i];
  }
  for (double& m : column.mean) m /= r_count;
  if (r_count > 1) {
    for (int r = 0; r < r_count; ++r) {
      const auto& x = getter(data[static_cast<std::size_t>(r)], slot);
      for (std::size_t i = 0; i < length; ++i) {
        const double d = x[i] - column.mean[i];
        column.stderr_of_mean[i] += d * d;
      }
    }
    for (double& s : column.stderr_of_mean) {
      s = std::sqrt(s / (static_cast<double>(r_count) * (r_count - 1)));
    }
  }
  return column;
}

struct ScalarStats {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

ScalarStats reduce_scalar(const std::vector<RealizationData>& data,
                          double (*getter)(const RealizationData&)) {
  ScalarStats stats;
  const int r_count = static_cast<int>(data.size());
  for (const auto& d : data) stats.mean += getter(d);
  stats.mean /= r_count;
  if (r_count > 1) {
    for (const auto& d : data) {
      const double diff = getter(d) - stats.mean;
      stats.stderr_of_mean += diff * diff;
    }
    stats.stderr_of_mean =
        std::sqrt(stats.stderr_of_mean / (static_cast<double>(r_count) * (r_count - 1)));
  }
  return stats;
}

std::vector<double> bin_centers(const std::vector<double>& edges) {
  std::vector<double> centers(edges.size() - 1);
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) centers[b] = 0.5 * (edges[b] + edges[b + 1]);
  return centers;
}

}  // namespace

std::uint64_t derive_stream(int series, int realization, int purpose) {
  return substream(static_cast<std::uint64_t>(series) * 1024 + static_cast<std::uint64_t>(purpose),
                   static_cast<std::uint64_t>(realization));
}

int spectrum_center_index(const std::vector<double>& diagonal) {
  std::vector<double> sorted = diagonal;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[(sorted.size() - 1) / 2];
  int best = 0;
  double best_distance = std::abs(diagonal[0] - median);
  for (std::size_t k = 1; k < diagonal.size(); ++k) {
    const double distance = std::abs(diagonal[k] - median);
    if (distance < best_distance) {
      best_distance = distance;
      best = static_cast<int>(k);
    }
  }
  return best;
}

EnsembleResult run_experiment(const ExperimentConfig& config) {
  config.validate();

  std::vector<SeriesSpec> series_list;
  if (config.model == ModelKind::SpinChain) {
    const auto js =
        config.j_values.empty() ? std::vector<double>{config.spin.ising_j} : config.j_values;
    const auto sps = config.sigma_p_values.empty()
                         ? std::vector<double>{config.spin.rabi_disorder}
                         : config.sigma_p_values;
    const bool sweeping = !config.j_values.empty() || !config.sigma_p_values.empty();
    int index = 0;
    for (double j : js) {
      for (double sp : sps) {
        SeriesSpec series;
        series.index = index++;
        series.spin = config.spin;
        series.spin.ising_j = j;
        series.spin.rabi_disorder = sp;
        if (sweeping) series.label = "_J" + value_token(j) + "_sp" + value_token(sp);
        series_list.push_back(series);
      }
    }
  } else {
    series_list.push_back(SeriesSpec{});
  }

  std::vector<double> axis(static_cast<std::size_t>(config.steps));
  for (int i = 0; i < config.steps; ++i) {
    axis[static_cast<std::size_t>(i)] =
        config.t_max * i / static_cast<double>(config.steps - 1);
  }

  EnsembleResult result;
  result.traces.axis_name = config.eps_t_axis ? "eps_t" : "time";
  result.traces.axis = axis;
  result.config_echo = serialize_config(config);
  result.master_seed = config.seed;

  const int r_count = config.realizations;

  for (const auto& series : series_list) {
    // Deterministic diagonal fixes k0 and the SF grid for every realization.
    std::vector<double> det_diag;
    int dimension;
    if (config.model == ModelKind::SpinChain) {
      SpinBasis basis(series.spin.qubit_count);
      SpinChainParams clean = series.spin;
      clean.rabi_disorder = 0.0;
      clean.seed = 0;
      det_diag = build_spin_chain(basis, clean).first.diagonal();
      dimension = basis.dimension();
    } else {
      const FermionBasis basis =
          FermionBasis::enumerate(config.tbri.orbital_count, config.tbri.particle_count);
      det_diag = slater_diagonal(basis, config.tbri.level_spacing);
      dimension = basis.dimension();
    }
    const int k0 = config.k0_policy == K0Policy::Index ? config.k0_index
                                                       : spectrum_center_index(det_diag);
    if (k0 < 0 || k0 >= dimension) {
      throw std::invalid_argument("run_experiment: k0 index out of range");
    }
    const std::vector<double> sf_edges =
        sf_edges_for(config, series, det_diag[static_cast<std::size_t>(k0)]);

    std::vector<RealizationData> data(static_cast<std::size_t>(r_count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(r_count));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < r_count; ++r) {
      try {
        data[static_cast<std::size_t>(r)] = run_single(config, series, r, axis, sf_edges, k0);
      } catch (...) {
        errors[static_cast<std::size_t>(r)] = std::current_exception();
      }
    }
    for (int r = 0; r < r_count; ++r) {
      if (errors[static_cast<std::size_t>(r)]) {
        try {
          std::rethrow_exception(errors[static_cast<std::size_t>(r)]);
        } catch (const std::exception& e) {
          throw std::runtime_error("realization " + std::to_string(r) + series.label + ": " +
                                   e.what());
        }
      }
    }

    const std::string& label = series.label;

    if (config.wants(OutputKind::Entropy)) {
      result.traces.columns.push_back(reduce_column(
          "S" + label, data,
          +[](const RealizationData& d, std::size_t) -> const std::vector<double>& {
            return d.entropy;
          },
          0));
      result.traces.columns.push_back(reduce_column(
          "Snorm" + label, data,
          +[](const RealizationData& d, std::size_t) -> const std::vector<double>& {
            return d.entropy_norm;
          },
          0));
    }
    if (config.wants(OutputKind::W0)) {
      result.traces.columns.push_back(reduce_column(
          "W0" + label, data,
          +[](const RealizationData& d, std::size_t) -> const std::vector<double>& {
            return d.w0;
          },
          0));
    }
    if (config.wants(OutputKind::Fidelity)) {
      for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
        result.traces.columns.push_back(reduce_column(
            "F" + label + "_eps" + value_token(config.epsilons[e]), data,
            +[](const RealizationData& d, std::size_t slot) -> const std::vector<double>& {
              return d.fidelity[slot];
            },
            e));
      }
    }

    const ScalarStats delta_e2 =
        reduce_scalar(data, +[](const RealizationData& d) { return d.delta_e2; });
    result.scalars.emplace_back("delta_e2" + label, format_scalar(delta_e2.mean) + " +- " +
                                                        format_scalar(delta_e2.stderr_of_mean));

    if (config.wants(OutputKind::TheoryOverlay)) {
      if (config.model == ModelKind::SpinChain && config.wants(OutputKind::Entropy)) {
        // Linear cascade estimate with the width taken from the measured
        // variance and N_f = L single-flip neighbors.
        TraceColumn overlay;
        overlay.name = "S_eq26" + label;
        const double width = std::sqrt(delta_e2.mean);
        const double log_nf = std::log(static_cast<double>(series.spin.qubit_count));
        overlay.mean.reserve(axis.size());
        overlay.stderr_of_mean.assign(axis.size(), 0.0);
        for (double t : axis) overlay.mean.push_back(width * t * log_nf);
        result.traces.columns.push_back(std::move(overlay));
      }
      if (config.model == ModelKind::Tbri && config.wants(OutputKind::W0)) {
        const ScalarStats gamma0 =
            reduce_scalar(data, +[](const RealizationData& d) { return d.gamma0; });
        result.scalars.emplace_back("gamma0" + label,
                                    format_scalar(gamma0.mean) + " +- " +
                                        format_scalar(gamma0.stderr_of_mean));
        TraceColumn lorentzian, gaussian;
        lorentzian.name = "W0_lorentzian" + label;
        gaussian.name = "W0_gaussian" + label;
        lorentzian.stderr_of_mean.assign(axis.size(), 0.0);
        gaussian.stderr_of_mean.assign(axis.size(), 0.0);
        const DecayParams params{delta_e2.mean, gamma0.mean, 0.0};
        for (double t : axis) {
          lorentzian.mean.push_back(
              w0_predicted(DecayRegime::LorentzianExponential, params, t));
          gaussian.mean.push_back(w0_predicted(DecayRegime::Gaussian, params, t));
        }
        result.traces.columns.push_back(std::move(lorentzian));
        result.traces.columns.push_back(std::move(gaussian));
      }
    }

    if (config.wants(OutputKind::Entropy)) {
      // First-minimum report on the ensemble-mean trace (averaged first,
      // then searched).
      EntropyTrace mean_trace;
      mean_trace.times = axis;
      mean_trace.max_entropy = std::log(static_cast<double>(dimension));
      for (const auto& column : result.traces.columns) {
        if (column.name == "S" + label) {
          mean_trace.entropy = column.mean;
          break;
        }
      }
      const FirstMinimumReport report = first_minimum(mean_trace);
      result.scalars.emplace_back(
          "first_minimum" + label,
          report.found ? "t=" + format_scalar(report.time) + " S=" + format_scalar(report.entropy) +
                             " ratio=" + format_scalar(report.ratio)
                       : "not-found");
    }

    if (config.wants(OutputKind::Sf)) {
      if (!result.sf) {
        result.sf.emplace();
        result.sf->axis_name = "E";
        result.sf->axis = bin_centers(sf_edges);
      }
      result.sf->columns.push_back(reduce_column(
          "P" + label, data,
          +[](const RealizationData& d, std::size_t) -> const std::vector<double>& {
            return d.sf_heights;
          },
          0));
      const ScalarStats centroid =
          reduce_scalar(data, +[](const RealizationData& d) { return d.sf_centroid; });
      const ScalarStats variance =
          reduce_scalar(data, +[](const RealizationData& d) { return d.sf_variance; });
      result.scalars.emplace_back("sf_centroid" + label,
                                  format_scalar(centroid.mean) + " +- " +
                                      format_scalar(centroid.stderr_of_mean));
      result.scalars.emplace_back("sf_variance" + label,
                                  format_scalar(variance.mean) + " +- " +
                                      format_scalar(variance.stderr_of_mean));
      if (config.wants(OutputKind::TheoryOverlay)) {
        StrengthFunctionProfile mean_profile;
        mean_profile.bin_edges = sf_edges;
        mean_profile.heights = result.sf->columns.back().mean;
        mean_profile.centroid = centroid.mean;
        mean_profile.variance = variance.mean;
        try {
          const SfFitResult fit = fit_strength_function(mean_profile);
          TraceColumn overlay;
          overlay.name = "P_fit" + label;
          overlay.stderr_of_mean.assign(result.sf->axis.size(), 0.0);
          for (double e : result.sf->axis) {
            overlay.mean.push_back(sf_profile(e, mean_profile.centroid, fit.params));
          }
          result.sf->columns.push_back(std::move(overlay));
          result.scalars.emplace_back(
              "sf_fit" + label, "B=" + format_scalar(fit.params.normalization) +
                                    " Gamma=" + format_scalar(fit.params.gamma) +
                                    " sigma=" + format_scalar(fit.params.sigma) +
                                    " residual=" + format_scalar(fit.residual));
        } catch (const std::exception& e) {
          result.scalars.emplace_back("sf_fit_error" + label, e.what());
        }
      }
    }

    if (config.wants(OutputKind::Spacing)) {
      if (!result.spacing) {
        result.spacing.emplace();
        result.spacing->axis_name = "s";
        std::vector<double> edges(41);
        for (int b = 0; b <= 40; ++b) edges[static_cast<std::size_t>(b)] = 4.0 * b / 40.0;
        result.spacing->axis = bin_centers(edges);
      }
      result.spacing->columns.push_back(reduce_column(
          "Pspacing" + label, data,
          +[](const RealizationData& d, std::size_t) -> const std::vector<double>& {
            return d.spacing_heights;
          },
          0));
      const ScalarStats ratio =
          reduce_scalar(data, +[](const RealizationData& d) { return d.gap_ratio; });
      const ScalarStats degenerate =
          reduce_scalar(data, +[](const RealizationData& d) { return d.degenerate_fraction; });
      result.scalars.emplace_back("gap_ratio" + label,
                                  format_scalar(ratio.mean) + " +- " +
                                      format_scalar(ratio.stderr_of_mean));
      result.scalars.emplace_back("degenerate_fraction" + label,
                                  format_scalar(degenerate.mean));
    }
  }

  return result;
}

}  // namespace fockdyn
