// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fockdyn/config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace fockdyn {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& token, const std::string& key) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("config: bad numeric value '" + token + "' for key " + key);
  }
  return value;
}

long long parse_int(const std::string& token, const std::string& key) {
  long long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("config: bad integer value '" + token + "' for key " + key);
  }
  return value;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_double(values[i]);
  }
  return out;
}

OutputKind parse_output(const std::string& token) {
  if (token == "entropy") return OutputKind::Entropy;
  if (token == "fidelity") return OutputKind::Fidelity;
  if (token == "w0") return OutputKind::W0;
  if (token == "sf") return OutputKind::Sf;
  if (token == "spacing") return OutputKind::Spacing;
  if (token == "theory-overlay") return OutputKind::TheoryOverlay;
  throw std::invalid_argument("config: unknown output '" + token + "'");
}

}  // namespace

bool ExperimentConfig::wants(OutputKind kind) const {
  return std::find(outputs.begin(), outputs.end(), kind) != outputs.end();
}

void ExperimentConfig::validate() const {
  if (realizations < 1) throw std::invalid_argument("config: realizations must be >= 1");
  if (steps < 2) throw std::invalid_argument("config: steps must be >= 2");
  if (t_max <= 0.0) throw std::invalid_argument("config: t_max must be > 0");
  if (sf_bins < 1) throw std::invalid_argument("config: sf_bins must be >= 1");
  if (wants(OutputKind::Fidelity) && epsilons.empty()) {
    throw std::invalid_argument("config: fidelity output requires a non-empty epsilon list");
  }
  for (double eps : epsilons) {
    if (eps < 0.0) throw std::invalid_argument("config: epsilons must be >= 0");
    if (eps_t_axis && eps <= 0.0) {
      throw std::invalid_argument("config: eps_t_axis requires strictly positive epsilons");
    }
  }
  if (eps_t_axis && !wants(OutputKind::Fidelity)) {
    throw std::invalid_argument("config: eps_t_axis only applies to fidelity runs");
  }
  if (model == ModelKind::Tbri) {
    if (tbri.level_spacing <= 0.0) throw std::invalid_argument("config: d0 must be > 0");
    if (tbri.coupling_scale < 0.0) throw std::invalid_argument("config: V0 must be >= 0");
    if (!j_values.empty() || !sigma_p_values.empty()) {
      throw std::invalid_argument("config: J/sigma_p sweeps apply to the spin chain only");
    }
  } else {
    if (spin.qubit_count < 1) throw std::invalid_argument("config: L must be >= 1");
    if (spin.rabi_disorder < 0.0) throw std::invalid_argument("config: sigma_p must be >= 0");
    for (double sp : sigma_p_values) {
      if (sp < 0.0) throw std::invalid_argument("config: sigma_p values must be >= 0");
    }
  }
  if (k0_policy == K0Policy::Index && k0_index < 0) {
    throw std::invalid_argument("config: k0_index must be >= 0");
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  config.outputs.clear();

  std::stringstream stream(text);
  std::string line;
  bool in_model = false;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "[model]") {
      in_model = true;
      continue;
    }
    if (line.front() == '[') {
      throw std::invalid_argument("config: unknown section " + line);
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not a key = value pair");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (in_model) {
      if (key == "L") config.spin.qubit_count = static_cast<int>(parse_int(value, key));
      else if (key == "a") config.spin.gradient = parse_double(value, key);
      else if (key == "omega0") config.spin.omega0 = parse_double(value, key);
      else if (key == "nu") config.spin.nu = parse_double(value, key);
      else if (key == "J") config.spin.ising_j = parse_double(value, key);
      else if (key == "Omega0") config.spin.rabi = parse_double(value, key);
      else if (key == "sigma_p") config.spin.rabi_disorder = parse_double(value, key);
      else if (key == "epsilon") config.spin.perturbation_std = parse_double(value, key);
      else if (key == "M") config.tbri.orbital_count = static_cast<int>(parse_int(value, key));
      else if (key == "Np") config.tbri.particle_count = static_cast<int>(parse_int(value, key));
      else if (key == "d0") config.tbri.level_spacing = parse_double(value, key);
      else if (key == "V0") config.tbri.coupling_scale = parse_double(value, key);
      else throw std::invalid_argument("config: unknown model key '" + key + "'");
      continue;
    }

    if (key == "name") config.name = value;
    else if (key == "model") {
      if (value == "tbri") config.model = ModelKind::Tbri;
      else if (value == "spin-chain") config.model = ModelKind::SpinChain;
      else throw std::invalid_argument("config: unknown model '" + value + "'");
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "realizations") {
      config.realizations = static_cast<int>(parse_int(value, key));
    } else if (key == "t_max") {
      config.t_max = parse_double(value, key);
    } else if (key == "steps") {
      config.steps = static_cast<int>(parse_int(value, key));
    } else if (key == "k0_policy") {
      if (value == "index") config.k0_policy = K0Policy::Index;
      else if (value == "spectrum-center") config.k0_policy = K0Policy::SpectrumCenter;
      else throw std::invalid_argument("config: unknown k0_policy '" + value + "'");
    } else if (key == "k0_index") {
      config.k0_index = static_cast<int>(parse_int(value, key));
    } else if (key == "outputs") {
      for (const auto& token : split_list(value)) config.outputs.push_back(parse_output(token));
    } else if (key == "epsilons") {
      for (const auto& token : split_list(value)) config.epsilons.push_back(parse_double(token, key));
    } else if (key == "j_values") {
      for (const auto& token : split_list(value)) config.j_values.push_back(parse_double(token, key));
    } else if (key == "sigma_p_values") {
      for (const auto& token : split_list(value)) {
        config.sigma_p_values.push_back(parse_double(token, key));
      }
    } else if (key == "eps_t_axis") {
      if (value == "true") config.eps_t_axis = true;
      else if (value == "false") config.eps_t_axis = false;
      else throw std::invalid_argument("config: eps_t_axis must be true or false");
    } else if (key == "sf_bins") {
      config.sf_bins = static_cast<int>(parse_int(value, key));
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return config;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  out += "name = " + config.name + "\n";
  out += "model = " + to_string(config.model) + "\n";
  out += "seed = " + std::to_string(config.seed) + "\n";
  out += "realizations = " + std::to_string(config.realizations) + "\n";
  out += "t_max = " + format_double(config.t_max) + "\n";
  out += "steps = " + std::to_string(config.steps) + "\n";
  out += "k0_policy = " + to_string(config.k0_policy) + "\n";
  if (config.k0_policy == K0Policy::Index) {
    out += "k0_index = " + std::to_string(config.k0_index) + "\n";
  }
  if (!config.outputs.empty()) {
    out += "outputs = ";
    for (std::size_t i = 0; i < config.outputs.size(); ++i) {
      if (i) out += ",";
      out += to_string(config.outputs[i]);
    }
    out += "\n";
  }
  if (!config.epsilons.empty()) out += "epsilons = " + format_list(config.epsilons) + "\n";
  if (!config.j_values.empty()) out += "j_values = " + format_list(config.j_values) + "\n";
  if (!config.sigma_p_values.empty()) {
    out += "sigma_p_values = " + format_list(config.sigma_p_values) + "\n";
  }
  out += "eps_t_axis = " + std::string(config.eps_t_axis ? "true" : "false") + "\n";
  out += "sf_bins = " + std::to_string(config.sf_bins) + "\n";
  out += "\n[model]\n";
  if (config.model == ModelKind::SpinChain) {
    out += "L = " + std::to_string(config.spin.qubit_count) + "\n";
    out += "a = " + format_double(config.spin.gradient) + "\n";
    out += "omega0 = " + format_double(config.spin.omega0) + "\n";
    out += "nu = " + format_double(config.spin.nu) + "\n";
    out += "J = " + format_double(config.spin.ising_j) + "\n";
    out += "Omega0 = " + format_double(config.spin.rabi) + "\n";
    out += "sigma_p = " + format_double(config.spin.rabi_disorder) + "\n";
    out += "epsilon = " + format_double(config.spin.perturbation_std) + "\n";
  } else {
    out += "M = " + std::to_string(config.tbri.orbital_count) + "\n";
    out += "Np = " + std::to_string(config.tbri.particle_count) + "\n";
    out += "d0 = " + format_double(config.tbri.level_spacing) + "\n";
    out += "V0 = " + format_double(config.tbri.coupling_scale) + "\n";
  }
  return out;
}

std::string to_string(ModelKind kind) {
  return kind == ModelKind::Tbri ? "tbri" : "spin-chain";
}

std::string to_string(K0Policy policy) {
  return policy == K0Policy::Index ? "index" : "spectrum-center";
}

std::string to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::Entropy: return "entropy";
    case OutputKind::Fidelity: return "fidelity";
    case OutputKind::W0: return "w0";
    case OutputKind::Sf: return "sf";
    case OutputKind::Spacing: return "spacing";
    case OutputKind::TheoryOverlay: return "theory-overlay";
  }
  return "unknown";
}

}  // namespace fockdyn
