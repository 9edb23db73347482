// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "fockdyn/runner.hpp"

namespace fockdyn {

inline constexpr const char* kVersion = "0.1.0";

/// Renders one table: header row, then rows of values with 15 significant
/// digits, locale-independent.
std::string render_csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows);

/// Writes the time/eps_t traces to `path`, the strength-function block (if
/// any) next to it with an "_sf" suffix, the spacing block with "_spacing",
/// and a `<path>.meta` sidecar holding version, scalars and the full
/// configuration echo. Column order: axis, then mean/stderr pairs.
void write_csv(const EnsembleResult& result, const std::string& path);

struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

ParsedCsv parse_csv(const std::string& path);

}  // namespace fockdyn
