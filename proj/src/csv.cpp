// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fockdyn/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fockdyn {

namespace {

std::string format15(double value) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 15);
  return std::string(buf, ptr);
}

std::string table_of(const TraceBlock& block) {
  std::vector<std::string> header;
  header.push_back(block.axis_name);
  for (const auto& column : block.columns) {
    header.push_back(column.name);
    header.push_back(column.name + "_stderr");
  }
  std::vector<std::vector<double>> rows(block.axis.size());
  for (std::size_t i = 0; i < block.axis.size(); ++i) {
    auto& row = rows[i];
    row.reserve(header.size());
    row.push_back(block.axis[i]);
    for (const auto& column : block.columns) {
      row.push_back(column.mean[i]);
      row.push_back(column.stderr_of_mean[i]);
    }
  }
  return render_csv_table(header, rows);
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

}  // namespace

std::string render_csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ",";
    out += header[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format15(row[i]);
    }
    out += "\n";
  }
  return out;
}

void write_csv(const EnsembleResult& result, const std::string& path) {
  write_file(path, table_of(result.traces));
  if (result.sf) write_file(with_suffix(path, "_sf"), table_of(*result.sf));
  if (result.spacing) write_file(with_suffix(path, "_spacing"), table_of(*result.spacing));

  std::string meta;
  meta += "# fockdyn run metadata\n";
  meta += "version = ";
  meta += kVersion;
  meta += "\nmaster_seed = " + std::to_string(result.master_seed) + "\n";
  for (const auto& [key, value] : result.scalars) {
    meta += key + " = " + value + "\n";
  }
  meta += "\n# configuration echo\n";
  meta += result.config_echo;
  write_file(path + ".meta", meta);
}

ParsedCsv parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  ParsedCsv parsed;
  std::string line;
  if (!std::getline(in, line)) return parsed;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) parsed.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw std::runtime_error("bad numeric cell '" + cell + "' in " + path);
      }
      row.push_back(value);
    }
    parsed.rows.push_back(std::move(row));
  }
  return parsed;
}

}  // namespace fockdyn
