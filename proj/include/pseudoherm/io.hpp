// SPDX-License-Identifier: Apache-2.0
//
// File formats.
//
// Matrix JSON:  {"dim": n, "re": [[...], ...], "im": [[...], ...]}
//   "dim" and "im" are optional; rows must all have the same length.
// Spectrum CSV: '#'-prefixed header lines, then
//   index,re,im,class,pair_index,multiplicity
// Certificate JSON: {"meta": {...}, "verdict", "classification", "residual",
//   "eta": <matrix JSON>, ...}

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pseudoherm/biorthogonal.hpp"

namespace pseudoherm {

inline constexpr const char* kVersion = "0.1.0";

/// Provenance carried by every output file.
struct RunHeader {
  std::string command;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::map<std::string, std::string> parameters;
};

/// Parses matrix JSON. Throws ParseError naming the line/column of a syntax
/// error or the offending field.
Op parse_matrix_json(const std::string& text, const std::string& source = "<input>");
Op read_matrix_file(const std::string& path);

std::string matrix_to_json(const Op& m, int indent = -1);

/// "# key: value" lines for the header.
void write_csv_header(std::ostream& os, const RunHeader& header);

/// One row per eigenvalue. class is real, pair+ or pair- or unpaired;
/// pair_index is the partner row or -1.
void write_spectrum_csv(std::ostream& os, const Eigen::VectorXcd& values,
                        const SpectrumClass& cls, const std::vector<Index>& multiplicity,
                        const RunHeader& header);

std::string certificate_to_json(const Certificate& cert, const RunHeader& header);

/// {"meta": header, "values": {...}} for residual reports.
std::string report_to_json(const std::map<std::string, double>& values, const RunHeader& header,
                           const std::map<std::string, std::string>& labels = {});

}  // namespace pseudoherm
