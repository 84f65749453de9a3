// SPDX-License-Identifier: Apache-2.0

#include "pseudoherm/io.hpp"

#include <fstream>
#include <iomanip>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace pseudoherm {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<std::vector<double>> read_rows(const json& doc, const char* field,
                                           const std::string& source) {
  const json& rows = doc.at(field);
  if (!rows.is_array()) throw ParseError(source + ": field '" + field + "' must be an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows[r];
    if (!row.is_array()) {
      throw ParseError(source + ": " + field + "[" + std::to_string(r) + "] is not an array");
    }
    std::vector<double> vals;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number()) {
        throw ParseError(source + ": " + field + "[" + std::to_string(r) + "][" +
                         std::to_string(c) + "] is not a number");
      }
      vals.push_back(row[c].get<double>());
    }
    if (!out.empty() && vals.size() != out.front().size()) {
      throw ParseError(source + ": " + field + "[" + std::to_string(r) + "] has " +
                       std::to_string(vals.size()) + " entries, expected " +
                       std::to_string(out.front().size()));
    }
    out.push_back(std::move(vals));
  }
  return out;
}

json matrix_json(const Op& m) {
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    json c = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json header_json(const RunHeader& h) {
  return json{{"version", kVersion},
              {"command", h.command},
              {"seed", h.seed},
              {"tolerances", h.tolerances},
              {"parameters", h.parameters}};
}

json complex_list(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back({v[k].real(), v[k].imag()});
  return out;
}

}  // namespace

Op parse_matrix_json(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": JSON syntax error";
    throw ParseError(os.str());
  }
  if (!doc.is_object()) throw ParseError(source + ": top level must be an object");
  if (!doc.contains("re")) throw ParseError(source + ": missing field 're'");

  const auto re = read_rows(doc, "re", source);
  const std::size_t n = re.size();
  if (n == 0) throw ParseError(source + ": field 're' is empty");
  if (re.front().size() != n) {
    throw ParseError(source + ": matrix is " + std::to_string(n) + "x" +
                     std::to_string(re.front().size()) + ", expected square");
  }
  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() != static_cast<long long>(n)) {
      throw ParseError(source + ": field 'dim' does not match the number of rows (" +
                       std::to_string(n) + ")");
    }
  }
  std::vector<std::vector<double>> im;
  if (doc.contains("im")) {
    im = read_rows(doc, "im", source);
    if (im.size() != n || (n > 0 && im.front().size() != n)) {
      throw ParseError(source + ": field 'im' shape differs from 're'");
    }
  }

  Op m(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = cplx(re[i][j], im.empty() ? 0.0 : im[i][j]);
    }
  }
  return m;
}

Op read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix_json(buf.str(), path);
}

std::string matrix_to_json(const Op& m, int indent) {
  return matrix_json(m).dump(indent);
}

void write_csv_header(std::ostream& os, const RunHeader& h) {
  os << "# version: " << kVersion << '\n';
  os << "# command: " << h.command << '\n';
  os << "# seed: " << h.seed << '\n';
  for (const auto& [k, v] : h.tolerances) os << "# tol." << k << ": " << v << '\n';
  for (const auto& [k, v] : h.parameters) os << "# " << k << ": " << v << '\n';
}

void write_spectrum_csv(std::ostream& os, const Eigen::VectorXcd& values,
                        const SpectrumClass& cls, const std::vector<Index>& multiplicity,
                        const RunHeader& header) {
  const Index n = values.size();
  std::vector<std::string> kind(static_cast<std::size_t>(n), "unpaired");
  std::vector<Index> partner(static_cast<std::size_t>(n), -1);
  for (Index k : cls.real_indices) kind[k] = "real";
  for (const auto& [p, m] : cls.pairs) {
    kind[p] = "pair+";
    kind[m] = "pair-";
    partner[p] = m;
    partner[m] = p;
  }
  write_csv_header(os, header);
  os << "index,re,im,class,pair_index,multiplicity\n" << std::setprecision(17);
  for (Index k = 0; k < n; ++k) {
    const Index mult = multiplicity.empty() ? 1 : multiplicity[static_cast<std::size_t>(k)];
    os << k << ',' << values[k].real() << ',' << values[k].imag() << ',' << kind[k] << ','
       << partner[k] << ',' << mult << '\n';
  }
}

std::string certificate_to_json(const Certificate& cert, const RunHeader& header) {
  const BiSystem& sys = cert.system;
  json out;
  out["meta"] = header_json(header);
  out["verdict"] = cert.eta ? "pseudo-Hermitian" : "not pseudo-Hermitian";
  out["classification"] = to_string(cert.classification.kind);
  out["eigenvalues"] = complex_list(sys.eigenvalues);
  json pairs = json::array();
  for (const auto& [p, m] : cert.classification.pairs) pairs.push_back({p, m});
  out["pairs"] = std::move(pairs);
  out["real_indices"] = cert.classification.real_indices;
  out["unpaired"] = cert.classification.unpaired;
  out["diagnostics"] = {{"condition_number", sys.condition_number},
                        {"completeness_residual", sys.completeness_residual},
                        {"biorthonormality_residual", sys.biorthonormality_residual},
                        {"eigen_residual", sys.eigen_residual}};
  if (cert.eta) {
    out["residual"] = cert.residual;
    out["eta"] = matrix_json(cert.eta->op());
  } else {
    out["residual"] = nullptr;
    out["eta"] = nullptr;
  }
  return out.dump(2);
}

std::string report_to_json(const std::map<std::string, double>& values, const RunHeader& header,
                           const std::map<std::string, std::string>& labels) {
  json out;
  out["meta"] = header_json(header);
  json v = json::object();
  for (const auto& [k, x] : values) {
    if (std::isfinite(x)) {
      v[k] = x;
    } else {
      v[k] = nullptr;
    }
  }
  out["values"] = std::move(v);
  if (!labels.empty()) out["labels"] = labels;
  return out.dump(2);
}

}  // namespace pseudoherm
