// crodomsc/io.hpp

// Copyright 2026  The crodomsc authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.
//
// File formats (comma-delimited, "." decimal, no locale dependence, no
// timestamps; doubles are written shortest-round-trip):
//   features: one sample per row, D columns; one optional header row
//   meta:     one row per sample: domain (S|T), label ("?" = unlabeled)
//   model:    "crodomsc-v1 D K alpha beta gamma c" then K codeword rows
//   history:  header row, then one row per recorded iteration

#ifndef CRODOMSC_IO_HPP_
#define CRODOMSC_IO_HPP_

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "crodomsc/core.hpp"
#include "crodomsc/trainer.hpp"

namespace crodomsc {
namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      out.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    out.push_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

inline bool try_parse_double(const std::string& field, double* out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first == last) return false;
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last;
}

inline double parse_double_or_throw(const std::string& field,
                                    const std::string& path, std::size_t line,
                                    std::size_t column) {
  double v = 0.0;
  if (!try_parse_double(field, &v)) {
    std::ostringstream os;
    os << path << " line " << line << ", column " << column
       << ": not a number: '" << field << "'";
    throw ParseError(os.str());
  }
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << path << " line " << line << ", column " << column
       << ": non-finite value";
    throw ParseError(os.str());
  }
  return v;
}

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Feature files
// ---------------------------------------------------------------------------

/// Reads a feature file (samples as rows) into the in-memory layout
/// (samples as columns). A single non-numeric first row is skipped.
inline Eigen::MatrixXd load_features(const std::string& path) {
  const auto lines = detail::read_lines(path);
  if (lines.empty()) throw ParseError(path + ": empty feature file");

  std::size_t first_row = 0;
  {
    double ignored;
    const auto fields = detail::split(lines[0], ',');
    for (const auto& f : fields) {
      if (!detail::try_parse_double(f, &ignored)) {
        first_row = 1;
        break;
      }
    }
  }
  if (first_row >= lines.size())
    throw ParseError(path + ": no data rows");

  const std::size_t n = lines.size() - first_row;
  std::size_t dims = 0;
  Eigen::MatrixXd x;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t line_no = first_row + r + 1;
    const auto fields = detail::split(lines[first_row + r], ',');
    if (r == 0) {
      dims = fields.size();
      x.resize(static_cast<Eigen::Index>(dims), static_cast<Eigen::Index>(n));
    } else if (fields.size() != dims) {
      std::ostringstream os;
      os << path << " line " << line_no << ": expected " << dims
         << " values, got " << fields.size();
      throw ParseError(os.str());
    }
    for (std::size_t cidx = 0; cidx < dims; ++cidx) {
      x(static_cast<Eigen::Index>(cidx), static_cast<Eigen::Index>(r)) =
          detail::parse_double_or_throw(fields[cidx], path, line_no, cidx + 1);
    }
  }
  return x;
}

/// Writes samples as rows (transpose of the in-memory layout), no header.
inline void save_features(const std::string& path, const Eigen::MatrixXd& x) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      if (r) out << ',';
      out << detail::format_double(x(r, i));
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Meta files
// ---------------------------------------------------------------------------

inline std::pair<std::vector<Domain>, std::vector<Label>> load_meta(
    const std::string& path) {
  const auto lines = detail::read_lines(path);
  std::vector<Domain> domains;
  std::vector<Label> labels;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto fields = detail::split(lines[r], ',');
    if (fields.size() != 2) {
      std::ostringstream os;
      os << path << " line " << r + 1 << ": expected 2 fields (domain,label), got "
         << fields.size();
      throw ParseError(os.str());
    }
    if (fields[0] == "S") {
      domains.push_back(Domain::kSource);
    } else if (fields[0] == "T") {
      domains.push_back(Domain::kTarget);
    } else {
      std::ostringstream os;
      os << path << " line " << r + 1 << ": domain must be S or T, got '"
         << fields[0] << "'";
      throw ParseError(os.str());
    }
    if (fields[1].empty()) {
      std::ostringstream os;
      os << path << " line " << r + 1 << ": empty label (use ? for unlabeled)";
      throw ParseError(os.str());
    }
    if (fields[1] == "?") labels.emplace_back(std::nullopt);
    else labels.emplace_back(fields[1]);
  }
  return {std::move(domains), std::move(labels)};
}

inline void save_meta(const std::string& path, const std::vector<Domain>& domains,
                      const std::vector<Label>& labels) {
  if (domains.size() != labels.size())
    throw DimensionMismatch("save_meta: domain and label counts differ");
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  for (std::size_t i = 0; i < domains.size(); ++i) {
    out << (domains[i] == Domain::kSource ? 'S' : 'T') << ','
        << (labels[i].has_value() ? *labels[i] : std::string("?")) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Datasets
// ---------------------------------------------------------------------------

/// Loads a feature/meta pair and enforces the Dataset invariants.
inline Dataset load_dataset(const std::string& features_path,
                            const std::string& meta_path) {
  Dataset ds;
  ds.features = load_features(features_path);
  std::tie(ds.domains, ds.labels) = load_meta(meta_path);
  if (static_cast<Eigen::Index>(ds.domains.size()) != ds.features.cols()) {
    std::ostringstream os;
    os << "row count mismatch: " << features_path << " has "
       << ds.features.cols() << " samples, " << meta_path << " has "
       << ds.domains.size();
    throw ParseError(os.str());
  }
  const ValidationReport rep = validate_dataset(ds);
  if (!rep.ok) throw ValidationError(join_violations(rep));
  return ds;
}

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

inline constexpr const char* kModelFormatTag = "crodomsc-v1";

inline void save_model(const std::string& path, const Model& model) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << kModelFormatTag << ' ' << model.dim() << ' ' << model.codewords()
      << ' ' << detail::format_double(model.hyper.alpha) << ' '
      << detail::format_double(model.hyper.beta) << ' '
      << detail::format_double(model.hyper.gamma) << ' '
      << detail::format_double(model.hyper.c) << '\n';
  for (Eigen::Index k = 0; k < model.codewords(); ++k) {
    for (Eigen::Index r = 0; r < model.dim(); ++r) {
      if (r) out << ',';
      out << detail::format_double(model.codebook(r, k));
    }
    out << '\n';
  }
}

inline Model load_model(const std::string& path) {
  const auto lines = detail::read_lines(path);
  if (lines.empty()) throw ParseError(path + ": empty model file");

  std::istringstream header(lines[0]);
  std::string tag;
  header >> tag;
  if (tag != kModelFormatTag)
    throw VersionMismatch(path + ": expected format tag '" +
                          std::string(kModelFormatTag) + "', got '" + tag + "'");
  std::vector<std::string> rest;
  for (std::string tok; header >> tok;) rest.push_back(tok);
  if (rest.size() != 6)
    throw ParseError(path + " line 1: expected 'tag D K alpha beta gamma c'");

  long dims = 0, k = 0;
  try {
    dims = std::stol(rest[0]);
    k = std::stol(rest[1]);
  } catch (const std::exception&) {
    throw ParseError(path + " line 1: bad dimension fields");
  }
  if (dims < 1 || k < 1) throw ParseError(path + " line 1: bad dimensions");

  Model model;
  model.hyper.k = static_cast<int>(k);
  model.hyper.alpha = detail::parse_double_or_throw(rest[2], path, 1, 4);
  model.hyper.beta = detail::parse_double_or_throw(rest[3], path, 1, 5);
  model.hyper.gamma = detail::parse_double_or_throw(rest[4], path, 1, 6);
  model.hyper.c = detail::parse_double_or_throw(rest[5], path, 1, 7);

  if (lines.size() != static_cast<std::size_t>(k) + 1) {
    std::ostringstream os;
    os << path << ": expected " << k << " codeword rows, found "
       << lines.size() - 1;
    throw ParseError(os.str());
  }
  model.codebook.resize(dims, k);
  for (long row = 0; row < k; ++row) {
    const std::size_t line_no = static_cast<std::size_t>(row) + 2;
    const auto fields = detail::split(lines[line_no - 1], ',');
    if (fields.size() != static_cast<std::size_t>(dims)) {
      std::ostringstream os;
      os << path << " line " << line_no << ": expected " << dims
         << " values, got " << fields.size();
      throw ParseError(os.str());
    }
    for (long r = 0; r < dims; ++r) {
      model.codebook(r, row) = detail::parse_double_or_throw(
          fields[static_cast<std::size_t>(r)], path, line_no,
          static_cast<std::size_t>(r) + 1);
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// Training history
// ---------------------------------------------------------------------------

inline void save_history(const std::string& path, const TrainHistory& history) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << "iter,recon,laplacian,mmd,l1,total,ridge,capped\n";
  for (const HistoryRecord& rec : history.records) {
    out << rec.iteration << ',' << detail::format_double(rec.recon) << ','
        << detail::format_double(rec.laplacian) << ','
        << detail::format_double(rec.mmd) << ','
        << detail::format_double(rec.l1) << ','
        << detail::format_double(rec.total) << ',' << rec.ridge_hits << ','
        << rec.cap_hits << '\n';
  }
}

}  // namespace crodomsc

#endif  // CRODOMSC_IO_HPP_
