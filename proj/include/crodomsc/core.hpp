// crodomsc/core.hpp

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

#ifndef CRODOMSC_CORE_HPP_
#define CRODOMSC_CORE_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace crodomsc {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingDomain : Error { using Error::Error; };
struct NonConvexSubproblem : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NoLabeledSamples : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct InvalidHyperparams : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct VersionMismatch : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Core containers
// ---------------------------------------------------------------------------

enum class Domain { kSource, kTarget };

/// Optional class identifier; absent means unlabeled.
using Label = std::optional<std::string>;

/// Training data. Samples are columns of `features` (D x N); `domains` and
/// `labels` align with the columns. Treated as immutable once built.
struct Dataset {
  Eigen::MatrixXd features;
  std::vector<Domain> domains;
  std::vector<Label> labels;

  Eigen::Index dim() const { return features.rows(); }
  Eigen::Index size() const { return features.cols(); }
};

struct Hyperparams {
  int k = 128;            // codewords
  double alpha = 0.15;    // L1 weight
  double beta = 1.0;      // label-graph weight
  double gamma = 1.0;     // domain-mean weight
  double c = 1.0;         // squared-norm bound per codeword
  int max_iters = 50;     // outer iterations T
  double tol = 1e-6;      // relative objective-change stop threshold
  std::uint64_t seed = 0;

  void check() const {
    if (k < 1) throw InvalidHyperparams("k must be >= 1");
    if (!(alpha > 0.0)) throw InvalidHyperparams("alpha must be > 0");
    if (!(beta >= 0.0)) throw InvalidHyperparams("beta must be >= 0");
    if (!(gamma >= 0.0)) throw InvalidHyperparams("gamma must be >= 0");
    if (!(c > 0.0)) throw InvalidHyperparams("c must be > 0");
    if (max_iters < 1) throw InvalidHyperparams("iters must be >= 1");
    if (!(tol >= 0.0)) throw InvalidHyperparams("tol must be >= 0");
  }
};

/// A trained codebook (D x K) together with the hyperparameters it was
/// trained under. Columns satisfy ||u_k||^2 <= c + 1e-8.
struct Model {
  Eigen::MatrixXd codebook;
  Hyperparams hyper;

  Eigen::Index dim() const { return codebook.rows(); }
  Eigen::Index codewords() const { return codebook.cols(); }
};

// ---------------------------------------------------------------------------
// Dataset validation
// ---------------------------------------------------------------------------

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks the Dataset invariants. Violations are reported, not thrown.
inline ValidationReport validate_dataset(const Dataset& ds) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };

  const Eigen::Index n = ds.features.cols();
  const Eigen::Index d = ds.features.rows();
  if (n < 2) fail("dataset must contain at least 2 samples");
  if (d < 1) fail("feature dimension must be at least 1");
  if (static_cast<Eigen::Index>(ds.domains.size()) != n)
    fail("domain tag count does not match sample count");
  if (static_cast<Eigen::Index>(ds.labels.size()) != n)
    fail("label count does not match sample count");

  if (static_cast<Eigen::Index>(ds.domains.size()) == n) {
    std::size_t n_source = 0, n_target = 0;
    for (std::size_t i = 0; i < ds.domains.size(); ++i) {
      if (ds.domains[i] == Domain::kSource) ++n_source; else ++n_target;
    }
    if (n_source == 0) fail("no source samples");
    if (n_target == 0) fail("no target samples");

    if (static_cast<Eigen::Index>(ds.labels.size()) == n) {
      for (std::size_t i = 0; i < ds.domains.size(); ++i) {
        if (ds.domains[i] == Domain::kSource && !ds.labels[i].has_value()) {
          std::ostringstream os;
          os << "unlabeled source sample at index " << i;
          fail(os.str());
        }
      }
    }
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    if (!ds.features.col(j).allFinite()) {
      std::ostringstream os;
      os << "non-finite feature value in sample " << j;
      fail(os.str());
    }
  }
  return rep;
}

inline std::string join_violations(const ValidationReport& rep) {
  std::string out;
  for (std::size_t i = 0; i < rep.violations.size(); ++i) {
    if (i) out += "; ";
    out += rep.violations[i];
  }
  return out;
}

}  // namespace crodomsc

#endif  // CRODOMSC_CORE_HPP_
