// crodomsc/synthgen.hpp

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

#ifndef CRODOMSC_SYNTHGEN_HPP_
#define CRODOMSC_SYNTHGEN_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "crodomsc/core.hpp"

namespace crodomsc {

/// Configuration for the synthetic cross-domain benchmark: samples are sparse
/// combinations of a ground-truth dictionary, each class on its own atom
/// subset, and every target-domain sample is offset by one fixed feature-space
/// vector of norm `shift`.
struct SynthConfig {
  int dim = 20;         // feature dimension D
  int atoms = 15;       // ground-truth dictionary size
  int n_source = 30;
  int n_target = 30;
  int n_test = 30;      // test samples, drawn from the target domain
  int classes = 4;
  int sparsity = 3;     // nonzeros per code
  double shift = 1.0;   // norm of the target-domain offset
  double noise = 0.1;   // additive Gaussian noise scale
  double target_label_fraction = 0.25;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  Eigen::MatrixXd u_true;       // D x atoms, unit-norm columns
  Eigen::MatrixXd v_true;       // atoms x (N_S + N_T), training codes
  Eigen::MatrixXd v_true_test;  // atoms x N_test
};

struct SynthData {
  Dataset train;
  Dataset test;  // all target-domain, fully labeled
  GroundTruth truth;
};

namespace detail {

inline void check_synth_config(const SynthConfig& cfg) {
  if (cfg.dim < 1 || cfg.atoms < 1 || cfg.n_source < 1 || cfg.n_target < 1 ||
      cfg.n_test < 1 || cfg.classes < 1 || cfg.sparsity < 1)
    throw InvalidConfig("synth: all counts must be >= 1");
  if (cfg.sparsity > cfg.atoms)
    throw InvalidConfig("synth: sparsity must not exceed the atom count");
  if (cfg.classes > std::min(cfg.n_source, cfg.n_target))
    throw InvalidConfig("synth: classes must not exceed min(n_source, n_target)");
  if (!(cfg.shift >= 0.0) || !(cfg.noise >= 0.0))
    throw InvalidConfig("synth: shift and noise must be >= 0");
  if (!(cfg.target_label_fraction >= 0.0 && cfg.target_label_fraction <= 1.0))
    throw InvalidConfig("synth: target_label_fraction must be in [0, 1]");
}

inline std::vector<std::vector<int>> class_supports(const SynthConfig& cfg) {
  const int stride = std::max(1, cfg.atoms / cfg.classes);
  std::vector<std::vector<int>> supports(static_cast<std::size_t>(cfg.classes));
  for (int c = 0; c < cfg.classes; ++c) {
    auto& s = supports[static_cast<std::size_t>(c)];
    for (int j = 0; j < cfg.sparsity; ++j)
      s.push_back((c * stride + j) % cfg.atoms);
    std::sort(s.begin(), s.end());
  }
  for (std::size_t a = 0; a < supports.size(); ++a)
    for (std::size_t b = a + 1; b < supports.size(); ++b)
      if (supports[a] == supports[b])
        throw InvalidConfig("synth: class atom subsets are not distinct; "
                            "use more atoms or fewer classes");
  return supports;
}

}  // namespace detail

/// Builds the train/test datasets plus the generating dictionary and codes.
///
/// Code magnitudes are drawn uniformly from [0.5, 1.5] in antithetic pairs
/// (m, 2 - m) within each class-and-group bucket, so every bucket's empirical
/// code mean equals the class prototype exactly. With shift = 0 and noise = 0
/// the class-conditional feature means of the two domains therefore coincide.
inline SynthData generate(const SynthConfig& cfg) {
  detail::check_synth_config(cfg);
  const auto supports = detail::class_supports(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> magnitude(0.5, 1.5);
  std::uniform_int_distribution<int> coin(0, 1);

  Eigen::MatrixXd u_true(cfg.dim, cfg.atoms);
  for (Eigen::Index j = 0; j < u_true.cols(); ++j) {
    do {
      for (Eigen::Index r = 0; r < u_true.rows(); ++r) u_true(r, j) = gauss(rng);
    } while (u_true.col(j).norm() == 0.0);
    u_true.col(j) /= u_true.col(j).norm();
  }

  Eigen::VectorXd shift_vec = Eigen::VectorXd::Zero(cfg.dim);
  {
    Eigen::VectorXd dir(cfg.dim);
    do {
      for (Eigen::Index r = 0; r < dir.size(); ++r) dir(r) = gauss(rng);
    } while (dir.norm() == 0.0);
    shift_vec = dir * (cfg.shift / dir.norm());
  }

  // Fixed sign pattern per class: part of the class identity.
  std::vector<std::vector<double>> signs(static_cast<std::size_t>(cfg.classes));
  for (int c = 0; c < cfg.classes; ++c)
    for (int j = 0; j < cfg.sparsity; ++j)
      signs[static_cast<std::size_t>(c)].push_back(coin(rng) ? 1.0 : -1.0);

  // Codes for one group of n samples with classes assigned round-robin.
  auto make_codes = [&](int n) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(cfg.atoms, n);
    for (int c = 0; c < cfg.classes; ++c) {
      std::vector<int> members;
      for (int i = c; i < n; i += cfg.classes) members.push_back(i);
      const auto& sup = supports[static_cast<std::size_t>(c)];
      const auto& sgn = signs[static_cast<std::size_t>(c)];
      std::size_t m = 0;
      for (; m + 1 < members.size(); m += 2) {
        for (int j = 0; j < cfg.sparsity; ++j) {
          const double mag = magnitude(rng);
          v(sup[static_cast<std::size_t>(j)], members[m]) =
              sgn[static_cast<std::size_t>(j)] * mag;
          v(sup[static_cast<std::size_t>(j)], members[m + 1]) =
              sgn[static_cast<std::size_t>(j)] * (2.0 - mag);
        }
      }
      if (m < members.size()) {  // odd leftover sits at the prototype
        for (int j = 0; j < cfg.sparsity; ++j)
          v(sup[static_cast<std::size_t>(j)], members[m]) =
              sgn[static_cast<std::size_t>(j)];
      }
    }
    return v;
  };

  auto make_features = [&](const Eigen::MatrixXd& v, bool target_domain) {
    Eigen::MatrixXd x = u_true * v;
    if (target_domain) x.colwise() += shift_vec;
    if (cfg.noise > 0.0) {
      for (Eigen::Index i = 0; i < x.cols(); ++i)
        for (Eigen::Index r = 0; r < x.rows(); ++r)
          x(r, i) += cfg.noise * gauss(rng);
    }
    return x;
  };

  auto class_label = [](int cls) { return "c" + std::to_string(cls); };

  const Eigen::MatrixXd v_source = make_codes(cfg.n_source);
  const Eigen::MatrixXd v_target = make_codes(cfg.n_target);
  const Eigen::MatrixXd v_test = make_codes(cfg.n_test);
  const Eigen::MatrixXd x_source = make_features(v_source, false);
  const Eigen::MatrixXd x_target = make_features(v_target, true);
  const Eigen::MatrixXd x_test = make_features(v_test, true);

  SynthData out;
  const int n_train = cfg.n_source + cfg.n_target;
  out.train.features.resize(cfg.dim, n_train);
  out.train.features << x_source, x_target;
  const int n_labeled_targets = static_cast<int>(
      std::lround(cfg.target_label_fraction * cfg.n_target));
  for (int i = 0; i < cfg.n_source; ++i) {
    out.train.domains.push_back(Domain::kSource);
    out.train.labels.emplace_back(class_label(i % cfg.classes));
  }
  for (int i = 0; i < cfg.n_target; ++i) {
    out.train.domains.push_back(Domain::kTarget);
    if (i < n_labeled_targets)
      out.train.labels.emplace_back(class_label(i % cfg.classes));
    else
      out.train.labels.emplace_back(std::nullopt);
  }

  out.test.features = x_test;
  for (int i = 0; i < cfg.n_test; ++i) {
    out.test.domains.push_back(Domain::kTarget);
    out.test.labels.emplace_back(class_label(i % cfg.classes));
  }

  out.truth.u_true = u_true;
  out.truth.v_true.resize(cfg.atoms, n_train);
  out.truth.v_true << v_source, v_target;
  out.truth.v_true_test = v_test;
  return out;
}

}  // namespace crodomsc

#endif  // CRODOMSC_SYNTHGEN_HPP_
