// crodomsc/regularizer.hpp

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

#ifndef CRODOMSC_REGULARIZER_HPP_
#define CRODOMSC_REGULARIZER_HPP_

#include <Eigen/Dense>

#include "crodomsc/core.hpp"

namespace crodomsc {

/// Label-pair matrix W: +1 for same-class labeled pairs, -1 for cross-class
/// labeled pairs, 0 if either side is unlabeled. Labeled diagonal entries are
/// +1 (a labeled sample pairs with itself).
inline Eigen::MatrixXd build_label_matrix(const std::vector<Label>& labels) {
  const Eigen::Index n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!labels[i].has_value()) continue;
    for (Eigen::Index j = i; j < n; ++j) {
      if (!labels[j].has_value()) continue;
      const double v = (*labels[i] == *labels[j]) ? 1.0 : -1.0;
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  return w;
}

/// Degrees d_i = sum_j W_ij (may be negative) and L = diag(d) - W.
inline std::pair<Eigen::VectorXd, Eigen::MatrixXd> build_laplacian(
    const Eigen::MatrixXd& w) {
  Eigen::VectorXd degree = w.rowwise().sum();
  Eigen::MatrixXd lap = -w;
  lap.diagonal() += degree;
  return {degree, lap};
}

/// pi_i = 1/N_S for source samples, -1/N_T for target samples; sums to zero.
inline Eigen::VectorXd build_domain_indicator(const std::vector<Domain>& domains) {
  Eigen::Index n_source = 0, n_target = 0;
  for (Domain d : domains) {
    if (d == Domain::kSource) ++n_source; else ++n_target;
  }
  if (n_source == 0) throw MissingDomain("no source samples");
  if (n_target == 0) throw MissingDomain("no target samples");

  Eigen::VectorXd pi(static_cast<Eigen::Index>(domains.size()));
  for (Eigen::Index i = 0; i < pi.size(); ++i) {
    pi(i) = (domains[i] == Domain::kSource)
                ? 1.0 / static_cast<double>(n_source)
                : -1.0 / static_cast<double>(n_target);
  }
  return pi;
}

/// Combined code regularizer E = beta * L + gamma * pi pi^T, dense.
inline Eigen::MatrixXd build_E(const Eigen::MatrixXd& lap,
                               const Eigen::VectorXd& pi,
                               double beta, double gamma) {
  return beta * lap + gamma * (pi * pi.transpose());
}

/// ||V pi||^2: squared distance between the domain means of the code columns.
inline double mmd_term(const Eigen::MatrixXd& v, const Eigen::VectorXd& pi) {
  return (v * pi).squaredNorm();
}

/// All regularizer pieces for one dataset.
struct RegularizerBundle {
  Eigen::MatrixXd w;
  Eigen::VectorXd degree;
  Eigen::MatrixXd laplacian;
  Eigen::VectorXd pi;
  Eigen::MatrixXd e;
};

inline RegularizerBundle build_regularizer_bundle(const Dataset& ds,
                                                  double beta, double gamma) {
  RegularizerBundle b;
  b.w = build_label_matrix(ds.labels);
  std::tie(b.degree, b.laplacian) = build_laplacian(b.w);
  b.pi = build_domain_indicator(ds.domains);
  b.e = build_E(b.laplacian, b.pi, beta, gamma);
  return b;
}

}  // namespace crodomsc

#endif  // CRODOMSC_REGULARIZER_HPP_
