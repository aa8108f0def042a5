// crodomsc/codebook.hpp

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

#ifndef CRODOMSC_CODEBOOK_HPP_
#define CRODOMSC_CODEBOOK_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <optional>

#include "crodomsc/core.hpp"

namespace crodomsc {

/// Norm-constrained least squares for the codebook:
///   min_U ||X - U V||_F^2  s.t.  ||u_k||^2 <= c  for every column k.
struct CodebookProblem {
  Eigen::MatrixXd x;  // D x N
  Eigen::MatrixXd v;  // K x N
  double c = 1.0;
  std::optional<Eigen::MatrixXd> u_init;  // D x K warm start
};

/// First-order optimality certificate for the constrained codebook problem.
/// Interior columns contribute the gradient-column norm; boundary columns
/// contribute the component orthogonal to u_k plus any inward-pointing
/// (wrong-sign multiplier) magnitude.
inline double kkt_residual(const Eigen::MatrixXd& x, const Eigen::MatrixXd& v,
                           const Eigen::MatrixXd& u, double c) {
  if (u.rows() != x.rows() || u.cols() != v.rows() || x.cols() != v.cols())
    throw DimensionMismatch("kkt_residual: inconsistent dimensions");
  const Eigen::MatrixXd grad = 2.0 * (u * (v * v.transpose()) - x * v.transpose());
  double res = 0.0;
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    const double norm_sq = u.col(k).squaredNorm();
    double r;
    if (norm_sq < c - 1e-8 || norm_sq == 0.0) {
      r = grad.col(k).norm();
    } else {
      const Eigen::VectorXd dir = u.col(k) / std::sqrt(norm_sq);
      const double along = grad.col(k).dot(dir);
      r = (grad.col(k) - along * dir).norm() + std::max(0.0, along);
    }
    res = std::max(res, r);
  }
  return res;
}

/// Block coordinate descent over codebook columns: each column is set to its
/// unconstrained minimizer given the others and projected onto the ball
/// ||u_k|| <= sqrt(c). Feasible and non-increasing at every step. Columns
/// whose code row is all zero are left unchanged.
inline Eigen::MatrixXd update_codebook(const CodebookProblem& prob) {
  const Eigen::Index dims = prob.x.rows();
  const Eigen::Index n = prob.x.cols();
  const Eigen::Index k = prob.v.rows();
  if (prob.v.cols() != n)
    throw DimensionMismatch("update_codebook: X and V sample counts differ");
  if (!(prob.c > 0.0)) throw InvalidHyperparams("c must be > 0");
  if (!prob.x.allFinite() || !prob.v.allFinite())
    throw NonFinite("update_codebook: non-finite input");

  constexpr int kMaxSweeps = 200;
  constexpr double kSweepTol = 1e-8;

  Eigen::MatrixXd u0 = Eigen::MatrixXd::Zero(dims, k);
  if (prob.u_init.has_value()) {
    if (prob.u_init->rows() != dims || prob.u_init->cols() != k)
      throw DimensionMismatch("update_codebook: warm start has wrong shape");
    u0 = *prob.u_init;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double nsq = u0.col(j).squaredNorm();
      if (nsq > prob.c) u0.col(j) *= std::sqrt(prob.c / nsq);
    }
  }
  Eigen::MatrixXd u = u0;

  Eigen::VectorXd row_sq(k);
  for (Eigen::Index j = 0; j < k; ++j) row_sq(j) = prob.v.row(j).squaredNorm();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    Eigen::MatrixXd resid = prob.x - u * prob.v;
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (row_sq(j) == 0.0) continue;
      const Eigen::VectorXd u_old = u.col(j);
      Eigen::VectorXd u_new =
          u_old + resid * prob.v.row(j).transpose() / row_sq(j);
      const double nsq = u_new.squaredNorm();
      if (nsq > prob.c) u_new *= std::sqrt(prob.c / nsq);
      resid.noalias() += (u_old - u_new) * prob.v.row(j);
      u.col(j) = u_new;
      max_change = std::max(max_change, (u_new - u_old).norm());
    }
    if (max_change < kSweepTol) break;
  }

  if (!u.allFinite()) throw NonFinite("update_codebook: non-finite result");

  // A warm start must never come back worse.
  if (prob.u_init.has_value()) {
    const double before = (prob.x - u0 * prob.v).squaredNorm();
    const double after = (prob.x - u * prob.v).squaredNorm();
    if (after > before) return u0;
  }
  return u;
}

}  // namespace crodomsc

#endif  // CRODOMSC_CODEBOOK_HPP_
