// crodomsc/trainer.hpp

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

#ifndef CRODOMSC_TRAINER_HPP_
#define CRODOMSC_TRAINER_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

#include "crodomsc/codebook.hpp"
#include "crodomsc/core.hpp"
#include "crodomsc/feature_sign.hpp"
#include "crodomsc/regularizer.hpp"

namespace crodomsc {

/// Objective breakdown at one iterate. `recon_after_codes` is the
/// reconstruction term after the code sweep but before the codebook update
/// of the same iteration (equal to `recon` for the initial record).
struct HistoryRecord {
  int iteration = 0;
  double recon = 0.0;
  double laplacian = 0.0;
  double mmd = 0.0;
  double l1 = 0.0;
  double total = 0.0;
  double recon_after_codes = 0.0;
  int ridge_hits = 0;   // per-sample solves that needed the PD ridge
  int cap_hits = 0;     // per-sample solves that hit the step cap
  double codebook_kkt = 0.0;
  double codebook_max_norm_sq = 0.0;
};

struct TrainHistory {
  std::vector<HistoryRecord> records;
};

enum class StopReason { kConverged, kMaxIters };

struct FitResult {
  Model model;
  Eigen::MatrixXd codes;  // K x N
  TrainHistory history;
  StopReason stop_reason = StopReason::kMaxIters;
};

/// Four-term objective breakdown:
///   ||X - UV||^2 + beta Tr(V L V^T) + gamma ||V pi||^2 + alpha sum_i ||v_i||_1
inline HistoryRecord objective(const Eigen::MatrixXd& x,
                               const Eigen::MatrixXd& u,
                               const Eigen::MatrixXd& v,
                               const Eigen::MatrixXd& lap,
                               const Eigen::VectorXd& pi,
                               const Hyperparams& hyper) {
  HistoryRecord rec;
  rec.recon = (x - u * v).squaredNorm();
  rec.laplacian = hyper.beta * ((v * lap).cwiseProduct(v)).sum();
  rec.mmd = hyper.gamma * mmd_term(v, pi);
  rec.l1 = hyper.alpha * v.cwiseAbs().sum();
  rec.total = rec.recon + rec.laplacian + rec.mmd + rec.l1;
  rec.recon_after_codes = rec.recon;
  return rec;
}

/// Coupling vector of sample i: f_i = 2 sum_{j != i} E_ij v_j.
inline Eigen::VectorXd compute_f(Eigen::Index i, const Eigen::MatrixXd& e,
                                 const Eigen::MatrixXd& v) {
  return 2.0 * (v * e.col(i) - e(i, i) * v.col(i));
}

/// Starting codebook: K distinct samples chosen uniformly at random (seeded),
/// each rescaled to norm sqrt(c) exactly. When K exceeds N the surplus
/// codewords are random directions.
inline Eigen::MatrixXd sample_codebook(const Eigen::MatrixXd& x,
                                       const Hyperparams& hyper) {
  const Eigen::Index dims = x.rows();
  const Eigen::Index n = x.cols();
  const Eigen::Index k = hyper.k;
  std::mt19937_64 rng(hyper.seed);

  if (k > n)
    std::cerr << "crodomsc: warning: k (" << k << ") exceeds sample count ("
              << n << "); extra codewords are random directions" << std::endl;

  // Sample min(K, N) distinct column indices (partial Fisher-Yates).
  std::vector<Eigen::Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Eigen::Index{0});
  const Eigen::Index picks = std::min(k, n);
  for (Eigen::Index i = 0; i < picks; ++i) {
    std::uniform_int_distribution<Eigen::Index> dist(i, n - 1);
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(dist(rng))]);
  }

  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_direction = [&]() {
    Eigen::VectorXd d(dims);
    do {
      for (Eigen::Index r = 0; r < dims; ++r) d(r) = gauss(rng);
    } while (d.norm() == 0.0);
    return d;
  };

  const double target_norm = std::sqrt(hyper.c);
  Eigen::MatrixXd u(dims, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::VectorXd col =
        (j < picks) ? Eigen::VectorXd(x.col(pool[static_cast<std::size_t>(j)]))
                    : random_direction();
    double nrm = col.norm();
    if (nrm == 0.0) {
      col = random_direction();
      nrm = col.norm();
    }
    u.col(j) = col * (target_norm / nrm);
  }
  return u;
}

/// Initialization: sampled codebook, then 5 plain sparse-coding sweeps
/// (no coupling terms); returns the final codebook/code pair of that run.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> init_model(
    const Eigen::MatrixXd& x, const Hyperparams& hyper) {
  hyper.check();
  const Eigen::Index n = x.cols();
  Eigen::MatrixXd u = sample_codebook(x, hyper);

  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(hyper.k, n);
  Eigen::VectorXd no_coupling = Eigen::VectorXd::Zero(hyper.k);
  for (int sweep = 0; sweep < 5; ++sweep) {
    const Eigen::MatrixXd gram = u.transpose() * u;
    for (Eigen::Index i = 0; i < n; ++i) {
      CodeProblem p{x.col(i), u, 0.0, no_coupling, hyper.alpha};
      v.col(i) = solve_code(p, gram).v;
    }
    u = update_codebook({x, v, hyper.c, u});
  }
  return {u, v};
}

/// Alternating minimization of the joint objective: per-sample code updates
/// in index order (Gauss-Seidel, each solve sees the freshest codes), then a
/// constrained codebook update, with the objective recorded per iteration.
inline FitResult fit(const Dataset& ds, const Hyperparams& hyper) {
  hyper.check();
  const ValidationReport rep = validate_dataset(ds);
  if (!rep.ok) throw ValidationError(join_violations(rep));

  const Eigen::MatrixXd& x = ds.features;
  const Eigen::Index n = x.cols();
  const RegularizerBundle reg =
      build_regularizer_bundle(ds, hyper.beta, hyper.gamma);

  auto [u, v] = init_model(x, hyper);

  FitResult out;
  out.stop_reason = StopReason::kMaxIters;
  HistoryRecord rec0 = objective(x, u, v, reg.laplacian, reg.pi, hyper);
  rec0.codebook_kkt = kkt_residual(x, v, u, hyper.c);
  for (Eigen::Index j = 0; j < u.cols(); ++j)
    rec0.codebook_max_norm_sq =
        std::max(rec0.codebook_max_norm_sq, u.col(j).squaredNorm());
  out.history.records.push_back(rec0);

  for (int t = 1; t <= hyper.max_iters; ++t) {
    int ridge_hits = 0, cap_hits = 0;
    const Eigen::MatrixXd gram = u.transpose() * u;
    for (Eigen::Index i = 0; i < n; ++i) {
      CodeProblem p{x.col(i), u, reg.e(i, i), compute_f(i, reg.e, v),
                    hyper.alpha};
      auto context = [t, i](const Error& err) {
        std::ostringstream os;
        os << err.what() << " (iteration " << t << ", sample " << i << ")";
        return os.str();
      };
      try {
        CodeSolution sol = solve_code(p, gram);
        if (sol.ridge > 0.0) ++ridge_hits;
        if (sol.capped) ++cap_hits;
        v.col(i) = sol.v;
      } catch (const NonConvexSubproblem& err) {
        throw NonConvexSubproblem(context(err));
      } catch (const NonFinite& err) {
        throw NonFinite(context(err));
      }
    }
    const double recon_after_codes = (x - u * v).squaredNorm();

    u = update_codebook({x, v, hyper.c, u});

    HistoryRecord rec = objective(x, u, v, reg.laplacian, reg.pi, hyper);
    rec.iteration = t;
    rec.recon_after_codes = recon_after_codes;
    rec.ridge_hits = ridge_hits;
    rec.cap_hits = cap_hits;
    rec.codebook_kkt = kkt_residual(x, v, u, hyper.c);
    for (Eigen::Index j = 0; j < u.cols(); ++j)
      rec.codebook_max_norm_sq =
          std::max(rec.codebook_max_norm_sq, u.col(j).squaredNorm());
    out.history.records.push_back(rec);

    const double prev =
        out.history.records[out.history.records.size() - 2].total;
    if (std::abs(rec.total - prev) / std::max(1.0, prev) < hyper.tol) {
      out.stop_reason = StopReason::kConverged;
      break;
    }
  }

  out.model = Model{std::move(u), hyper};
  out.codes = std::move(v);
  return out;
}

}  // namespace crodomsc

#endif  // CRODOMSC_TRAINER_HPP_
