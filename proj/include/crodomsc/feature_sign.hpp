// crodomsc/feature_sign.hpp

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

#ifndef CRODOMSC_FEATURE_SIGN_HPP_
#define CRODOMSC_FEATURE_SIGN_HPP_

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "crodomsc/core.hpp"

namespace crodomsc {

/// One per-sample code subproblem:
///   min_v  ||x - U v||^2 + e v^T v + v^T f + alpha ||v||_1
struct CodeProblem {
  Eigen::VectorXd x;   // length D
  Eigen::MatrixXd u;   // D x K codebook
  double e = 0.0;      // self-coupling coefficient (diagonal of E)
  Eigen::VectorXd f;   // length K coupling vector
  double alpha = 0.0;  // L1 weight, > 0
};

struct CodeSolution {
  Eigen::VectorXd v;
  double objective = 0.0;
  int iterations = 0;     // active-set steps taken
  double ridge = 0.0;     // largest ridge the PD safeguard had to add (0 = none)
  bool capped = false;    // hit the active-set step cap
  // Objective after every accepted step, starting at v = 0. Non-increasing.
  std::vector<double> step_objectives;
};

/// Exact subproblem objective at v.
inline double code_objective(const CodeProblem& p, const Eigen::VectorXd& v) {
  return (p.x - p.u * v).squaredNorm() + p.e * v.squaredNorm() + v.dot(p.f) +
         p.alpha * v.lpNorm<1>();
}

namespace detail {

inline void check_code_problem(const CodeProblem& p) {
  if (p.u.rows() != p.x.size())
    throw DimensionMismatch("codebook rows do not match sample dimension");
  if (p.f.size() != p.u.cols())
    throw DimensionMismatch("coupling vector length does not match codeword count");
  if (!(p.alpha > 0.0)) throw InvalidHyperparams("alpha must be > 0");
  if (!p.x.allFinite() || !p.u.allFinite() || !p.f.allFinite() ||
      !std::isfinite(p.e))
    throw NonFinite("code problem contains non-finite entries");
}

// Solves a * v = rhs, climbing a geometric ridge ladder when a is not
// positive definite. The ladder starts at 1e-10 and multiplies by 10;
// strongly negative e (indefinite E diagonals occur with label graphs)
// pushes it past the nominal 1e-2 cap up to a scale-aware limit before
// giving up.
inline Eigen::VectorXd solve_with_ridge(const Eigen::MatrixXd& a,
                                        const Eigen::VectorXd& rhs,
                                        double e, double* ridge_used) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() == Eigen::Success) return llt.solve(rhs);
  const double limit = std::max(1e-2, 1e6 * (1.0 + std::abs(e)));
  for (double delta = 1e-10; delta <= limit; delta *= 10.0) {
    Eigen::MatrixXd ar = a;
    ar.diagonal().array() += delta;
    llt.compute(ar);
    if (llt.info() == Eigen::Success) {
      *ridge_used = std::max(*ridge_used, delta);
      return llt.solve(rhs);
    }
  }
  throw NonConvexSubproblem(
      "subproblem quadratic could not be made positive definite");
}

}  // namespace detail

/// Modified feature-sign search for the code subproblem. `gram` must equal
/// u^T u (callers coding many samples against one codebook pass it in to
/// avoid recomputation).
///
/// The returned v satisfies, with g = 2 (gram + e I) v - (2 U^T x - f),
///   |g_k + alpha * sign(v_k)| <= 1e-8  for v_k != 0
///   |g_k| <= alpha + 1e-8              for v_k == 0
/// whenever the subproblem is convex. When the PD safeguard or the step cap
/// kicks in, the best iterate found is returned and flagged instead.
inline CodeSolution solve_code(const CodeProblem& p, const Eigen::MatrixXd& gram) {
  detail::check_code_problem(p);
  const Eigen::Index k = p.u.cols();
  const double alpha = p.alpha;
  constexpr int kStepCap = 1000;
  constexpr double kInnerTol = 1e-12;

  Eigen::MatrixXd a = gram;
  a.diagonal().array() += p.e;
  const Eigen::VectorXd b = 2.0 * p.u.transpose() * p.x - p.f;
  const double x_sq = p.x.squaredNorm();

  // Quadratic-form objective; equals code_objective up to rounding.
  auto qobj = [&](const Eigen::VectorXd& v) {
    return v.dot(a * v) - b.dot(v) + x_sq + alpha * v.lpNorm<1>();
  };

  CodeSolution sol;
  sol.v = Eigen::VectorXd::Zero(k);
  double obj_cur = x_sq;
  sol.step_objectives.push_back(obj_cur);

  std::vector<Eigen::Index> active;
  std::vector<signed char> theta(static_cast<std::size_t>(k), 0);
  std::vector<bool> in_active(static_cast<std::size_t>(k), false);
  std::vector<bool> blocked(static_cast<std::size_t>(k), false);
  int steps = 0;

  auto gradient = [&]() -> Eigen::VectorXd { return 2.0 * (a * sol.v) - b; };

  auto prune_zeros = [&]() {
    std::vector<Eigen::Index> kept;
    kept.reserve(active.size());
    for (Eigen::Index idx : active) {
      if (sol.v(idx) == 0.0) {
        in_active[static_cast<std::size_t>(idx)] = false;
        theta[static_cast<std::size_t>(idx)] = 0;
      } else {
        theta[static_cast<std::size_t>(idx)] = sol.v(idx) > 0.0 ? 1 : -1;
        kept.push_back(idx);
      }
    }
    active.swap(kept);
  };

  while (true) {
    // Step (a): activate the zero coordinate with the largest gradient
    // magnitude exceeding alpha (lowest index wins ties).
    Eigen::VectorXd g = gradient();
    Eigen::Index pick = -1;
    double pick_mag = alpha;
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (in_active[ui] || blocked[ui]) continue;
      if (std::abs(g(i)) > pick_mag) {
        pick_mag = std::abs(g(i));
        pick = i;
      }
    }
    if (pick >= 0) {
      theta[static_cast<std::size_t>(pick)] = g(pick) > 0.0 ? -1 : 1;
      in_active[static_cast<std::size_t>(pick)] = true;
      active.push_back(pick);
    } else {
      // No coordinate to activate; done if the active set is stationary too.
      bool stationary = true;
      for (Eigen::Index idx : active) {
        if (std::abs(g(idx) + alpha * static_cast<double>(theta[idx])) >
            kInnerTol) {
          stationary = false;
          break;
        }
      }
      if (stationary) break;
    }

    // Steps (b)-(c): analytic solve over the active set plus a zero-crossing
    // line search, repeated until the active set is stationary.
    bool stalled = false;
    while (true) {
      if (++steps > kStepCap) {
        sol.capped = true;
        break;
      }
      const Eigen::Index m = static_cast<Eigen::Index>(active.size());
      if (m == 0) break;

      Eigen::MatrixXd a_act(m, m);
      Eigen::VectorXd rhs(m);
      Eigen::VectorXd v_act(m);
      for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index s = 0; s < m; ++s) a_act(r, s) = a(active[r], active[s]);
        rhs(r) = 0.5 * (b(active[r]) -
                        alpha * static_cast<double>(theta[active[r]]));
        v_act(r) = sol.v(active[r]);
      }
      const Eigen::VectorXd v_new =
          detail::solve_with_ridge(a_act, rhs, p.e, &sol.ridge);

      // Candidate points: the analytic target plus every zero crossing
      // between the current iterate and the target.
      double best_obj = std::numeric_limits<double>::infinity();
      Eigen::VectorXd best(k);
      auto consider = [&](double t, Eigen::Index zero_idx) {
        Eigen::VectorXd cand = sol.v;
        for (Eigen::Index r = 0; r < m; ++r)
          cand(active[r]) = v_act(r) + t * (v_new(r) - v_act(r));
        if (zero_idx >= 0) cand(zero_idx) = 0.0;
        const double o = qobj(cand);
        if (o < best_obj) {
          best_obj = o;
          best = cand;
        }
      };
      consider(1.0, -1);
      for (Eigen::Index r = 0; r < m; ++r) {
        const double from = v_act(r), to = v_new(r);
        if (from == 0.0 || (from > 0.0) == (to > 0.0)) continue;
        const double t = from / (from - to);
        if (t > 0.0 && t < 1.0) consider(t, active[r]);
      }

      if (!(best_obj < obj_cur)) {
        stalled = true;  // no strict descent available from here
        break;
      }
      sol.v = best;
      obj_cur = best_obj;
      sol.step_objectives.push_back(obj_cur);
      prune_zeros();
      std::fill(blocked.begin(), blocked.end(), false);

      // Step (d): stop refining once the active coordinates are stationary.
      g = gradient();
      bool stationary = true;
      for (Eigen::Index idx : active) {
        if (std::abs(g(idx) + alpha * static_cast<double>(theta[idx])) >
            kInnerTol) {
          stationary = false;
          break;
        }
      }
      if (stationary) break;
    }

    if (sol.capped) break;
    if (stalled) {
      if (pick < 0) break;  // cannot refine and nothing left to activate
      // Mark the coordinate that triggered this round so the activation scan
      // terminates; prune anything the stall left at zero.
      blocked[static_cast<std::size_t>(pick)] = true;
      prune_zeros();
    }
  }

  sol.iterations = steps;
  sol.objective = code_objective(p, sol.v);
  if (!sol.v.allFinite() || !std::isfinite(sol.objective))
    throw NonFinite("feature-sign search produced non-finite values");
  return sol;
}

inline CodeSolution solve_code(const CodeProblem& p) {
  detail::check_code_problem(p);
  return solve_code(p, p.u.transpose() * p.u);
}

/// Exhaustive oracle: enumerates all 3^K sign patterns, solves each
/// sign-constrained quadratic analytically, and keeps the feasible minimizer.
/// Only for small K (testing).
inline CodeSolution solve_code_bruteforce(const CodeProblem& p) {
  detail::check_code_problem(p);
  const Eigen::Index k = p.u.cols();
  if (k > 8) throw TooLarge("brute-force enumeration is limited to K <= 8");

  Eigen::MatrixXd a = p.u.transpose() * p.u;
  a.diagonal().array() += p.e;
  const Eigen::VectorXd b = 2.0 * p.u.transpose() * p.x - p.f;

  CodeSolution best;
  best.v = Eigen::VectorXd::Zero(k);
  best.objective = code_objective(p, best.v);

  std::vector<signed char> pattern(static_cast<std::size_t>(k), -1);
  const std::int64_t total = [&] {
    std::int64_t t = 1;
    for (Eigen::Index i = 0; i < k; ++i) t *= 3;
    return t;
  }();

  for (std::int64_t code = 0; code < total; ++code) {
    // Ternary counter over {-1, 0, +1}.
    std::int64_t rem = code;
    std::vector<Eigen::Index> act;
    for (Eigen::Index i = 0; i < k; ++i) {
      pattern[static_cast<std::size_t>(i)] =
          static_cast<signed char>(rem % 3 - 1);
      rem /= 3;
      if (pattern[static_cast<std::size_t>(i)] != 0) act.push_back(i);
    }
    if (act.empty()) continue;

    const Eigen::Index m = static_cast<Eigen::Index>(act.size());
    Eigen::MatrixXd a_act(m, m);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index s = 0; s < m; ++s) a_act(r, s) = a(act[r], act[s]);
      rhs(r) =
          0.5 * (b(act[r]) - p.alpha * static_cast<double>(pattern[act[r]]));
    }
    Eigen::LLT<Eigen::MatrixXd> llt(a_act);
    if (llt.info() != Eigen::Success) continue;
    const Eigen::VectorXd v_act = llt.solve(rhs);

    bool consistent = true;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (!(v_act(r) * static_cast<double>(pattern[act[r]]) > 0.0)) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;

    Eigen::VectorXd v = Eigen::VectorXd::Zero(k);
    for (Eigen::Index r = 0; r < m; ++r) v(act[r]) = v_act(r);
    const double obj = code_objective(p, v);
    if (obj < best.objective) {
      best.objective = obj;
      best.v = v;
    }
  }
  best.step_objectives.push_back(best.objective);
  return best;
}

}  // namespace crodomsc

#endif  // CRODOMSC_FEATURE_SIGN_HPP_
