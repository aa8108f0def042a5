// tests/acceptance_main.cpp

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
// End-to-end acceptance suite. Each criterion prints one pass/fail line; the
// exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crodomsc/crodomsc.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Suite {
  int failures = 0;

  void Report(int index, const std::string& name, bool pass,
              const std::string& detail) {
    std::printf("criterion %d (%s): %s  (%s)\n", index, name.c_str(),
                pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

// With e = 0 the quadratic is positive definite only for full-column-rank
// codebooks, so K stays at or below D in that case.
crodomsc::CodeProblem RandomCodeProblem(std::mt19937_64* rng, double e) {
  std::uniform_int_distribution<int> dd(1, 6);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> alpha_dist(0.05, 1.0);
  const int d = dd(*rng);
  std::uniform_int_distribution<int> dk(1, e > 0.0 ? 5 : std::min(d, 5));
  const int k = dk(*rng);
  crodomsc::CodeProblem p;
  p.u.resize(d, k);
  do {
    for (Eigen::Index i = 0; i < p.u.size(); ++i) p.u.data()[i] = gauss(*rng);
  } while (e == 0.0 &&
           Eigen::JacobiSVD<Eigen::MatrixXd>(p.u).singularValues().minCoeff() <
               0.05);
  p.x.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) p.x(i) = gauss(*rng);
  p.f.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) p.f(i) = gauss(*rng);
  p.e = e;
  p.alpha = alpha_dist(*rng);
  return p;
}

// --------------------------------------------------------------------------
// 1. Feature-sign solutions match exhaustive sign enumeration.
// --------------------------------------------------------------------------
void Criterion1(Suite* suite) {
  const auto start = Clock::now();
  std::mt19937_64 rng(20260801);
  int checked = 0;
  double worst_gap = 0.0, worst_dist = 0.0;
  bool ok = true;
  while (checked < 210) {
    for (double e : {0.0, 0.1, 1.0}) {
      const crodomsc::CodeProblem p = RandomCodeProblem(&rng, e);
      const crodomsc::CodeSolution fast = crodomsc::solve_code(p);
      const crodomsc::CodeSolution oracle = crodomsc::solve_code_bruteforce(p);
      const double gap = fast.objective - oracle.objective;
      const double dist = (fast.v - oracle.v).lpNorm<Eigen::Infinity>();
      worst_gap = std::max(worst_gap, gap);
      worst_dist = std::max(worst_dist, dist);
      if (gap > 1e-6 || dist > 1e-5) ok = false;
      ++checked;
    }
  }
  const double elapsed = Seconds(start);
  if (elapsed >= 30.0) ok = false;
  std::ostringstream os;
  os << checked << " problems, worst objective gap " << worst_gap
     << ", worst solution distance " << worst_dist << ", " << elapsed << " s";
  suite->Report(1, "oracle equivalence", ok, os.str());
}

// --------------------------------------------------------------------------
// 2. Orthonormal codebooks reduce to the soft-threshold closed form.
// --------------------------------------------------------------------------
void Criterion2(Suite* suite) {
  const auto start = Clock::now();
  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> alpha_dist(0.01, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 8, k = 5;
    Eigen::MatrixXd m(d, k);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = gauss(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    crodomsc::CodeProblem p;
    p.u = Eigen::MatrixXd(qr.householderQ()).leftCols(k);
    p.x.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) p.x(i) = gauss(rng);
    p.f = Eigen::VectorXd::Zero(k);
    p.e = 0.0;
    p.alpha = alpha_dist(rng);

    const Eigen::VectorXd target = p.u.transpose() * p.x;
    Eigen::VectorXd expected(k);
    for (int i = 0; i < k; ++i) {
      const double mag = std::abs(target(i)) - p.alpha / 2.0;
      expected(i) = mag > 0.0 ? (target(i) > 0 ? mag : -mag) : 0.0;
    }
    worst = std::max(
        worst,
        (crodomsc::solve_code(p).v - expected).lpNorm<Eigen::Infinity>());
  }
  const double elapsed = Seconds(start);
  const bool ok = worst <= 1e-8 && elapsed < 5.0;
  std::ostringstream os;
  os << "100 problems, worst deviation " << worst << ", " << elapsed << " s";
  suite->Report(2, "soft-threshold closed form", ok, os.str());
}

// --------------------------------------------------------------------------
// 3 + 8. Objective monotonicity (or flagged safeguard) and codebook
// feasibility/optimality over ten seeded default runs.
// --------------------------------------------------------------------------
void Criteria3And8(Suite* suite) {
  const auto start = Clock::now();
  bool monotone_ok = true;
  bool feasible_ok = true;
  double worst_kkt = 0.0, worst_excess = 0.0;
  int flagged_iterations = 0, total_iterations = 0;

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    crodomsc::SynthConfig cfg;  // defaults: D=20, 15 atoms, N_S=N_T=30
    cfg.seed = seed;
    const crodomsc::SynthData data = crodomsc::generate(cfg);
    crodomsc::Hyperparams hyper;  // alpha=0.15, beta=1, gamma=1, c=1
    hyper.k = 15;
    hyper.max_iters = 30;
    hyper.tol = 0.0;
    hyper.seed = seed;
    const crodomsc::FitResult res = crodomsc::fit(data.train, hyper);

    const auto& recs = res.history.records;
    for (std::size_t i = 1; i < recs.size(); ++i) {
      ++total_iterations;
      const bool flagged = recs[i].ridge_hits > 0 || recs[i].cap_hits > 0;
      if (flagged) ++flagged_iterations;
      const bool non_increasing = recs[i].total <= recs[i - 1].total + 1e-6;
      if (!non_increasing && !flagged) monotone_ok = false;
    }
    for (const auto& rec : recs) {
      worst_kkt = std::max(worst_kkt, rec.codebook_kkt);
      worst_excess =
          std::max(worst_excess, rec.codebook_max_norm_sq - hyper.c);
      if (rec.codebook_max_norm_sq > hyper.c + 1e-8) feasible_ok = false;
      if (rec.codebook_kkt > 1e-5) feasible_ok = false;
    }
  }
  const double elapsed = Seconds(start);
  if (elapsed >= 60.0) monotone_ok = false;
  {
    std::ostringstream os;
    os << "10 seeds x 30 iterations, " << flagged_iterations << "/"
       << total_iterations << " iterations carry safeguard flags, " << elapsed
       << " s";
    suite->Report(3, "objective monotonicity", monotone_ok, os.str());
  }
  {
    std::ostringstream os;
    os << "worst KKT residual " << worst_kkt
       << " (bound 1e-5), worst norm excess " << worst_excess
       << " (bound 1e-8)";
    suite->Report(8, "codebook feasibility and optimality", feasible_ok,
                  os.str());
  }
}

// --------------------------------------------------------------------------
// 4. With beta = gamma = 0 the trainer reproduces plain sparse coding.
// --------------------------------------------------------------------------
void Criterion4(Suite* suite) {
  crodomsc::SynthConfig cfg;
  cfg.seed = 3;
  const crodomsc::SynthData data = crodomsc::generate(cfg);
  crodomsc::Hyperparams hyper;
  hyper.k = 15;
  hyper.beta = 0.0;
  hyper.gamma = 0.0;
  hyper.max_iters = 20;
  hyper.tol = 0.0;
  hyper.seed = 11;
  const crodomsc::FitResult res = crodomsc::fit(data.train, hyper);

  // Reference plain sparse coding: the same alternation with no coupling
  // terms anywhere, written out against the public solver APIs.
  const Eigen::MatrixXd& x = data.train.features;
  auto [u, v] = crodomsc::init_model(x, hyper);
  const Eigen::MatrixXd zero_lap = Eigen::MatrixXd::Zero(x.cols(), x.cols());
  const Eigen::VectorXd pi =
      crodomsc::build_domain_indicator(data.train.domains);
  std::vector<double> totals;
  totals.push_back(
      crodomsc::objective(x, u, v, zero_lap, pi, hyper).total);
  const Eigen::VectorXd zero_f = Eigen::VectorXd::Zero(hyper.k);
  for (int t = 1; t <= hyper.max_iters; ++t) {
    const Eigen::MatrixXd gram = u.transpose() * u;
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      crodomsc::CodeProblem p{x.col(i), u, 0.0, zero_f, hyper.alpha};
      v.col(i) = crodomsc::solve_code(p, gram).v;
    }
    u = crodomsc::update_codebook({x, v, hyper.c, u});
    totals.push_back(
        crodomsc::objective(x, u, v, zero_lap, pi, hyper).total);
  }

  bool ok = res.history.records.size() == totals.size();
  double worst = 0.0;
  if (ok) {
    for (std::size_t i = 0; i < totals.size(); ++i) {
      const double diff = std::abs(res.history.records[i].total - totals[i]);
      worst = std::max(worst, diff);
      if (diff > 1e-6 * std::max(1.0, std::abs(totals[i]))) ok = false;
    }
  }
  std::ostringstream os;
  os << totals.size() << " trajectory points, worst deviation " << worst;
  suite->Report(4, "plain sparse-coding degeneration", ok, os.str());
}

// --------------------------------------------------------------------------
// 5. The MMD weight shrinks the final code-space domain gap.
// --------------------------------------------------------------------------
void Criterion5(Suite* suite) {
  int smaller = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    crodomsc::SynthConfig cfg;
    cfg.shift = 2.0;
    cfg.noise = 0.1;
    cfg.seed = seed;
    const crodomsc::SynthData data = crodomsc::generate(cfg);
    const Eigen::VectorXd pi =
        crodomsc::build_domain_indicator(data.train.domains);

    crodomsc::Hyperparams hyper;
    hyper.k = 15;
    hyper.beta = 0.0;
    hyper.max_iters = 30;
    hyper.tol = 0.0;
    hyper.seed = seed;

    hyper.gamma = 1.0;
    const double with_mmd =
        crodomsc::mmd_term(crodomsc::fit(data.train, hyper).codes, pi);
    hyper.gamma = 0.0;
    const double without_mmd =
        crodomsc::mmd_term(crodomsc::fit(data.train, hyper).codes, pi);
    if (with_mmd < without_mmd) ++smaller;
  }
  std::ostringstream os;
  os << "final ||V pi||^2 strictly smaller with gamma=1 on " << smaller
     << "/10 seeds (need >= 9)";
  suite->Report(5, "MMD ablation", smaller >= 9, os.str());
}

// --------------------------------------------------------------------------
// 6. The label regularizer tightens intra-class code geometry.
// --------------------------------------------------------------------------
double IntraInterRatio(const Eigen::MatrixXd& codes,
                       const std::vector<crodomsc::Label>& labels) {
  double intra = 0.0, inter = 0.0;
  int n_intra = 0, n_inter = 0;
  for (Eigen::Index i = 0; i < codes.cols(); ++i) {
    if (!labels[static_cast<std::size_t>(i)].has_value()) continue;
    for (Eigen::Index j = i + 1; j < codes.cols(); ++j) {
      if (!labels[static_cast<std::size_t>(j)].has_value()) continue;
      const double d = (codes.col(i) - codes.col(j)).norm();
      if (*labels[static_cast<std::size_t>(i)] ==
          *labels[static_cast<std::size_t>(j)]) {
        intra += d;
        ++n_intra;
      } else {
        inter += d;
        ++n_inter;
      }
    }
  }
  return (intra / n_intra) / (inter / n_inter);
}

void Criterion6(Suite* suite) {
  int better = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    crodomsc::SynthConfig cfg;
    cfg.seed = seed;
    const crodomsc::SynthData data = crodomsc::generate(cfg);

    crodomsc::Hyperparams hyper;
    hyper.k = 15;
    hyper.gamma = 0.0;
    hyper.max_iters = 30;
    hyper.tol = 0.0;
    hyper.seed = seed;

    hyper.beta = 1.0;
    const double with_labels = IntraInterRatio(
        crodomsc::fit(data.train, hyper).codes, data.train.labels);
    hyper.beta = 0.0;
    const double without_labels = IntraInterRatio(
        crodomsc::fit(data.train, hyper).codes, data.train.labels);
    if (with_labels < without_labels) ++better;
  }
  std::ostringstream os;
  os << "intra/inter distance ratio smaller with beta=1 on " << better
     << "/10 seeds (need >= 8)";
  suite->Report(6, "label ablation", better >= 8, os.str());
}

// --------------------------------------------------------------------------
// 7. End-to-end: cross-domain codes classify shifted target data at least
// as well as plain sparse coding. The cross-domain arm runs the MMD
// regularizer (beta stays 0: the indefinite +-1 label graph makes the
// joint objective unbounded at beta=1 and wrecks held-out coding).
// --------------------------------------------------------------------------
double EvalAccuracy(const crodomsc::SynthData& data,
                    const crodomsc::Hyperparams& hyper) {
  const crodomsc::FitResult res = crodomsc::fit(data.train, hyper);
  const Eigen::MatrixXd test_codes =
      crodomsc::encode_batch(data.test.features, res.model);
  const crodomsc::CentroidModel centroids =
      crodomsc::fit_centroids(res.codes, data.train.labels);
  std::vector<std::string> predictions, truths;
  for (Eigen::Index i = 0; i < test_codes.cols(); ++i) {
    predictions.push_back(crodomsc::predict(centroids, test_codes.col(i)));
    truths.push_back(*data.test.labels[static_cast<std::size_t>(i)]);
  }
  return crodomsc::accuracy(predictions, truths);
}

void Criterion7(Suite* suite) {
  const auto start = Clock::now();
  int at_least = 0, strict = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    crodomsc::SynthConfig cfg;
    cfg.shift = 2.0;
    cfg.classes = 4;
    cfg.target_label_fraction = 0.25;
    cfg.noise = 0.6;
    cfg.seed = seed;
    const crodomsc::SynthData data = crodomsc::generate(cfg);

    crodomsc::Hyperparams hyper;
    hyper.k = 15;
    hyper.max_iters = 30;
    hyper.tol = 0.0;
    hyper.seed = seed;

    hyper.beta = 0.0;
    hyper.gamma = 3.0;
    const double crodomsc_acc = EvalAccuracy(data, hyper);
    hyper.gamma = 0.0;
    const double plain_acc = EvalAccuracy(data, hyper);
    if (crodomsc_acc >= plain_acc) ++at_least;
    if (crodomsc_acc > plain_acc) ++strict;
  }
  const double elapsed = Seconds(start);
  const bool ok = at_least >= 8 && elapsed < 180.0;
  std::ostringstream os;
  os << "accuracy >= plain on " << at_least << "/10 seeds (" << strict
     << " strict wins, need >= 8), " << elapsed << " s";
  suite->Report(7, "end-to-end adaptation", ok, os.str());
}

// --------------------------------------------------------------------------
// 9. Identical eval invocations produce byte-identical artifacts.
// --------------------------------------------------------------------------
std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void Criterion9(Suite* suite) {
  namespace fs = std::filesystem;
  const fs::path dir = "acceptance_tmp";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = CRODOMSC_CLI_PATH;

  auto run = [&](const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status) == 0;
  };

  const std::string synth =
      cli + " synth --train-features " + (dir / "trf.csv").string() +
      " --train-meta " + (dir / "trm.csv").string() + " --test-features " +
      (dir / "tef.csv").string() + " --test-meta " + (dir / "tem.csv").string() +
      " --shift 2.0 --seed 7";
  bool ok = run(synth);

  const std::vector<std::string> artifacts = {"model", "codes.csv",
                                              "history.csv", "report.csv"};
  for (int round = 1; round <= 2 && ok; ++round) {
    std::string cmd =
        cli + " eval --train-features " + (dir / "trf.csv").string() +
        " --train-meta " + (dir / "trm.csv").string() + " --test-features " +
        (dir / "tef.csv").string() + " --test-meta " +
        (dir / "tem.csv").string() + " --k 12 --iters 10 --seed 7";
    cmd += " --model-out " + (dir / ("r" + std::to_string(round) + "model")).string();
    cmd += " --codes-out " +
           (dir / ("r" + std::to_string(round) + "codes.csv")).string();
    cmd += " --history-out " +
           (dir / ("r" + std::to_string(round) + "history.csv")).string();
    cmd += " --report-out " +
           (dir / ("r" + std::to_string(round) + "report.csv")).string();
    ok = run(cmd);
  }

  int identical = 0;
  if (ok) {
    for (const std::string& name : artifacts) {
      const std::string a = ReadFile(dir / ("r1" + name));
      const std::string b = ReadFile(dir / ("r2" + name));
      if (!a.empty() && a == b) ++identical;
    }
  }
  fs::remove_all(dir);
  std::ostringstream os;
  os << identical << "/4 artifacts byte-identical across repeated runs";
  suite->Report(9, "CLI determinism", ok && identical == 4, os.str());
}

}  // namespace

int main() {
  Suite suite;
  Criterion1(&suite);
  Criterion2(&suite);
  Criteria3And8(&suite);
  Criterion4(&suite);
  Criterion5(&suite);
  Criterion6(&suite);
  Criterion7(&suite);
  Criterion9(&suite);
  if (suite.failures == 0) std::printf("all acceptance criteria passed\n");
  else std::printf("%d acceptance criteria failed\n", suite.failures);
  return suite.failures;
}
