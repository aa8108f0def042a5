// tools/crodomsc_main.cpp

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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "crodomsc/crodomsc.hpp"

namespace {

struct HyperFlags {
  crodomsc::Hyperparams hyper;

  void attach(CLI::App* cmd) {
    cmd->add_option("--k", hyper.k, "codebook size");
    cmd->add_option("--alpha", hyper.alpha, "L1 weight (> 0)");
    cmd->add_option("--beta", hyper.beta, "label-graph weight (>= 0)");
    cmd->add_option("--gamma", hyper.gamma, "domain-mean weight (>= 0)");
    cmd->add_option("--c", hyper.c, "squared-norm bound per codeword (> 0)");
    cmd->add_option("--iters", hyper.max_iters, "max outer iterations");
    cmd->add_option("--tol", hyper.tol, "relative objective-change stop threshold");
    cmd->add_option("--seed", hyper.seed, "RNG seed");
  }
};

std::string stop_reason_name(crodomsc::StopReason r) {
  return r == crodomsc::StopReason::kConverged ? "converged" : "max_iters";
}

int run_train(const std::string& features_path, const std::string& meta_path,
              const std::string& model_path, const std::string& codes_path,
              const std::string& history_path, const crodomsc::Hyperparams& hyper) {
  hyper.check();
  const crodomsc::Dataset ds = crodomsc::load_dataset(features_path, meta_path);
  const crodomsc::FitResult res = crodomsc::fit(ds, hyper);
  crodomsc::save_model(model_path, res.model);
  if (!codes_path.empty()) crodomsc::save_features(codes_path, res.codes);
  if (!history_path.empty()) crodomsc::save_history(history_path, res.history);
  std::cerr << "trained: " << res.history.records.size() - 1 << " iterations ("
            << stop_reason_name(res.stop_reason) << "), final objective "
            << res.history.records.back().total << std::endl;
  return 0;
}

int run_encode(const std::string& model_path, const std::string& features_path,
               const std::string& codes_path) {
  const crodomsc::Model model = crodomsc::load_model(model_path);
  const Eigen::MatrixXd x = crodomsc::load_features(features_path);
  const Eigen::MatrixXd codes = crodomsc::encode_batch(x, model);
  crodomsc::save_features(codes_path, codes);
  return 0;
}

int run_eval(const std::string& train_features, const std::string& train_meta,
             const std::string& test_features, const std::string& test_meta,
             const crodomsc::Hyperparams& hyper, const std::string& model_out,
             const std::string& codes_out, const std::string& history_out,
             const std::string& report_out) {
  hyper.check();
  const crodomsc::Dataset train = crodomsc::load_dataset(train_features, train_meta);
  const crodomsc::FitResult res = crodomsc::fit(train, hyper);

  // The test set is target-domain only, so it is loaded without the
  // cross-domain dataset validation.
  const Eigen::MatrixXd x_test = crodomsc::load_features(test_features);
  const auto [test_domains, test_labels] = crodomsc::load_meta(test_meta);
  if (static_cast<Eigen::Index>(test_domains.size()) != x_test.cols()) {
    throw crodomsc::ParseError("row count mismatch between test features and meta");
  }

  const Eigen::MatrixXd test_codes = crodomsc::encode_batch(x_test, res.model);
  const crodomsc::CentroidModel centroids =
      crodomsc::fit_centroids(res.codes, train.labels);

  std::vector<std::string> predictions, truths;
  for (Eigen::Index i = 0; i < test_codes.cols(); ++i) {
    const auto& label = test_labels[static_cast<std::size_t>(i)];
    if (!label.has_value()) continue;
    predictions.push_back(crodomsc::predict(centroids, test_codes.col(i)));
    truths.push_back(*label);
  }
  if (predictions.empty())
    throw crodomsc::EmptyInput("eval: test set has no labeled samples");

  const double acc = crodomsc::accuracy(predictions, truths);
  const Eigen::VectorXd pi = crodomsc::build_domain_indicator(train.domains);
  const double mmd = crodomsc::mmd_term(res.codes, pi);

  std::string report;
  report += "accuracy," + crodomsc::detail::format_double(acc) + "\n";
  report += "mmd," + crodomsc::detail::format_double(mmd) + "\n";
  std::cout << report;

  if (!model_out.empty()) crodomsc::save_model(model_out, res.model);
  if (!codes_out.empty()) crodomsc::save_features(codes_out, res.codes);
  if (!history_out.empty()) crodomsc::save_history(history_out, res.history);
  if (!report_out.empty()) {
    std::ofstream out(report_out);
    if (!out) throw crodomsc::ParseError("cannot write file: " + report_out);
    out << report;
  }
  return 0;
}

int run_synth(const crodomsc::SynthConfig& cfg, const std::string& train_features,
              const std::string& train_meta, const std::string& test_features,
              const std::string& test_meta, const std::string& dict_out) {
  const crodomsc::SynthData data = crodomsc::generate(cfg);
  crodomsc::save_features(train_features, data.train.features);
  crodomsc::save_meta(train_meta, data.train.domains, data.train.labels);
  crodomsc::save_features(test_features, data.test.features);
  crodomsc::save_meta(test_meta, data.test.domains, data.test.labels);
  if (!dict_out.empty()) crodomsc::save_features(dict_out, data.truth.u_true);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cross-domain sparse coding"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "learn a codebook and codes");
  std::string tr_features, tr_meta, tr_model, tr_codes, tr_history;
  train->add_option("--features", tr_features, "training feature file")->required();
  train->add_option("--meta", tr_meta, "training meta file")->required();
  train->add_option("--model", tr_model, "output model file")->required();
  train->add_option("--codes", tr_codes, "output codes file");
  train->add_option("--history", tr_history, "output per-iteration objective file");
  HyperFlags tr_hyper;
  tr_hyper.attach(train);

  // encode
  auto* encode = app.add_subcommand("encode", "code samples against a model");
  std::string en_model, en_features, en_codes;
  encode->add_option("--model", en_model, "model file")->required();
  encode->add_option("--features", en_features, "feature file")->required();
  encode->add_option("--codes", en_codes, "output codes file")->required();

  // eval
  auto* eval = app.add_subcommand(
      "eval", "train, encode a test set, report accuracy and code MMD");
  std::string ev_train_features, ev_train_meta, ev_test_features, ev_test_meta;
  std::string ev_model, ev_codes, ev_history, ev_report;
  eval->add_option("--train-features", ev_train_features)->required();
  eval->add_option("--train-meta", ev_train_meta)->required();
  eval->add_option("--test-features", ev_test_features)->required();
  eval->add_option("--test-meta", ev_test_meta)->required();
  eval->add_option("--model-out", ev_model, "write the trained model");
  eval->add_option("--codes-out", ev_codes, "write the training codes");
  eval->add_option("--history-out", ev_history, "write the objective history");
  eval->add_option("--report-out", ev_report, "write the key-value report");
  HyperFlags ev_hyper;
  ev_hyper.attach(eval);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic benchmark");
  crodomsc::SynthConfig cfg;
  std::string sy_train_features, sy_train_meta, sy_test_features, sy_test_meta;
  std::string sy_dict;
  synth->add_option("--train-features", sy_train_features)->required();
  synth->add_option("--train-meta", sy_train_meta)->required();
  synth->add_option("--test-features", sy_test_features)->required();
  synth->add_option("--test-meta", sy_test_meta)->required();
  synth->add_option("--dict-out", sy_dict, "write the generating dictionary");
  synth->add_option("--dim", cfg.dim, "feature dimension");
  synth->add_option("--atoms", cfg.atoms, "ground-truth dictionary size");
  synth->add_option("--ns", cfg.n_source, "source training samples");
  synth->add_option("--nt", cfg.n_target, "target training samples");
  synth->add_option("--ntest", cfg.n_test, "target test samples");
  synth->add_option("--classes", cfg.classes, "class count");
  synth->add_option("--sparsity", cfg.sparsity, "nonzeros per code");
  synth->add_option("--shift", cfg.shift, "target-domain offset norm");
  synth->add_option("--noise", cfg.noise, "additive noise scale");
  synth->add_option("--label-frac", cfg.target_label_fraction,
                    "labeled fraction of target training samples");
  synth->add_option("--seed", cfg.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(train))
      return run_train(tr_features, tr_meta, tr_model, tr_codes, tr_history,
                       tr_hyper.hyper);
    if (app.got_subcommand(encode))
      return run_encode(en_model, en_features, en_codes);
    if (app.got_subcommand(eval))
      return run_eval(ev_train_features, ev_train_meta, ev_test_features,
                      ev_test_meta, ev_hyper.hyper, ev_model, ev_codes,
                      ev_history, ev_report);
    if (app.got_subcommand(synth))
      return run_synth(cfg, sy_train_features, sy_train_meta, sy_test_features,
                       sy_test_meta, sy_dict);
  } catch (const crodomsc::InvalidHyperparams& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const crodomsc::InvalidConfig& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const crodomsc::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 2;
}
