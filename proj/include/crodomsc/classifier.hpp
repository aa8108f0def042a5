// crodomsc/classifier.hpp

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

#ifndef CRODOMSC_CLASSIFIER_HPP_
#define CRODOMSC_CLASSIFIER_HPP_

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "crodomsc/core.hpp"

namespace crodomsc {

/// Nearest-centroid classifier over sparse codes. Classes are kept sorted so
/// distance ties resolve to the lexicographically smallest id.
struct CentroidModel {
  std::vector<std::string> classes;
  Eigen::MatrixXd centroids;  // K x #classes, column order matches `classes`
};

/// Mean code per class over the labeled columns; unlabeled columns are ignored.
inline CentroidModel fit_centroids(const Eigen::MatrixXd& codes,
                                   const std::vector<Label>& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != codes.cols())
    throw DimensionMismatch("fit_centroids: label count does not match codes");

  std::map<std::string, std::pair<Eigen::VectorXd, int>> sums;
  for (Eigen::Index i = 0; i < codes.cols(); ++i) {
    if (!labels[static_cast<std::size_t>(i)].has_value()) continue;
    const std::string& cls = *labels[static_cast<std::size_t>(i)];
    auto it = sums.find(cls);
    if (it == sums.end()) {
      sums.emplace(cls, std::make_pair(Eigen::VectorXd(codes.col(i)), 1));
    } else {
      it->second.first += codes.col(i);
      ++it->second.second;
    }
  }
  if (sums.empty())
    throw NoLabeledSamples("fit_centroids: no labeled samples");

  CentroidModel model;
  model.centroids.resize(codes.rows(), static_cast<Eigen::Index>(sums.size()));
  Eigen::Index col = 0;
  for (const auto& [cls, acc] : sums) {
    model.classes.push_back(cls);
    model.centroids.col(col++) = acc.first / static_cast<double>(acc.second);
  }
  return model;
}

inline const std::string& predict(const CentroidModel& model,
                                  const Eigen::VectorXd& code) {
  if (code.size() != model.centroids.rows())
    throw DimensionMismatch("predict: code dimension does not match centroids");
  Eigen::Index best = 0;
  double best_dist = (code - model.centroids.col(0)).squaredNorm();
  for (Eigen::Index j = 1; j < model.centroids.cols(); ++j) {
    const double d = (code - model.centroids.col(j)).squaredNorm();
    if (d < best_dist) {
      best_dist = d;
      best = j;
    }
  }
  return model.classes[static_cast<std::size_t>(best)];
}

/// Fraction of exact matches.
inline double accuracy(const std::vector<std::string>& predictions,
                       const std::vector<std::string>& truths) {
  if (predictions.empty() || predictions.size() != truths.size())
    throw EmptyInput("accuracy: inputs must be nonempty and equal length");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    if (predictions[i] == truths[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

}  // namespace crodomsc

#endif  // CRODOMSC_CLASSIFIER_HPP_
