// crodomsc/encoder.hpp

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

#ifndef CRODOMSC_ENCODER_HPP_
#define CRODOMSC_ENCODER_HPP_

#include <Eigen/Dense>

#include "crodomsc/core.hpp"
#include "crodomsc/feature_sign.hpp"

namespace crodomsc {

/// Codes an unseen sample against a trained codebook. Test samples have no
/// row in the training regularizer, so the coupling terms vanish: this is
/// plain L1 coding with the model's alpha.
inline Eigen::VectorXd encode(const Eigen::VectorXd& x, const Model& model) {
  if (x.size() != model.dim())
    throw DimensionMismatch("encode: sample dimension does not match codebook");
  CodeProblem p{x, model.codebook, 0.0,
                Eigen::VectorXd::Zero(model.codewords()), model.hyper.alpha};
  return solve_code(p).v;
}

/// Columnwise encode; columns are independent.
inline Eigen::MatrixXd encode_batch(const Eigen::MatrixXd& x_test,
                                    const Model& model) {
  if (x_test.rows() != model.dim())
    throw DimensionMismatch(
        "encode_batch: sample dimension does not match codebook");
  const Eigen::Index k = model.codewords();
  Eigen::MatrixXd codes(k, x_test.cols());
  const Eigen::MatrixXd gram = model.codebook.transpose() * model.codebook;
  const Eigen::VectorXd zero_f = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i = 0; i < x_test.cols(); ++i) {
    CodeProblem p{x_test.col(i), model.codebook, 0.0, zero_f,
                  model.hyper.alpha};
    codes.col(i) = solve_code(p, gram).v;
  }
  return codes;
}

}  // namespace crodomsc

#endif  // CRODOMSC_ENCODER_HPP_
