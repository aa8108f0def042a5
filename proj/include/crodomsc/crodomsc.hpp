// crodomsc/crodomsc.hpp

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

#ifndef CRODOMSC_CRODOMSC_HPP_
#define CRODOMSC_CRODOMSC_HPP_

#include "crodomsc/classifier.hpp"
#include "crodomsc/codebook.hpp"
#include "crodomsc/core.hpp"
#include "crodomsc/encoder.hpp"
#include "crodomsc/feature_sign.hpp"
#include "crodomsc/io.hpp"
#include "crodomsc/regularizer.hpp"
#include "crodomsc/synthgen.hpp"
#include "crodomsc/trainer.hpp"

#endif  // CRODOMSC_CRODOMSC_HPP_
