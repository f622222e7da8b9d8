/******************************************************************************
 * Copyright 2026 The pexcite Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pexcite/excitation.hpp"
#include "pexcite/lti.hpp"
#include "pexcite/signal.hpp"

namespace pexcite {

struct SynthesisRequest {
  int n = 1;
  int m = 1;
  Domain domain = Domain::kDiscrete;
  OutputClass cls = OutputClass::kState;
  /// Samples (DT) or seconds (CT). Zero selects 1000 samples / 3 windows.
  double horizon = 0.0;
  std::uint64_t seed = 1;
  /// Zero selects 4 * stack dimension + 8.
  int max_tones = 0;
  /// PE window; unset derives it from the tone spacing.
  std::optional<double> window;
  double step = 0.01;       // CT grid
  double omega_max = 2.0;   // CT band is [0.2, 1] * omega_max
  int ct_stride = 10;
};

/// Throws DimensionError on an invalid request.
void validate(const SynthesisRequest& req);

struct SynthesisResult {
  SynthesisRequest request;
  AnalyticSignal signal;    // closed form; DT samples it at integer t
  DiscreteSignal samples;   // DT only
  int stack_height = 0;
  int stack_dim = 0;
  int tones = 0;
  double offset = 0.0;      // low-discrepancy sequence start drawn from seed
  double window = 0.0;
  double horizon = 0.0;
  std::vector<double> frequencies;
  ExcitationReport certificate;
  /// Which set membership the certificate proves.
  std::string proven;
};

class SynthesisError : public std::runtime_error {
 public:
  SynthesisError(const std::string& what, SynthesisResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const SynthesisResult& best_attempt() const { return best_; }

 private:
  SynthesisResult best_;
};

/// Adds tones from ceil(stack_dim / 2) upward until the required stack passes
/// pe_check, or throws SynthesisError with the best attempt.
SynthesisResult synthesize_sr_input(const SynthesisRequest& req);

/// Re-runs pe_check on the required stack of a synthesized signal with the
/// same window, tolerance and grid.
ExcitationReport reverify(const SynthesisResult& res);

}  // namespace pexcite
