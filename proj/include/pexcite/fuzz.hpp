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
#include <random>
#include <string>
#include <vector>

#include "pexcite/conditions.hpp"
#include "pexcite/lti.hpp"
#include "pexcite/signal.hpp"

namespace pexcite {

using Rng = std::mt19937_64;

/// Haar-distributed orthogonal matrix (QR of a Gaussian with sign fix).
Matrix random_orthogonal(Rng& rng, int n);

struct RandomSystemOptions {
  /// Reject pairs whose reachability matrix has sigma_min/sigma_max below this.
  double min_conditioning = 3e-3;
  /// CT only: reject pairs whose controllability Gramian has
  /// lambda_min/lambda_max below this. Krylov conditioning depends on the
  /// time scale of A and misses weakly excitable modes in CT.
  double min_gramian_conditioning_ct = 1e-2;
  int max_attempts = 10000;
};

/// Eigenvalues uniform in [0.1, 0.9] (DT) or [-2, -0.1] (CT), random
/// orthogonal similarity, standard normal B.
LtiSystem random_system(Rng& rng, Domain domain, int n, int m,
                        OutputClass cls,
                        const RandomSystemOptions& opts = {});

/// Tone k sits at lo + (hi - lo) * frac(offset + k*g), g the golden ratio
/// conjugate.
std::vector<double> golden_frequencies(int count, double lo, double hi,
                                       double offset);
/// Tones dealt round-robin over the m channels, unit amplitude, zero phase.
AnalyticSignal round_robin_multisine(const std::vector<double>& freqs, int m);

struct FuzzOptions {
  RandomSystemOptions system;
  int dt_horizon = 1000;
  /// DT tone band in rad/sample. The random plants are low-pass, so tones
  /// near pi are attenuated far below the state's dominant components.
  double dt_band_lo = 0.05 * 3.141592653589793;
  double dt_band_hi = 0.5 * 3.141592653589793;
  double ct_horizon = 120.0;
  double ct_window = 50.0;
  double ct_step = 0.01;
  int ct_stride = 10;
  double hysteresis = 10.0;
};

struct FuzzTrial {
  int index = 0;
  int n = 0;
  int m = 0;
  OutputClass cls = OutputClass::kState;
  int tones = 0;
  ConditionResult sufficient;
  ConditionResult necessary;
};

struct FuzzSummary {
  Domain domain = Domain::kDiscrete;
  int trials = 0;
  int violations = 0;
  int marginal = 0;
  int sufficient_premise_true = 0;
  int necessary_premise_true = 0;
  std::vector<FuzzTrial> failures;  // trials that flagged a violation
};

/// Random certified system plus a multisine with enough tones for the
/// sufficient premise; both theorems are checked on every trial.
FuzzTrial fuzz_trial(Rng& rng, Domain domain, int index,
                     const FuzzOptions& opts = {});
FuzzSummary run_theorem_fuzz(Domain domain, int trials, std::uint64_t seed,
                             const FuzzOptions& opts = {});

struct EquivalenceSummary {
  int trials = 0;
  int agree = 0;
  int marginal = 0;   // disagreement inside the hysteresis band
  int conflicts = 0;  // disagreement outside it
  int stack_pe = 0;
};

/// Single-input, state-output DT systems fed by 1..n+1 tones: PE of Q^n(u)
/// and PE of x must agree outside the hysteresis band.
EquivalenceSummary run_si_equivalence(int trials, std::uint64_t seed,
                                      const FuzzOptions& opts = {});

}  // namespace pexcite
