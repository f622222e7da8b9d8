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
#include <filesystem>
#include <string>
#include <vector>

#include "pexcite/excitation.hpp"
#include "pexcite/lti.hpp"
#include "pexcite/signal.hpp"

namespace pexcite {

enum class CounterexampleId { kSufficiency, kNecessity };

/// kPrinted uses the stock feedback gain verbatim. kConsistent rebuilds
/// Kx from the annihilator construction that also yields the stock Ku.
enum class GainVariant { kPrinted, kConsistent };

const char* to_string(CounterexampleId id);
const char* to_string(GainVariant v);
CounterexampleId parse_counterexample_id(const std::string& s);
GainVariant parse_gain_variant(const std::string& s);

struct CounterexampleSpec {
  CounterexampleId id = CounterexampleId::kSufficiency;
  GainVariant variant = GainVariant::kPrinted;
  int n = 7;
  int m = 3;
  int horizon = 1000;
  Matrix A;
  Matrix B;
  // Sufficiency input: u_{t+1} = Kx x_t + Ku u_t + v1_t + v2_t, u_0 = 0.
  Matrix Kx;
  Matrix Ku;
  Vector v1_dir;
  Vector v2_dir;
  std::vector<double> v1_freqs;
  std::vector<double> v2_freqs;
  // Necessity input: one multisine per channel.
  AnalyticSignal multisine;
};

CounterexampleSpec counterexample_spec(
    CounterexampleId id, GainVariant variant = GainVariant::kPrinted);

/// 64-bit FNV-1a over the IEEE-754 bytes of every embedded constant.
std::uint64_t constants_digest(const CounterexampleSpec& spec);

struct CounterexampleRun {
  CounterexampleSpec spec;
  Certificate certificate;
  DiscreteSignal u;
  DiscreteSignal x;
  RankTrace r1_xu;    // (x, u)
  RankTrace rn_u;     // Q^n(u)
  RankTrace rnp1_u;   // Q^{n+1}(u)
  RankTrace rnu1_u;   // Q^{nu+1}(u)
  int nu = 0;
  /// The raw rank of the (x, u) Gram does not change over the last 500 samples.
  bool r1_plateau = false;
  double max_abs = 0.0;
  /// Spectral radius of [[A, B], [Kx, Ku]] (sufficiency only).
  double closed_loop_radius = 0.0;
  /// Premise Q^{n+1}(u) PE and conclusion (x, u) PE of the S_xu
  /// sufficiency check, judged by terminal rank.
  bool stack_np1_full = false;
  bool xu_full = false;
  bool refutes_condition = false;
  bool refutes_nu_conjecture = false;
  double seconds = 0.0;
};

/// Rank traces of the stacks accumulate from t = k-1, the first sample whose
/// stack column holds no padding.
CounterexampleRun run_counterexample(const CounterexampleSpec& spec,
                                     double rank_tol = 1e-8);

/// Writes r1_xu.csv, rn_u.csv (sufficiency) or rnp1_u.csv (necessity), and
/// summary.json into `dir`, creating it if needed.
std::vector<std::filesystem::path> emit_figures(
    const CounterexampleRun& run, const std::filesystem::path& dir);

}  // namespace pexcite
