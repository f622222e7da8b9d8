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

#include <optional>
#include <string>
#include <vector>

#include "pexcite/signal.hpp"

namespace pexcite {

enum class Domain { kDiscrete, kContinuous };

const char* to_string(Domain d);

/// Gram matrix of one window together with its spectrum.
struct GramWindow {
  double start = 0.0;   // sample index (DT) or time in seconds (CT)
  double length = 0.0;  // T in samples (DT) or seconds (CT)
  Matrix gram;
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // column j pairs with eigenvalues(j)

  double lambda_min() const;
};

struct PeOptions {
  /// Absolute margin threshold. Unset selects 1e-6 * T * M^2.
  std::optional<double> tol;
  /// Distance between consecutive window starts, in samples / grid points.
  int stride = 1;
  /// Keep the per-window lambda_min trace in the report.
  bool keep_trace = true;
};

struct ExcitationReport {
  Domain domain = Domain::kDiscrete;
  int dim = 0;
  bool is_pe = false;
  double margin = 0.0;  // min over window starts of lambda_min
  double window = 0.0;  // T in samples (DT) or seconds (CT)
  double tol = 0.0;
  double sup_norm = 0.0;
  int window_count = 0;
  double worst_start = 0.0;
  Vector deficient_direction;  // unit eigenvector of lambda_min at worst_start
  std::optional<int> ppe_degree;
  Matrix directions;  // ppe_degree x dim, orthonormal rows
  std::vector<double> lambda_trace;
  /// Verdicts cover the finite horizon only.
  bool finite_horizon = true;
};

struct RankTrace {
  double rank_tol = 1e-8;
  int start = 0;                  // first sample entering the cumulative sum
  std::vector<int> raw;           // numerical rank per prefix
  std::vector<int> ranks;         // running maximum of raw
  bool scale_dominated = false;   // raw dropped below the envelope somewhere

  /// Rank of the full-horizon Gram.
  int terminal() const { return raw.empty() ? 0 : raw.back(); }
};

struct DeficiencyWitness {
  double start = 0.0;
  Vector z;
  double eps_out = 0.0;  // max over the window of |z'w| and |z'dw|
  double lambda = 0.0;   // lambda_min of G_w + G_dw at start
};

/// Inclusive sum over tau = t..t+T of w_tau w_tau'.
GramWindow window_gram_dt(const DiscreteSignal& w, int t, int T);

/// Composite trapezoid of w w' over [t, t+T]. t and T are snapped to the grid.
GramWindow window_gram_ct(const SampledSignal& w, double t, double T);

/// 1e-6 * T * M^2, floored at the smallest normal double.
double default_tol(double T, double sup_norm);

ExcitationReport pe_check(const DiscreteSignal& w, int T,
                          const PeOptions& opts = {});
ExcitationReport pe_check(const SampledSignal& w, double T,
                          const PeOptions& opts = {});

/// Largest k such that the top-k eigendirections of the total Gram give a PE
/// projection. An estimate, exact for stationary multisines.
ExcitationReport ppe_degree(const DiscreteSignal& w, int T,
                            const PeOptions& opts = {});
ExcitationReport ppe_degree(const SampledSignal& w, double T,
                            const PeOptions& opts = {});

/// Eigenvectors of a symmetric matrix sorted by eigenvalue descending, ties
/// kept in solver order, each column signed so its first nonzero is positive.
void sorted_eigen(const Matrix& sym, Vector& values, Matrix& vectors);

/// Numerical rank of sum_{t=start}^{T} w_t w_t' for every T in [0, L).
/// Prefixes ending before `start` have rank 0.
RankTrace rank_trace(const DiscreteSignal& w, double rank_tol = 1e-8,
                     int start = 0);

int numerical_rank(const Matrix& sym_psd, double rank_tol);

/// eps = alpha / (4 T M), T the window length in samples (DT) or seconds
/// (CT). In CT every |dw|_inf <= eps keeps the margin >= alpha/2. The DT sum
/// has T+1 terms, so the kept margin is alpha (T-1)/(2T) - (T+1) eps^2,
/// positive for T >= 2.
double perturbation_margin(const ExcitationReport& report,
                           const DiscreteSignal& w);
double perturbation_margin(const ExcitationReport& report,
                           const SampledSignal& w);

/// Window and unit z along which both w and its derivative are small.
/// Throws PreconditionError if w is PE on the sampled grid.
DeficiencyWitness derivative_deficiency(const AnalyticSignal& w, double T,
                                        double step, double horizon,
                                        const PeOptions& opts = {});

}  // namespace pexcite
