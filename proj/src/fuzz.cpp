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

#include "pexcite/fuzz.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "pexcite/errors.hpp"

namespace pexcite {

namespace {

constexpr double kGolden = 0.6180339887498949;

Matrix gaussian(Rng& rng, int r, int c) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix M(r, c);
  for (int j = 0; j < c; ++j) {
    for (int i = 0; i < r; ++i) M(i, j) = nd(rng);
  }
  return M;
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

int dt_window(int k, int m) { return std::max(4 * k * m, 40); }

// Tones needed so the required stack can be PE: ceil(km/2) + 1, and at
// least nm so the S_x stack is covered as well.
int tone_budget(int n, int m, OutputClass cls) {
  const int dim = stack_height(n, cls) * m;
  return std::max(n * m, (dim + 1) / 2 + 1);
}

// lambda_min/lambda_max of W solving A W + W A' + B B' = 0, through the
// Kronecker form; n is small here.
double gramian_conditioning_ct(const Matrix& A, const Matrix& B) {
  const int n = static_cast<int>(A.rows());
  const Matrix I = Matrix::Identity(n, n);
  Matrix K(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          K(i * n + j, k * n + l) = A(i, k) * I(j, l) + I(i, k) * A(j, l);
        }
      }
    }
  }
  const Matrix Q = B * B.transpose();
  const Vector q = -Q.reshaped<Eigen::RowMajor>();
  const Vector w = K.fullPivLu().solve(q);
  Matrix W = w.reshaped<Eigen::RowMajor>(n, n);
  W = 0.5 * (W + W.transpose()).eval();
  const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(W).eigenvalues();
  return ev(n - 1) > 0.0 ? ev(0) / ev(n - 1) : 0.0;
}

}  // namespace

Matrix random_orthogonal(Rng& rng, int n) {
  const Matrix G = gaussian(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  }
  return Q;
}

LtiSystem random_system(Rng& rng, Domain domain, int n, int m,
                        OutputClass cls, const RandomSystemOptions& opts) {
  const double lo = domain == Domain::kDiscrete ? 0.1 : -2.0;
  const double hi = domain == Domain::kDiscrete ? 0.9 : -0.1;
  std::uniform_real_distribution<double> ud(lo, hi);
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    Vector eig(n);
    for (int i = 0; i < n; ++i) eig(i) = ud(rng);
    const Matrix Q = random_orthogonal(rng, n);
    Matrix A = Q * eig.asDiagonal() * Q.transpose();
    Matrix B = gaussian(rng, n, m);
    LtiSystem sys = cls == OutputClass::kStateInput
                        ? LtiSystem::state_input_output(domain, A, B)
                        : LtiSystem::state_output(domain, A, B);
    const auto c = certify(sys);
    if (!c.is_stable || !c.is_reachable ||
        c.reachability_conditioning < opts.min_conditioning) {
      continue;
    }
    if (domain == Domain::kContinuous &&
        gramian_conditioning_ct(A, B) < opts.min_gramian_conditioning_ct) {
      continue;
    }
    return sys;
  }
  throw PreconditionError("no well-conditioned reachable pair found");
}

std::vector<double> golden_frequencies(int count, double lo, double hi,
                                       double offset) {
  std::vector<double> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    double frac = offset + k * kGolden;
    frac -= std::floor(frac);
    out.push_back(lo + (hi - lo) * frac);
  }
  return out;
}

AnalyticSignal round_robin_multisine(const std::vector<double>& freqs, int m) {
  if (m < 1) throw DimensionError("need at least one channel");
  std::vector<Channel> channels(m);
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    channels[k % m].tones.push_back({1.0, freqs[k], 0.0});
  }
  return AnalyticSignal(std::move(channels));
}

FuzzTrial fuzz_trial(Rng& rng, Domain domain, int index,
                     const FuzzOptions& opts) {
  FuzzTrial trial;
  trial.index = index;
  const bool dt = domain == Domain::kDiscrete;
  trial.n = uniform_int(rng, 1, dt ? 4 : 3);
  trial.m = uniform_int(rng, 1, 2);
  trial.cls = uniform_int(rng, 0, 1) ? OutputClass::kStateInput
                                     : OutputClass::kState;
  const auto sys = random_system(rng, domain, trial.n, trial.m, trial.cls,
                                 opts.system);
  trial.tones = tone_budget(trial.n, trial.m, trial.cls);
  Vector x0 = gaussian(rng, trial.n, 1);

  CheckOptions check;
  check.hysteresis = opts.hysteresis;
  check.pe.keep_trace = false;
  if (dt) {
    const double offset = std::uniform_real_distribution<double>(0, 1)(rng);
    const auto u = sample_integer(
        round_robin_multisine(golden_frequencies(trial.tones, opts.dt_band_lo,
                                                 opts.dt_band_hi, offset),
                              trial.m),
        opts.dt_horizon);
    const int T = dt_window(stack_height(trial.n, trial.cls), trial.m);
    trial.sufficient = check_sufficient_dt(sys, u, x0, T, check);
    trial.necessary = check_necessary_dt(sys, u, x0, T, check);
  } else {
    // Distinct tones drawn from a grid whose spacing the window resolves.
    std::vector<double> grid;
    for (double w = 0.5; w <= 2.0 + 1e-12; w += 0.25) grid.push_back(w);
    std::shuffle(grid.begin(), grid.end(), rng);
    trial.tones = std::min<int>(trial.tones, static_cast<int>(grid.size()));
    grid.resize(trial.tones);
    const auto u = round_robin_multisine(grid, trial.m);
    check.pe.stride = opts.ct_stride;
    const CtGrid g{opts.ct_step, opts.ct_horizon};
    trial.sufficient = check_sufficient_ct(sys, u, x0, opts.ct_window, g, check);
    trial.necessary = check_necessary_ct(sys, u, x0, opts.ct_window, g, check);
  }
  return trial;
}

FuzzSummary run_theorem_fuzz(Domain domain, int trials, std::uint64_t seed,
                             const FuzzOptions& opts) {
  Rng rng(seed);
  FuzzSummary s;
  s.domain = domain;
  for (int i = 0; i < trials; ++i) {
    FuzzTrial t = fuzz_trial(rng, domain, i, opts);
    ++s.trials;
    s.sufficient_premise_true += t.sufficient.premise_holds;
    s.necessary_premise_true += t.necessary.premise_holds;
    s.marginal += t.sufficient.marginal + t.necessary.marginal;
    if (t.sufficient.theorem_violation || t.necessary.theorem_violation) {
      ++s.violations;
      s.failures.push_back(std::move(t));
    }
  }
  return s;
}

EquivalenceSummary run_si_equivalence(int trials, std::uint64_t seed,
                                      const FuzzOptions& opts) {
  Rng rng(seed);
  EquivalenceSummary s;
  CheckOptions check;
  check.hysteresis = opts.hysteresis;
  check.pe.keep_trace = false;
  for (int i = 0; i < trials; ++i) {
    const int n = uniform_int(rng, 1, 4);
    const auto sys =
        random_system(rng, Domain::kDiscrete, n, 1, OutputClass::kState,
                      opts.system);
    const int tones = uniform_int(rng, 1, n + 1);
    const double offset = std::uniform_real_distribution<double>(0, 1)(rng);
    const auto u = sample_integer(
        round_robin_multisine(
            golden_frequencies(tones, opts.dt_band_lo, opts.dt_band_hi,
                               offset),
            1),
        opts.dt_horizon);
    const auto r = check_sufficient_dt(sys, u, Vector::Zero(n),
                                       dt_window(n, 1), check);
    ++s.trials;
    s.stack_pe += r.premise_holds;
    if (r.premise_holds == r.conclusion_holds) {
      ++s.agree;
      continue;
    }
    const double h = opts.hysteresis;
    const auto& on = r.premise_holds ? r.premise : r.conclusion;
    const auto& off = r.premise_holds ? r.conclusion : r.premise;
    if (on.margin >= h * on.tol && off.margin < off.tol / h) {
      ++s.conflicts;
    } else {
      ++s.marginal;
    }
  }
  return s;
}

}  // namespace pexcite
