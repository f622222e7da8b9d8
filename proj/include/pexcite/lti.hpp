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

#include "pexcite/excitation.hpp"
#include "pexcite/signal.hpp"

namespace pexcite {

/// Which signal a system exposes as its output.
enum class OutputClass {
  kState,       // y = x
  kStateInput,  // y = (x, u)
  kGeneral,
};

const char* to_string(OutputClass c);

struct SystemClassTag {
  OutputClass output = OutputClass::kGeneral;
  Domain domain = Domain::kDiscrete;
  bool single_input = false;

  std::string name() const;
};

/**
 * x+ = A x + B u (or dx/dt = A x + B u), y = C x + D u.
 * Immutable after construction; dimensions are validated once.
 */
class LtiSystem {
 public:
  /// Empty C defaults to I_n and empty D to zero.
  LtiSystem(Domain domain, Matrix A, Matrix B, Matrix C = Matrix(),
            Matrix D = Matrix());

  /// C = I_n, D = 0.
  static LtiSystem state_output(Domain domain, Matrix A, Matrix B);
  /// C = [I_n; 0], D = [0; I_m].
  static LtiSystem state_input_output(Domain domain, Matrix A, Matrix B);

  Domain domain() const { return domain_; }
  int n() const { return static_cast<int>(A_.rows()); }
  int m() const { return static_cast<int>(B_.cols()); }
  int p() const { return static_cast<int>(C_.rows()); }
  const Matrix& A() const { return A_; }
  const Matrix& B() const { return B_; }
  const Matrix& C() const { return C_; }
  const Matrix& D() const { return D_; }

  SystemClassTag classify() const;

 private:
  Domain domain_;
  Matrix A_, B_, C_, D_;
};

struct CertifyOptions {
  double stability_margin = 1e-9;
  double rank_tol = 1e-8;
};

struct Certificate {
  bool is_stable = false;
  /// Spectral radius (DT) or largest real part (CT).
  double spectral_abscissa = 0.0;
  /// Distance to the stability boundary; positive when stable.
  double stability_margin = 0.0;
  int reachability_rank = 0;
  bool is_reachable = false;
  /// Smallest k with rank [B, AB, ..., A^{k-1}B] = n.
  std::optional<int> nu;
  /// rank of [B, ..., A^{k-1}B] for k = 1..n
  std::vector<int> rank_profile;
  /// sigma_min / sigma_max of the full reachability matrix.
  double reachability_conditioning = 0.0;
};

Certificate certify(const LtiSystem& sys, const CertifyOptions& opts = {});

struct DtTrajectory {
  DiscreteSignal x;  // x_t for t = 0..L-1, aligned with u_t
  DiscreteSignal y;
};

struct CtTrajectory {
  SampledSignal x;
  SampledSignal y;
};

DtTrajectory simulate_dt(const LtiSystem& sys, const DiscreteSignal& u,
                         const Vector& x0);

/// Exact for multisine inputs: the tones are appended as oscillator states
/// and the augmented system is stepped with exp(M h). Samples at k*h for
/// k = 0..floor(horizon/h).
CtTrajectory simulate_ct(const LtiSystem& sys, const AnalyticSignal& u,
                         const Vector& x0, double horizon, double step);

struct ClosedLoopRun {
  DiscreteSignal u;
  DiscreteSignal x;
};

/// Co-simulates the plant with u_{t+1} = Kx x_t + Ku u_t + v_t.
ClosedLoopRun closed_loop_input_dt(const LtiSystem& sys, const Matrix& Kx,
                                   const Matrix& Ku, const DiscreteSignal& v,
                                   const Vector& u0, const Vector& x0, int L);

}  // namespace pexcite
