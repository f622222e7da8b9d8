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

#include "pexcite/lti.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "pexcite/errors.hpp"

namespace pexcite {

namespace {

std::string shape(const Matrix& M) {
  return std::to_string(M.rows()) + "x" + std::to_string(M.cols());
}

void require_dims(const Vector& v, int n, const char* what) {
  if (v.size() != n) {
    throw DimensionError(std::string(what) + " has size " +
                         std::to_string(v.size()) + ", expected " +
                         std::to_string(n));
  }
}

}  // namespace

const char* to_string(OutputClass c) {
  switch (c) {
    case OutputClass::kState:
      return "x";
    case OutputClass::kStateInput:
      return "xu";
    default:
      return "general";
  }
}

std::string SystemClassTag::name() const {
  std::string out = output == OutputClass::kState        ? "S_x"
                    : output == OutputClass::kStateInput ? "S_xu"
                                                         : "general";
  out += domain == Domain::kDiscrete ? "/dt" : "/ct";
  out += single_input ? "/si" : "/mi";
  return out;
}

LtiSystem::LtiSystem(Domain domain, Matrix A, Matrix B, Matrix C, Matrix D)
    : domain_(domain),
      A_(std::move(A)),
      B_(std::move(B)),
      C_(std::move(C)),
      D_(std::move(D)) {
  const auto n = A_.rows();
  if (n < 1 || A_.cols() != n) {
    throw DimensionError("A must be square and non-empty, got " + shape(A_));
  }
  if (B_.rows() != n || B_.cols() < 1) {
    throw DimensionError("B must be " + std::to_string(n) + "xm, got " +
                         shape(B_));
  }
  if (C_.size() == 0) C_ = Matrix::Identity(n, n);
  if (D_.size() == 0) D_ = Matrix::Zero(C_.rows(), B_.cols());
  if (C_.cols() != n) {
    throw DimensionError("C must have " + std::to_string(n) +
                         " columns, got " + shape(C_));
  }
  if (D_.rows() != C_.rows() || D_.cols() != B_.cols()) {
    throw DimensionError("D must be " + std::to_string(C_.rows()) + "x" +
                         std::to_string(B_.cols()) + ", got " + shape(D_));
  }
  if (!A_.allFinite() || !B_.allFinite() || !C_.allFinite() ||
      !D_.allFinite()) {
    throw DimensionError("system matrices contain non-finite entries");
  }
}

LtiSystem LtiSystem::state_output(Domain domain, Matrix A, Matrix B) {
  const auto n = A.rows();
  const auto m = B.cols();
  return LtiSystem(domain, std::move(A), std::move(B), Matrix::Identity(n, n),
                   Matrix::Zero(n, m));
}

LtiSystem LtiSystem::state_input_output(Domain domain, Matrix A, Matrix B) {
  const auto n = A.rows();
  const auto m = B.cols();
  Matrix C = Matrix::Zero(n + m, n);
  C.topRows(n).setIdentity();
  Matrix D = Matrix::Zero(n + m, m);
  D.bottomRows(m).setIdentity();
  return LtiSystem(domain, std::move(A), std::move(B), std::move(C),
                   std::move(D));
}

SystemClassTag LtiSystem::classify() const {
  SystemClassTag tag;
  tag.domain = domain_;
  tag.single_input = m() == 1;
  const int n = this->n();
  const int m = this->m();
  if (p() == n && C_ == Matrix::Identity(n, n) && D_.isZero(0.0)) {
    tag.output = OutputClass::kState;
  } else if (p() == n + m) {
    Matrix Cref = Matrix::Zero(n + m, n);
    Cref.topRows(n).setIdentity();
    Matrix Dref = Matrix::Zero(n + m, m);
    Dref.bottomRows(m).setIdentity();
    if (C_ == Cref && D_ == Dref) tag.output = OutputClass::kStateInput;
  }
  return tag;
}

Certificate certify(const LtiSystem& sys, const CertifyOptions& opts) {
  Certificate c;
  const int n = sys.n();
  const int m = sys.m();
  const Eigen::VectorXcd eig = sys.A().eigenvalues();
  if (sys.domain() == Domain::kDiscrete) {
    c.spectral_abscissa = eig.cwiseAbs().maxCoeff();
    c.stability_margin = 1.0 - c.spectral_abscissa;
  } else {
    c.spectral_abscissa = eig.real().maxCoeff();
    c.stability_margin = -c.spectral_abscissa;
  }
  c.is_stable = c.stability_margin > opts.stability_margin;

  Matrix R(n, static_cast<Eigen::Index>(n) * m);
  Matrix block = sys.B();
  for (int k = 0; k < n; ++k) {
    R.middleCols(static_cast<Eigen::Index>(k) * m, m) = block;
    block = sys.A() * block;
  }
  const Vector sv_full = R.jacobiSvd().singularValues();
  const double top = sv_full.size() ? sv_full(0) : 0.0;
  const double cut = opts.rank_tol * top;
  c.reachability_conditioning =
      top > 0.0 ? sv_full(std::min<Eigen::Index>(n, sv_full.size()) - 1) / top
                : 0.0;
  for (int k = 1; k <= n; ++k) {
    const Matrix Rk = R.leftCols(static_cast<Eigen::Index>(k) * m);
    const Vector sv = Rk.jacobiSvd().singularValues();
    int rank = 0;
    if (top > 0.0) {
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) >= cut) ++rank;
      }
    }
    c.rank_profile.push_back(rank);
    if (rank == n && !c.nu) c.nu = k;
  }
  c.reachability_rank = c.rank_profile.back();
  c.is_reachable = c.reachability_rank == n;
  return c;
}

DtTrajectory simulate_dt(const LtiSystem& sys, const DiscreteSignal& u,
                         const Vector& x0) {
  if (sys.domain() != Domain::kDiscrete) {
    throw DimensionError("simulate_dt requires a discrete-time system");
  }
  if (u.dim() != sys.m()) {
    throw DimensionError("input has " + std::to_string(u.dim()) +
                         " channels, system expects " +
                         std::to_string(sys.m()));
  }
  require_dims(x0, sys.n(), "x0");
  const int L = u.length();
  Matrix X(sys.n(), L);
  Vector x = x0;
  for (int t = 0; t < L; ++t) {
    X.col(t) = x;
    x = sys.A() * x + sys.B() * u.column(t);
  }
  Matrix Y = sys.C() * X + sys.D() * u.data();
  return {DiscreteSignal(std::move(X), u.origin()),
          DiscreteSignal(std::move(Y), u.origin())};
}

CtTrajectory simulate_ct(const LtiSystem& sys, const AnalyticSignal& u,
                         const Vector& x0, double horizon, double step) {
  if (sys.domain() != Domain::kContinuous) {
    throw DimensionError("simulate_ct requires a continuous-time system");
  }
  if (u.dim() != sys.m()) {
    throw DimensionError("input has " + std::to_string(u.dim()) +
                         " channels, system expects " +
                         std::to_string(sys.m()));
  }
  require_dims(x0, sys.n(), "x0");
  if (!(step > 0.0) || !(horizon >= 0.0)) {
    throw DimensionError("step must be positive and horizon non-negative");
  }
  const int n = sys.n();
  const int m = sys.m();
  const int tones = u.tone_count();
  // z = (x, s_1, c_1, ..., s_K, c_K, 1) with s = sin(wt+p), c = cos(wt+p).
  const int N = n + 2 * tones + 1;
  Matrix M = Matrix::Zero(N, N);
  Matrix E = Matrix::Zero(m, N);  // u(t) = E z(t)
  Vector z0 = Vector::Zero(N);
  z0.head(n) = x0;
  z0(N - 1) = 1.0;
  int k = n;
  for (int j = 0; j < m; ++j) {
    const auto& ch = u.channels()[j];
    E(j, N - 1) = ch.offset;
    for (const auto& tone : ch.tones) {
      M(k, k + 1) = tone.frequency;
      M(k + 1, k) = -tone.frequency;
      E(j, k) = tone.amplitude;
      z0(k) = std::sin(tone.phase);
      z0(k + 1) = std::cos(tone.phase);
      k += 2;
    }
  }
  M.topLeftCorner(n, n) = sys.A();
  M.topRows(n) += sys.B() * E;
  const Matrix Phi = (M * step).exp();

  const int L = static_cast<int>(std::floor(horizon / step + 1e-9)) + 1;
  Matrix X(n, L);
  Matrix U(m, L);
  Vector z = z0;
  for (int i = 0; i < L; ++i) {
    X.col(i) = z.head(n);
    U.col(i) = E * z;
    z = Phi * z;
  }
  Matrix Y = sys.C() * X + sys.D() * U;
  return {SampledSignal(std::move(X), step, 0.0),
          SampledSignal(std::move(Y), step, 0.0)};
}

ClosedLoopRun closed_loop_input_dt(const LtiSystem& sys, const Matrix& Kx,
                                   const Matrix& Ku, const DiscreteSignal& v,
                                   const Vector& u0, const Vector& x0, int L) {
  const int n = sys.n();
  const int m = sys.m();
  if (Kx.rows() != m || Kx.cols() != n) {
    throw DimensionError("Kx must be " + std::to_string(m) + "x" +
                         std::to_string(n) + ", got " + shape(Kx));
  }
  if (Ku.rows() != m || Ku.cols() != m) {
    throw DimensionError("Ku must be " + std::to_string(m) + "x" +
                         std::to_string(m) + ", got " + shape(Ku));
  }
  if (v.dim() != m) throw DimensionError("v must have m channels");
  if (L < 1 || v.length() < L - 1) {
    throw DimensionError("v must cover at least L-1 samples");
  }
  require_dims(u0, m, "u0");
  require_dims(x0, n, "x0");
  Matrix U(m, L);
  Matrix X(n, L);
  Vector x = x0;
  Vector u = u0;
  for (int t = 0; t < L; ++t) {
    X.col(t) = x;
    U.col(t) = u;
    if (t + 1 < L) {
      Vector u_next = Kx * x + Ku * u + v.column(t);
      x = sys.A() * x + sys.B() * u;
      u = std::move(u_next);
    }
  }
  return {DiscreteSignal(std::move(U)), DiscreteSignal(std::move(X))};
}

}  // namespace pexcite
