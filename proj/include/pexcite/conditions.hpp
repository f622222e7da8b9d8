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

#include "pexcite/excitation.hpp"
#include "pexcite/lti.hpp"
#include "pexcite/signal.hpp"

namespace pexcite {

enum class Theorem { kSufficient, kNecessary };

const char* to_string(Theorem t);

struct CheckOptions {
  PeOptions pe;
  CertifyOptions certify;
  /// Width of the band around tol inside which disagreements are reported as
  /// marginal rather than as violations.
  double hysteresis = 10.0;
};

/// Sampling of a continuous-time run.
struct CtGrid {
  double step = 0.01;
  double horizon = 100.0;
};

struct ConditionResult {
  Theorem theorem = Theorem::kSufficient;
  SystemClassTag tag;
  Certificate certificate;
  int stack_height = 0;     // k in Q^k(u) or D^k(u)
  int required_degree = 0;  // necessary checks only
  int first_sample = 0;     // DT: leading samples dropped so stacks are full
  ExcitationReport premise;
  ExcitationReport conclusion;
  bool premise_holds = false;
  bool conclusion_holds = false;
  bool theorem_violation = false;
  bool marginal = false;
};

/// Premise: Q^n(u) PE (S_x) or Q^{n+1}(u) PE (S_xu). Conclusion: y PE.
/// Throws CertificateError("certificate failed: ...") on unstable or
/// unreachable systems.
ConditionResult check_sufficient_dt(const LtiSystem& sys,
                                    const DiscreteSignal& u, const Vector& x0,
                                    int T, const CheckOptions& opts = {});

/// Premise: y PE. Conclusion: ppe(Q^n(u)) >= n (S_x) or
/// ppe(Q^{n+1}(u)) >= n+m (S_xu).
ConditionResult check_necessary_dt(const LtiSystem& sys,
                                   const DiscreteSignal& u, const Vector& x0,
                                   int T, const CheckOptions& opts = {});

ConditionResult check_sufficient_ct(const LtiSystem& sys,
                                    const AnalyticSignal& u, const Vector& x0,
                                    double T, const CtGrid& grid,
                                    const CheckOptions& opts = {});

ConditionResult check_necessary_ct(const LtiSystem& sys,
                                   const AnalyticSignal& u, const Vector& x0,
                                   double T, const CtGrid& grid,
                                   const CheckOptions& opts = {});

enum class SrClass { kCertifiedSr, kCertifiedNotSr, kUndetermined };

const char* to_string(SrClass c);

struct SrVerdict {
  SrClass classification = SrClass::kUndetermined;
  SystemClassTag tag;
  std::string evidence;
  ExcitationReport inner;                  // PE of the stack
  std::optional<ExcitationReport> outer;   // PPE degree of the stack
};

/// Single-input classes: complete characterization by PE of the stack.
SrVerdict sr_membership_si(const DiscreteSignal& u, int n, int T,
                           OutputClass cls = OutputClass::kState,
                           const PeOptions& opts = {});
SrVerdict sr_membership_si(const AnalyticSignal& u, int n, double T,
                           const CtGrid& grid,
                           OutputClass cls = OutputClass::kState,
                           const PeOptions& opts = {});

/// Multi-input classes: inner set PE of the stack, outer set PPE degree.
SrVerdict sr_bounds_mi(const DiscreteSignal& u, int n, int T,
                       OutputClass cls = OutputClass::kState,
                       const PeOptions& opts = {});
SrVerdict sr_bounds_mi(const AnalyticSignal& u, int n, double T,
                       const CtGrid& grid,
                       OutputClass cls = OutputClass::kState,
                       const PeOptions& opts = {});

/// Required stack height and PPE degree for an (n, m, class) triple.
int stack_height(int n, OutputClass cls);
int required_ppe_degree(int n, int m, OutputClass cls);

/// Columns [first, L) of w.
DiscreteSignal tail(const DiscreteSignal& w, int first);

}  // namespace pexcite
