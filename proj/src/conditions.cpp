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

#include "pexcite/conditions.hpp"

#include <cmath>
#include <string>

#include "pexcite/errors.hpp"

namespace pexcite {

namespace {

void require_certified(const Certificate& c) {
  if (!c.is_stable) throw CertificateError("certificate failed: stability");
  if (!c.is_reachable) {
    throw CertificateError("certificate failed: reachability");
  }
}

OutputClass output_class(const SystemClassTag& tag) {
  if (tag.output == OutputClass::kGeneral) {
    throw DimensionError(
        "theorem checks need a state (C = I, D = 0) or state-input output");
  }
  return tag.output;
}

ConditionResult prepare(const LtiSystem& sys, Theorem th, Domain domain,
                        const CheckOptions& opts) {
  if (sys.domain() != domain) {
    throw DimensionError(std::string("system is ") + to_string(sys.domain()) +
                         ", check expects " + to_string(domain));
  }
  ConditionResult r;
  r.theorem = th;
  r.tag = sys.classify();
  output_class(r.tag);
  r.certificate = certify(sys, opts.certify);
  require_certified(r.certificate);
  r.stack_height = stack_height(sys.n(), r.tag.output);
  r.required_degree = required_ppe_degree(sys.n(), sys.m(), r.tag.output);
  return r;
}

bool clearly_holds(const ExcitationReport& rep, double h) {
  return rep.margin >= h * rep.tol;
}

bool clearly_fails(const ExcitationReport& rep, double h) {
  return rep.margin < rep.tol / h;
}

void finish_sufficient(ConditionResult& r, double h) {
  r.premise_holds = r.premise.is_pe;
  r.conclusion_holds = r.conclusion.is_pe;
  r.theorem_violation =
      clearly_holds(r.premise, h) && clearly_fails(r.conclusion, h);
  r.marginal =
      r.premise_holds && !r.conclusion_holds && !r.theorem_violation;
}

template <class Sig, class Len>
void finish_necessary(ConditionResult& r, const Sig& stack_sig, Len T,
                      const CheckOptions& opts) {
  r.premise_holds = r.premise.is_pe;
  r.conclusion_holds = r.conclusion.ppe_degree.value_or(0) >= r.required_degree;
  if (clearly_holds(r.premise, opts.hysteresis) && !r.conclusion_holds) {
    PeOptions relaxed = opts.pe;
    relaxed.tol = r.conclusion.tol / opts.hysteresis;
    relaxed.keep_trace = false;
    const auto loose = ppe_degree(stack_sig, T, relaxed);
    r.theorem_violation = loose.ppe_degree.value_or(0) < r.required_degree;
  }
  r.marginal =
      r.premise_holds && !r.conclusion_holds && !r.theorem_violation;
}

SampledSignal on_grid(const AnalyticSignal& w, const CtGrid& grid) {
  const int L = static_cast<int>(std::floor(grid.horizon / grid.step + 1e-9)) + 1;
  return sample(w, grid.step, L);
}

}  // namespace

const char* to_string(Theorem t) {
  return t == Theorem::kSufficient ? "sufficient" : "necessary";
}

const char* to_string(SrClass c) {
  switch (c) {
    case SrClass::kCertifiedSr:
      return "certified_SR";
    case SrClass::kCertifiedNotSr:
      return "certified_not_SR";
    default:
      return "undetermined";
  }
}

int stack_height(int n, OutputClass cls) {
  return cls == OutputClass::kStateInput ? n + 1 : n;
}

int required_ppe_degree(int n, int m, OutputClass cls) {
  return cls == OutputClass::kStateInput ? n + m : n;
}

DiscreteSignal tail(const DiscreteSignal& w, int first) {
  if (first < 0 || first > w.length()) {
    throw RangeError("tail start outside signal");
  }
  Matrix data = w.data().rightCols(w.length() - first);
  return DiscreteSignal(std::move(data), w.origin() + first);
}

ConditionResult check_sufficient_dt(const LtiSystem& sys,
                                    const DiscreteSignal& u, const Vector& x0,
                                    int T, const CheckOptions& opts) {
  ConditionResult r =
      prepare(sys, Theorem::kSufficient, Domain::kDiscrete, opts);
  const auto run = simulate_dt(sys, u, x0);
  r.first_sample = r.stack_height - 1;
  const auto stack = tail(multi_shift(u, r.stack_height), r.first_sample);
  r.premise = pe_check(stack, T, opts.pe);
  r.conclusion = pe_check(tail(run.y, r.first_sample), T, opts.pe);
  finish_sufficient(r, opts.hysteresis);
  return r;
}

ConditionResult check_necessary_dt(const LtiSystem& sys,
                                   const DiscreteSignal& u, const Vector& x0,
                                   int T, const CheckOptions& opts) {
  ConditionResult r = prepare(sys, Theorem::kNecessary, Domain::kDiscrete, opts);
  const auto run = simulate_dt(sys, u, x0);
  r.first_sample = r.stack_height - 1;
  const auto stack = tail(multi_shift(u, r.stack_height), r.first_sample);
  r.premise = pe_check(tail(run.y, r.first_sample), T, opts.pe);
  r.conclusion = ppe_degree(stack, T, opts.pe);
  finish_necessary(r, stack, T, opts);
  return r;
}

ConditionResult check_sufficient_ct(const LtiSystem& sys,
                                    const AnalyticSignal& u, const Vector& x0,
                                    double T, const CtGrid& grid,
                                    const CheckOptions& opts) {
  ConditionResult r =
      prepare(sys, Theorem::kSufficient, Domain::kContinuous, opts);
  const auto run = simulate_ct(sys, u, x0, grid.horizon, grid.step);
  const auto stack = on_grid(multi_derivative(u, r.stack_height), grid);
  r.premise = pe_check(stack, T, opts.pe);
  r.conclusion = pe_check(run.y, T, opts.pe);
  finish_sufficient(r, opts.hysteresis);
  return r;
}

ConditionResult check_necessary_ct(const LtiSystem& sys,
                                   const AnalyticSignal& u, const Vector& x0,
                                   double T, const CtGrid& grid,
                                   const CheckOptions& opts) {
  ConditionResult r =
      prepare(sys, Theorem::kNecessary, Domain::kContinuous, opts);
  const auto run = simulate_ct(sys, u, x0, grid.horizon, grid.step);
  const auto stack = on_grid(multi_derivative(u, r.stack_height), grid);
  r.premise = pe_check(run.y, T, opts.pe);
  r.conclusion = ppe_degree(stack, T, opts.pe);
  finish_necessary(r, stack, T, opts);
  return r;
}

namespace {

SystemClassTag sr_tag(OutputClass cls, Domain d, bool si) {
  SystemClassTag tag;
  tag.output = cls;
  tag.domain = d;
  tag.single_input = si;
  return tag;
}

void verdict_si(SrVerdict& v, int k) {
  if (v.inner.is_pe) {
    v.classification = SrClass::kCertifiedSr;
    v.evidence = "stack of height " + std::to_string(k) + " is PE";
  } else {
    v.classification = SrClass::kCertifiedNotSr;
    v.evidence = "stack of height " + std::to_string(k) + " is not PE";
  }
}

template <class Sig, class Len>
void verdict_mi(SrVerdict& v, const Sig& stack_sig, Len T, int k, int degree,
                const PeOptions& opts) {
  if (v.inner.is_pe) {
    v.classification = SrClass::kCertifiedSr;
    v.evidence = "inner set: stack of height " + std::to_string(k) + " is PE";
    return;
  }
  v.outer = ppe_degree(stack_sig, T, opts);
  const int got = v.outer->ppe_degree.value_or(0);
  if (got < degree) {
    v.classification = SrClass::kCertifiedNotSr;
    v.evidence = "outer set: PPE degree " + std::to_string(got) + " < " +
                 std::to_string(degree);
  } else {
    v.classification = SrClass::kUndetermined;
    v.evidence = "stack not PE but PPE degree " + std::to_string(got) +
                 " >= " + std::to_string(degree);
  }
}

void require_n(int n) {
  if (n < 1) throw DimensionError("n must be >= 1");
}

}  // namespace

SrVerdict sr_membership_si(const DiscreteSignal& u, int n, int T,
                           OutputClass cls, const PeOptions& opts) {
  require_n(n);
  if (u.dim() != 1) throw DimensionError("single-input test needs scalar u");
  SrVerdict v;
  v.tag = sr_tag(cls, Domain::kDiscrete, true);
  const int k = stack_height(n, cls);
  v.inner = pe_check(tail(multi_shift(u, k), k - 1), T, opts);
  verdict_si(v, k);
  return v;
}

SrVerdict sr_membership_si(const AnalyticSignal& u, int n, double T,
                           const CtGrid& grid, OutputClass cls,
                           const PeOptions& opts) {
  require_n(n);
  if (u.dim() != 1) throw DimensionError("single-input test needs scalar u");
  SrVerdict v;
  v.tag = sr_tag(cls, Domain::kContinuous, true);
  const int k = stack_height(n, cls);
  v.inner = pe_check(on_grid(multi_derivative(u, k), grid), T, opts);
  verdict_si(v, k);
  return v;
}

SrVerdict sr_bounds_mi(const DiscreteSignal& u, int n, int T, OutputClass cls,
                       const PeOptions& opts) {
  require_n(n);
  if (u.dim() <= 1) throw DimensionError("multi-input bounds need m > 1");
  SrVerdict v;
  v.tag = sr_tag(cls, Domain::kDiscrete, false);
  const int k = stack_height(n, cls);
  const auto stack = tail(multi_shift(u, k), k - 1);
  v.inner = pe_check(stack, T, opts);
  verdict_mi(v, stack, T, k, required_ppe_degree(n, u.dim(), cls), opts);
  return v;
}

SrVerdict sr_bounds_mi(const AnalyticSignal& u, int n, double T,
                       const CtGrid& grid, OutputClass cls,
                       const PeOptions& opts) {
  require_n(n);
  if (u.dim() <= 1) throw DimensionError("multi-input bounds need m > 1");
  SrVerdict v;
  v.tag = sr_tag(cls, Domain::kContinuous, false);
  const int k = stack_height(n, cls);
  const auto stack = on_grid(multi_derivative(u, k), grid);
  v.inner = pe_check(stack, T, opts);
  verdict_mi(v, stack, T, k, required_ppe_degree(n, u.dim(), cls), opts);
  return v;
}

}  // namespace pexcite
