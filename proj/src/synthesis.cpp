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

#include "pexcite/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "pexcite/conditions.hpp"
#include "pexcite/errors.hpp"
#include "pexcite/fuzz.hpp"

namespace pexcite {

namespace {

double min_gap(std::vector<double> f) {
  std::sort(f.begin(), f.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < f.size(); ++i) gap = std::min(gap, f[i] - f[i - 1]);
  return gap;
}

// Window long enough to separate the two closest tones twice over.
double auto_window(const SynthesisRequest& req, const std::vector<double>& f,
                   int dim) {
  const double gap = min_gap(f);
  const double resolve = std::isfinite(gap) ? 4.0 * std::numbers::pi / gap : 0.0;
  if (req.domain == Domain::kDiscrete) {
    return std::max({4.0 * dim, 40.0, std::ceil(resolve)});
  }
  return std::max(20.0, std::ceil(resolve));
}

ExcitationReport certify_stack(const SynthesisResult& r) {
  const auto& req = r.request;
  PeOptions opts;
  opts.keep_trace = false;
  if (req.domain == Domain::kDiscrete) {
    const auto stack =
        tail(multi_shift(r.samples, r.stack_height), r.stack_height - 1);
    return pe_check(stack, static_cast<int>(r.window), opts);
  }
  opts.stride = req.ct_stride;
  const int L = static_cast<int>(std::floor(r.horizon / req.step + 1e-9)) + 1;
  const auto stack =
      sample(multi_derivative(r.signal, r.stack_height), req.step, L);
  return pe_check(stack, r.window, opts);
}

}  // namespace

void validate(const SynthesisRequest& req) {
  if (req.n < 1) throw DimensionError("n must be >= 1");
  if (req.m < 1) throw DimensionError("m must be >= 1");
  if (req.cls == OutputClass::kGeneral) {
    throw DimensionError("class must be x or xu");
  }
  if (req.horizon < 0) throw DimensionError("horizon must be >= 0");
  if (req.max_tones < 0) throw DimensionError("max_tones must be >= 0");
  if (req.window && !(*req.window > 0)) {
    throw DimensionError("window must be positive");
  }
  if (req.domain == Domain::kContinuous &&
      (!(req.step > 0) || !(req.omega_max > 0) || req.ct_stride < 1)) {
    throw DimensionError("CT grid step, band and stride must be positive");
  }
}

SynthesisResult synthesize_sr_input(const SynthesisRequest& req) {
  validate(req);
  const int k = stack_height(req.n, req.cls);
  const int dim = k * req.m;
  const int max_tones = req.max_tones ? req.max_tones : 4 * dim + 8;
  Rng rng(req.seed);
  const double offset = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const bool dt = req.domain == Domain::kDiscrete;
  const char* op = dt ? "Q" : "D";
  const std::string proven = std::string("inner set: ") + op + "^" +
                             std::to_string(k) + "(u) PE in R^" +
                             std::to_string(dim);

  SynthesisResult best;
  bool have_best = false;
  for (int tones = (dim + 1) / 2; tones <= max_tones; ++tones) {
    SynthesisResult r;
    r.request = req;
    r.stack_height = k;
    r.stack_dim = dim;
    r.tones = tones;
    r.offset = offset;
    r.frequencies =
        dt ? golden_frequencies(tones, 0.05 * std::numbers::pi,
                                0.95 * std::numbers::pi, offset)
           : golden_frequencies(tones, 0.2 * req.omega_max, req.omega_max,
                                offset);
    r.signal = round_robin_multisine(r.frequencies, req.m);
    r.window = req.window ? *req.window : auto_window(req, r.frequencies, dim);
    if (dt) {
      r.window = std::round(r.window);
      r.horizon = req.horizon > 0 ? req.horizon : std::max(1000.0, 4 * r.window);
      if (r.window > r.horizon - k) continue;
      r.samples = sample_integer(r.signal, static_cast<int>(r.horizon));
    } else {
      r.horizon = req.horizon > 0 ? req.horizon : 3 * r.window;
      if (r.window > r.horizon) continue;
    }
    r.certificate = certify_stack(r);
    r.proven = proven;
    if (r.certificate.is_pe) return r;
    if (!have_best || r.certificate.margin / r.certificate.tol >
                          best.certificate.margin / best.certificate.tol) {
      best = r;
      have_best = true;
    }
  }
  if (!have_best) {
    best.request = req;
    best.stack_height = k;
    best.stack_dim = dim;
  }
  throw SynthesisError("no certified input within " +
                           std::to_string(max_tones) + " tones",
                       std::move(best));
}

ExcitationReport reverify(const SynthesisResult& res) {
  return certify_stack(res);
}

}  // namespace pexcite
