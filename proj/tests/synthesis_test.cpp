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

#include <gtest/gtest.h>

#include "pexcite/conditions.hpp"
#include "pexcite/errors.hpp"
#include "pexcite/synthesis.hpp"

using namespace pexcite;

namespace {

SynthesisRequest request(int n, int m, Domain d, OutputClass c, std::uint64_t seed = 1) {
  SynthesisRequest r;
  r.n = n;
  r.m = m;
  r.domain = d;
  r.cls = c;
  r.seed = seed;
  return r;
}

}  // namespace

TEST(Synthesis, ScalarOneTone) {
  const auto r = synthesize_sr_input(request(1, 1, Domain::kDiscrete, OutputClass::kState));
  EXPECT_EQ(r.tones, 1);
  EXPECT_TRUE(r.certificate.is_pe);
  EXPECT_EQ(r.stack_dim, 1);
}

TEST(Synthesis, TwoStatesSingleInput) {
  const auto r = synthesize_sr_input(request(2, 1, Domain::kDiscrete, OutputClass::kState));
  EXPECT_TRUE(r.certificate.is_pe);
  EXPECT_EQ(r.certificate.dim, 2);
  EXPECT_GT(r.certificate.margin, 0.0);
}

TEST(Synthesis, ReverifiesAcrossGrid) {
  for (auto d : {Domain::kDiscrete, Domain::kContinuous}) {
    for (auto c : {OutputClass::kState, OutputClass::kStateInput}) {
      for (int n : {1, 3}) {
        for (int m : {1, 2}) {
          const auto r = synthesize_sr_input(request(n, m, d, c, 5));
          const auto again = reverify(r);
          EXPECT_TRUE(again.is_pe) << to_string(d) << " " << to_string(c) << " " << n << m;
          EXPECT_DOUBLE_EQ(again.margin, r.certificate.margin);
          EXPECT_EQ(r.stack_dim, stack_height(n, c) * m);
        }
      }
    }
  }
}

TEST(Synthesis, Deterministic) {
  const auto a = synthesize_sr_input(request(3, 2, Domain::kDiscrete, OutputClass::kStateInput, 9));
  const auto b = synthesize_sr_input(request(3, 2, Domain::kDiscrete, OutputClass::kStateInput, 9));
  EXPECT_EQ(a.frequencies, b.frequencies);
  EXPECT_EQ(a.samples.data(), b.samples.data());
  const auto c = synthesize_sr_input(request(3, 2, Domain::kDiscrete, OutputClass::kStateInput, 10));
  EXPECT_NE(a.frequencies, c.frequencies);
}

TEST(Synthesis, Validation) {
  EXPECT_THROW(validate(request(0, 1, Domain::kDiscrete, OutputClass::kState)), DimensionError);
  EXPECT_THROW(validate(request(1, 0, Domain::kDiscrete, OutputClass::kState)), DimensionError);
  EXPECT_THROW(validate(request(1, 1, Domain::kDiscrete, OutputClass::kGeneral)), DimensionError);
  auto r = request(1, 1, Domain::kContinuous, OutputClass::kState);
  r.step = 0;
  EXPECT_THROW(validate(r), DimensionError);
}

TEST(Synthesis, ToneBudgetExhausted) {
  auto r = request(4, 2, Domain::kDiscrete, OutputClass::kState);
  r.max_tones = 2;
  try {
    synthesize_sr_input(r);
    FAIL() << "expected SynthesisError";
  } catch (const SynthesisError& e) {
    EXPECT_FALSE(e.best_attempt().certificate.is_pe);
    EXPECT_EQ(e.best_attempt().stack_dim, 8);
  }
}
