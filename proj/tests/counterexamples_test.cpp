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

#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "pexcite/counterexamples.hpp"
#include "pexcite/errors.hpp"
#include "pexcite/io.hpp"

using namespace pexcite;
namespace fs = std::filesystem;

namespace {

int line_count(const fs::path& p) {
  std::ifstream in(p);
  int n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pexcite_ce_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(CounterexampleSpec, DigestsArePinned) {
  // Any edit to a typed-in constant changes these.
  EXPECT_EQ(constants_digest(counterexample_spec(CounterexampleId::kSufficiency)),
            6983132608536408877ULL);
  EXPECT_EQ(constants_digest(counterexample_spec(CounterexampleId::kSufficiency,
                                                 GainVariant::kConsistent)),
            1823317768831470499ULL);
  EXPECT_EQ(constants_digest(counterexample_spec(CounterexampleId::kNecessity)),
            8438282463908681129ULL);
}

TEST(CounterexampleSpec, Shapes) {
  const auto s = counterexample_spec(CounterexampleId::kSufficiency);
  EXPECT_EQ(s.A.rows(), 7);
  EXPECT_EQ(s.B.cols(), 3);
  EXPECT_EQ(s.Kx.rows(), 3);
  EXPECT_EQ(s.Kx.cols(), 7);
  EXPECT_EQ(s.Ku.rows(), 3);
  const auto n = counterexample_spec(CounterexampleId::kNecessity);
  EXPECT_EQ(n.multisine.dim(), 3);
  EXPECT_EQ(n.multisine.tone_count(), 5);
}

TEST(CounterexampleSpec, ParseNames) {
  EXPECT_EQ(parse_counterexample_id("necessity"), CounterexampleId::kNecessity);
  EXPECT_EQ(parse_gain_variant("consistent"), GainVariant::kConsistent);
  EXPECT_THROW(parse_counterexample_id("bogus"), ParseError);
  EXPECT_THROW(parse_gain_variant("typo"), ParseError);
}

TEST(RunCounterexample, Necessity) {
  const auto run = run_counterexample(counterexample_spec(CounterexampleId::kNecessity));
  EXPECT_EQ(run.r1_xu.terminal(), 10);
  EXPECT_EQ(run.rnp1_u.terminal(), 10);
  EXPECT_EQ(run.nu, 3);
  EXPECT_LE(run.rnu1_u.terminal(), 10);
  EXPECT_TRUE(run.xu_full);
  EXPECT_FALSE(run.stack_np1_full);
  EXPECT_TRUE(run.refutes_nu_conjecture);
  EXPECT_LT(run.seconds, 10.0);
}

TEST(RunCounterexample, SufficiencyStateInputPlateau) {
  const auto run = run_counterexample(counterexample_spec(CounterexampleId::kSufficiency));
  EXPECT_TRUE(run.certificate.is_stable);
  EXPECT_EQ(run.nu, 3);
  EXPECT_LT(run.r1_xu.terminal(), 10);
  EXPECT_TRUE(run.r1_plateau);
  EXPECT_EQ(run.r1_xu.raw.size(), 1000u);
  EXPECT_LT(run.seconds, 10.0);
}

TEST(RunCounterexample, ConsistentGainIsStable) {
  const auto run = run_counterexample(
      counterexample_spec(CounterexampleId::kSufficiency, GainVariant::kConsistent));
  EXPECT_LT(run.closed_loop_radius, 1.0);
  EXPECT_LT(run.r1_xu.terminal(), 10);
  EXPECT_FALSE(run.r1_xu.scale_dominated);
}

TEST(EmitFigures, SufficiencyManifest) {
  const auto dir = scratch("suf");
  const auto run = run_counterexample(counterexample_spec(CounterexampleId::kSufficiency));
  emit_figures(run, dir);
  EXPECT_TRUE(fs::exists(dir / "r1_xu.csv"));
  EXPECT_TRUE(fs::exists(dir / "rn_u.csv"));
  EXPECT_FALSE(fs::exists(dir / "rnp1_u.csv"));
  EXPECT_EQ(line_count(dir / "r1_xu.csv"), 1001);  // header + one row per prefix
  const auto summary = Json::parse(read_text(dir / "summary.json"));
  EXPECT_EQ(summary["constants_digest"].get<std::uint64_t>(), 6983132608536408877ULL);
  fs::remove_all(dir);
}

TEST(EmitFigures, NecessityManifestAndDeterminism) {
  const auto a = scratch("nec_a"), b = scratch("nec_b");
  const auto run = run_counterexample(counterexample_spec(CounterexampleId::kNecessity));
  emit_figures(run, a);
  emit_figures(run_counterexample(counterexample_spec(CounterexampleId::kNecessity)), b);
  EXPECT_TRUE(fs::exists(a / "r1_xu.csv"));
  EXPECT_TRUE(fs::exists(a / "rnp1_u.csv"));
  EXPECT_EQ(read_text(a / "rnp1_u.csv"), read_text(b / "rnp1_u.csv"));
  EXPECT_EQ(line_count(a / "rnp1_u.csv"), 1001);
  const auto summary = Json::parse(read_text(a / "summary.json"));
  EXPECT_EQ(summary["terminal_r1"].get<int>(), 10);
  fs::remove_all(a);
  fs::remove_all(b);
}
