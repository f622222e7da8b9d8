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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pexcite/conditions.hpp"
#include "pexcite/excitation.hpp"
#include "pexcite/lti.hpp"
#include "pexcite/signal.hpp"

namespace pexcite {

using Json = nlohmann::ordered_json;

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

/// Writes to a sibling temporary file, then renames over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& text);

std::string read_text(const std::filesystem::path& path);

/// {domain, A, B, C?, D?, class?}; unknown keys are rejected.
LtiSystem parse_system_json(const std::string& text);
LtiSystem read_system_file(const std::filesystem::path& path);
Json system_to_json(const LtiSystem& sys);

/// CSV with a header row; first column is time, the rest are channels.
struct SignalTable {
  std::vector<std::string> header;
  Vector time;
  Matrix data;  // channels x samples
};

SignalTable parse_signal_csv(const std::string& text);
SignalTable read_signal_csv(const std::filesystem::path& path);
std::string signal_csv(const SignalTable& table);

SignalTable to_table(const DiscreteSignal& w, const std::string& prefix = "w");
SignalTable to_table(const SampledSignal& w, const std::string& prefix = "w");
/// The time column must be uniform with unit step.
DiscreteSignal to_discrete(const SignalTable& table);
/// The time column must be uniform with positive step.
SampledSignal to_sampled(const SignalTable& table);

/// {"channels": [{"offset": c, "tones": [{"amplitude", "frequency",
/// "phase"}]}]}
AnalyticSignal parse_multisine_json(const std::string& text);
Json multisine_to_json(const AnalyticSignal& w);

/// Header "T,rank", one row per prefix.
std::string rank_trace_csv(const RankTrace& trace);

Json to_json(const Matrix& M);
Json to_json(const ExcitationReport& r, bool with_trace = false);
Json to_json(const RankTrace& r);
Json to_json(const Certificate& c);
Json to_json(const ConditionResult& r);
Json to_json(const SrVerdict& v);

}  // namespace pexcite
