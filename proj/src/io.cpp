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

#include "pexcite/io.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "pexcite/errors.hpp"

namespace pexcite {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void atomic_write(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " +
                             ec.message());
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- systems --------------------------------------------------------------

namespace {

Matrix parse_matrix(const Json& j, const std::string& key) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(key + " must be a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) throw ParseError(key + " row " + std::to_string(i) + " is not an array");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols || cols == 0) {
      throw ParseError(key + " is not rectangular at row " + std::to_string(i));
    }
  }
  Matrix M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      const auto& v = j[i][k];
      if (!v.is_number()) {
        throw ParseError(key + "[" + std::to_string(i) + "][" +
                         std::to_string(k) + "] is not a number");
      }
      M(i, k) = v.get<double>();
    }
  }
  return M;
}

Domain parse_domain(const std::string& s) {
  if (s == "dt" || s == "discrete") return Domain::kDiscrete;
  if (s == "ct" || s == "continuous") return Domain::kContinuous;
  throw ParseError("domain must be \"dt\" or \"ct\", got \"" + s + "\"");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_number(std::string_view s, int line, std::size_t col) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ", column " +
                         std::to_string(col + 1) + ": invalid number \"" +
                         std::string(s) + "\"",
                     line);
  }
  return v;
}

double uniform_step(const SignalTable& table) {
  const auto L = table.time.size();
  if (L < 2) return 1.0;
  const double h = table.time(1) - table.time(0);
  if (!(h > 0.0)) throw ParseError("time column must increase", 3);
  for (Eigen::Index k = 1; k < L; ++k) {
    const double dk = table.time(k) - table.time(k - 1);
    if (std::abs(dk - h) > 1e-9 * std::max(1.0, std::abs(table.time(k)))) {
      // Data rows start on line 2.
      throw ParseError("line " + std::to_string(k + 2) +
                           ": time column is not uniform",
                       static_cast<int>(k + 2));
    }
  }
  return h;
}

}  // namespace

LtiSystem parse_system_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("system file must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "domain" && key != "A" && key != "B" && key != "C" &&
        key != "D" && key != "class") {
      throw ParseError("unknown key \"" + key + "\" in system file");
    }
  }
  for (const char* key : {"domain", "A", "B"}) {
    if (!j.contains(key)) {
      throw ParseError(std::string("missing key \"") + key + "\"");
    }
  }
  if (!j["domain"].is_string()) throw ParseError("domain must be a string");
  const Domain domain = parse_domain(j["domain"].get<std::string>());
  Matrix A = parse_matrix(j["A"], "A");
  Matrix B = parse_matrix(j["B"], "B");
  Matrix C, D;
  if (j.contains("C")) C = parse_matrix(j["C"], "C");
  if (j.contains("D")) D = parse_matrix(j["D"], "D");
  try {
    if (j.contains("class")) {
      if (!j["class"].is_string()) throw ParseError("class must be a string");
      const auto cls = j["class"].get<std::string>();
      LtiSystem ref = [&] {
        if (cls == "x") return LtiSystem::state_output(domain, A, B);
        if (cls == "xu") return LtiSystem::state_input_output(domain, A, B);
        throw ParseError("class must be \"x\" or \"xu\", got \"" + cls + "\"");
      }();
      if ((C.size() && C != ref.C()) || (D.size() && D != ref.D())) {
        throw ParseError("C/D contradict class \"" + cls + "\"");
      }
      return ref;
    }
    return LtiSystem(domain, std::move(A), std::move(B), std::move(C),
                     std::move(D));
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
}

LtiSystem read_system_file(const fs::path& path) {
  return parse_system_json(read_text(path));
}

Json system_to_json(const LtiSystem& sys) {
  Json j;
  j["domain"] = to_string(sys.domain());
  j["A"] = to_json(sys.A());
  j["B"] = to_json(sys.B());
  const auto tag = sys.classify();
  if (tag.output == OutputClass::kGeneral) {
    j["C"] = to_json(sys.C());
    j["D"] = to_json(sys.D());
  } else {
    j["class"] = to_string(tag.output);
  }
  return j;
}

// ---- signals --------------------------------------------------------------

SignalTable parse_signal_csv(const std::string& text) {
  SignalTable table;
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::size_t width = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(raw);
    if (s.empty()) continue;
    const auto cells = split(s);
    if (table.header.empty()) {
      for (auto c : cells) table.header.emplace_back(c);
      width = cells.size();
      if (width < 2) {
        throw ParseError("line " + std::to_string(line) +
                             ": header needs a time column and at least one "
                             "channel",
                         line);
      }
      // A numeric first cell means the header row is missing.
      double probe;
      const auto h0 = cells[0];
      if (!h0.empty() &&
          std::from_chars(h0.data(), h0.data() + h0.size(), probe).ptr ==
              h0.data() + h0.size()) {
        throw ParseError("line 1: header row is mandatory", line);
      }
      continue;
    }
    if (cells.size() != width) {
      throw ParseError("line " + std::to_string(line) + ": expected " +
                           std::to_string(width) + " columns, found " +
                           std::to_string(cells.size()),
                       line);
    }
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) {
      row[c] = parse_number(cells[c], line, c);
    }
    rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw ParseError("empty signal file");
  const auto L = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(width - 1);
  table.time.resize(L);
  table.data.resize(d, L);
  for (Eigen::Index k = 0; k < L; ++k) {
    table.time(k) = rows[k][0];
    for (Eigen::Index j = 0; j < d; ++j) table.data(j, k) = rows[k][j + 1];
  }
  uniform_step(table);
  return table;
}

SignalTable read_signal_csv(const fs::path& path) {
  return parse_signal_csv(read_text(path));
}

std::string signal_csv(const SignalTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (Eigen::Index k = 0; k < table.time.size(); ++k) {
    out += format_double(table.time(k));
    for (Eigen::Index j = 0; j < table.data.rows(); ++j) {
      out += ',';
      out += format_double(table.data(j, k));
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> make_header(const std::string& prefix, int d) {
  std::vector<std::string> h{"t"};
  for (int j = 0; j < d; ++j) h.push_back(prefix + std::to_string(j));
  return h;
}

}  // namespace

SignalTable to_table(const DiscreteSignal& w, const std::string& prefix) {
  SignalTable t;
  t.header = make_header(prefix, w.dim());
  t.time.resize(w.length());
  for (int k = 0; k < w.length(); ++k) t.time(k) = static_cast<double>(w.origin() + k);
  t.data = w.data();
  return t;
}

SignalTable to_table(const SampledSignal& w, const std::string& prefix) {
  SignalTable t;
  t.header = make_header(prefix, w.dim());
  t.time.resize(w.length());
  for (int k = 0; k < w.length(); ++k) t.time(k) = w.time(k);
  t.data = w.data();
  return t;
}

DiscreteSignal to_discrete(const SignalTable& table) {
  if (table.data.rows() < 1) throw ParseError("signal has no channels");
  const double h = uniform_step(table);
  if (table.time.size() >= 2 && std::abs(h - 1.0) > 1e-9) {
    throw ParseError("discrete-time signal needs unit time step");
  }
  const long origin = table.time.size() ? std::lround(table.time(0)) : 0;
  return DiscreteSignal(table.data, origin);
}

SampledSignal to_sampled(const SignalTable& table) {
  if (table.data.rows() < 1) throw ParseError("signal has no channels");
  if (table.time.size() < 2) throw ParseError("sampled signal needs two rows");
  const double h = uniform_step(table);
  return SampledSignal(table.data, h, table.time(0));
}

AnalyticSignal parse_multisine_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("channels") || !j["channels"].is_array() ||
      j["channels"].empty()) {
    throw ParseError("multisine file needs a non-empty \"channels\" array");
  }
  std::vector<Channel> channels;
  try {
    for (const auto& cj : j["channels"]) {
      Channel ch;
      ch.offset = cj.value("offset", 0.0);
      if (cj.contains("tones")) {
        for (const auto& tj : cj["tones"]) {
          ch.tones.push_back({tj.value("amplitude", 1.0),
                              tj.at("frequency").get<double>(),
                              tj.value("phase", 0.0)});
        }
      }
      channels.push_back(std::move(ch));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad multisine: ") + e.what());
  }
  return AnalyticSignal(std::move(channels));
}

Json multisine_to_json(const AnalyticSignal& w) {
  Json channels = Json::array();
  for (const auto& ch : w.channels()) {
    Json tones = Json::array();
    for (const auto& t : ch.tones) {
      tones.push_back({{"amplitude", t.amplitude},
                       {"frequency", t.frequency},
                       {"phase", t.phase}});
    }
    channels.push_back({{"offset", ch.offset}, {"tones", tones}});
  }
  return {{"channels", channels}};
}

std::string rank_trace_csv(const RankTrace& trace) {
  std::string out = "T,rank\n";
  for (std::size_t t = 0; t < trace.ranks.size(); ++t) {
    out += std::to_string(t) + "," + std::to_string(trace.ranks[t]) + "\n";
  }
  return out;
}

// ---- reports --------------------------------------------------------------

Json to_json(const Matrix& M) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < M.cols(); ++k) row.push_back(M(i, k));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const ExcitationReport& r, bool with_trace) {
  Json j;
  j["domain"] = to_string(r.domain);
  j["dim"] = r.dim;
  j["is_pe"] = r.is_pe;
  j["margin"] = r.margin;
  j["window"] = r.window;
  j["tol"] = r.tol;
  j["sup_norm"] = r.sup_norm;
  j["window_count"] = r.window_count;
  j["worst_start"] = r.worst_start;
  j["deficient_direction"] = std::vector<double>(
      r.deficient_direction.data(),
      r.deficient_direction.data() + r.deficient_direction.size());
  if (r.ppe_degree) {
    j["ppe_degree"] = *r.ppe_degree;
    j["directions"] = to_json(r.directions);
  }
  j["finite_horizon_estimate"] = r.finite_horizon;
  if (with_trace) j["lambda_trace"] = r.lambda_trace;
  return j;
}

Json to_json(const RankTrace& r) {
  return {{"rank_tol", r.rank_tol},
          {"start", r.start},
          {"terminal", r.terminal()},
          {"scale_dominated", r.scale_dominated}};
}

Json to_json(const Certificate& c) {
  Json j;
  j["is_stable"] = c.is_stable;
  j["spectral_abscissa"] = c.spectral_abscissa;
  j["stability_margin"] = c.stability_margin;
  j["reachability_rank"] = c.reachability_rank;
  j["is_reachable"] = c.is_reachable;
  j["nu"] = c.nu ? Json(*c.nu) : Json(nullptr);
  j["rank_profile"] = c.rank_profile;
  j["reachability_conditioning"] = c.reachability_conditioning;
  return j;
}

Json to_json(const ConditionResult& r) {
  Json j;
  j["theorem"] = to_string(r.theorem);
  j["class"] = r.tag.name();
  j["stack_height"] = r.stack_height;
  if (r.theorem == Theorem::kNecessary) {
    j["required_ppe_degree"] = r.required_degree;
  }
  j["first_sample"] = r.first_sample;
  j["premise_holds"] = r.premise_holds;
  j["conclusion_holds"] = r.conclusion_holds;
  j["theorem_violation"] = r.theorem_violation;
  j["marginal"] = r.marginal;
  j["certificate"] = to_json(r.certificate);
  j["premise"] = to_json(r.premise);
  j["conclusion"] = to_json(r.conclusion);
  return j;
}

Json to_json(const SrVerdict& v) {
  Json j;
  j["classification"] = to_string(v.classification);
  j["class"] = v.tag.name();
  j["evidence"] = v.evidence;
  j["inner"] = to_json(v.inner);
  if (v.outer) j["outer"] = to_json(*v.outer);
  return j;
}

}  // namespace pexcite
