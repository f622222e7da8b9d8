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

// pexcite command-line front end.
//
// Exit codes: 0 ok, 1 input error, 2 assertion failed, 3 theorem violation.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "pexcite/conditions.hpp"
#include "pexcite/counterexamples.hpp"
#include "pexcite/errors.hpp"
#include "pexcite/fuzz.hpp"
#include "pexcite/io.hpp"
#include "pexcite/synthesis.hpp"

namespace fs = std::filesystem;
using namespace pexcite;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kAssertFailed = 2;
constexpr int kViolation = 3;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

bool unit_integer_grid(const SignalTable& t) {
  if (t.time.size() < 2) return true;
  const double h = t.time(1) - t.time(0);
  return std::abs(h - 1.0) < 1e-9 &&
         std::abs(t.time(0) - std::round(t.time(0))) < 1e-9;
}

Domain parse_domain_flag(const std::string& s) {
  if (s == "dt") return Domain::kDiscrete;
  if (s == "ct") return Domain::kContinuous;
  throw ParseError("domain must be dt or ct");
}

OutputClass parse_class_flag(const std::string& s) {
  if (s == "x") return OutputClass::kState;
  if (s == "xu") return OutputClass::kStateInput;
  throw ParseError("class must be x or xu");
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string signal;
  std::optional<double> window;
  std::optional<double> tol;
  bool ppe = false;
  std::string rank_trace;
  double rank_tol = 1e-8;
  bool assert_pe = false;
  std::string domain = "auto";
  int stride = 1;
  bool trace = false;
};

int run_analyze(const AnalyzeArgs& a) {
  const auto table = read_signal_csv(a.signal);
  if (table.time.size() < 2) throw ParseError("signal needs at least two rows");
  const bool dt = a.domain == "auto" ? unit_integer_grid(table)
                                     : parse_domain_flag(a.domain) ==
                                           Domain::kDiscrete;
  PeOptions opts;
  opts.tol = a.tol;
  opts.stride = a.stride;
  opts.keep_trace = a.trace;
  const auto L = static_cast<int>(table.time.size());
  ExcitationReport rep;
  Json out;
  if (dt) {
    const auto w = to_discrete(table);
    const int T = a.window ? static_cast<int>(std::lround(*a.window))
                           : std::max(1, std::min(L - 1, L / 10));
    rep = a.ppe ? ppe_degree(w, T, opts) : pe_check(w, T, opts);
    if (!a.rank_trace.empty()) {
      atomic_write(a.rank_trace, rank_trace_csv(rank_trace(w, a.rank_tol)));
    }
  } else {
    const auto w = to_sampled(table);
    const double T = a.window ? *a.window : w.step() * std::max(2, (L - 1) / 10);
    rep = a.ppe ? ppe_degree(w, T, opts) : pe_check(w, T, opts);
    if (!a.rank_trace.empty()) {
      throw ParseError("--rank-trace applies to discrete-time signals");
    }
  }
  out = to_json(rep, a.trace);
  print(out);
  if (a.assert_pe && !rep.is_pe) return kAssertFailed;
  return kOk;
}

// ---- check ----------------------------------------------------------------

struct CheckArgs {
  std::string system;
  std::string signal;
  std::string theorem = "suf";
  std::string cls;
  std::optional<double> window;
  std::optional<double> tol;
  int horizon = 1000;
  double ct_horizon = 120.0;
  double step = 0.01;
  int stride = 1;
};

int run_check(const CheckArgs& a) {
  LtiSystem sys = read_system_file(a.system);
  if (!a.cls.empty()) {
    const auto c = parse_class_flag(a.cls);
    sys = c == OutputClass::kState
              ? LtiSystem::state_output(sys.domain(), sys.A(), sys.B())
              : LtiSystem::state_input_output(sys.domain(), sys.A(), sys.B());
  }
  if (a.theorem != "suf" && a.theorem != "nec") {
    throw ParseError("--theorem must be suf or nec");
  }
  const bool suf = a.theorem == "suf";
  const auto tag = sys.classify();
  if (tag.output == OutputClass::kGeneral) {
    throw ParseError("system output must be x or (x, u); pass --class");
  }
  CheckOptions opts;
  opts.pe.tol = a.tol;
  opts.pe.stride = a.stride;
  opts.pe.keep_trace = false;
  const Vector x0 = Vector::Zero(sys.n());
  ConditionResult r;
  if (sys.domain() == Domain::kDiscrete) {
    DiscreteSignal u;
    if (ends_with(a.signal, ".json")) {
      u = sample_integer(parse_multisine_json(read_text(a.signal)), a.horizon);
    } else {
      u = to_discrete(read_signal_csv(a.signal));
    }
    const int k = stack_height(sys.n(), tag.output);
    const int T = a.window ? static_cast<int>(std::lround(*a.window))
                           : std::max(4 * k * sys.m(), 40);
    r = suf ? check_sufficient_dt(sys, u, x0, T, opts)
            : check_necessary_dt(sys, u, x0, T, opts);
  } else {
    if (!ends_with(a.signal, ".json")) {
      throw ParseError("continuous-time checks need a multisine .json input");
    }
    const auto u = parse_multisine_json(read_text(a.signal));
    const double T = a.window ? *a.window : 50.0;
    const CtGrid grid{a.step, a.ct_horizon};
    r = suf ? check_sufficient_ct(sys, u, x0, T, grid, opts)
            : check_necessary_ct(sys, u, x0, T, grid, opts);
  }
  print(to_json(r));
  return r.theorem_violation ? kViolation : kOk;
}

// ---- counterexample -------------------------------------------------------

int run_counterexample_cmd(const std::string& id, const std::string& out,
                           const std::string& variant, double rank_tol) {
  const auto spec =
      counterexample_spec(parse_counterexample_id(id), parse_gain_variant(variant));
  const auto run = run_counterexample(spec, rank_tol);
  const auto files = emit_figures(run, out);
  // Replay bundle for `check`: the plant and the closed-loop input it saw.
  const fs::path dir(out);
  const auto sys = LtiSystem::state_output(Domain::kDiscrete, spec.A, spec.B);
  atomic_write(dir / "system.json", system_to_json(sys).dump(2) + "\n");
  atomic_write(dir / "input.csv", signal_csv(to_table(run.u, "u")));
  std::cout << read_text(files.back());
  return kOk;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  int n = 0;
  int m = 1;
  std::string domain = "dt";
  std::string cls = "x";
  std::uint64_t seed = 1;
  std::string out = ".";
  int max_tones = 0;
  std::optional<double> window;
  double horizon = 0.0;
};

Json synthesis_json(const SynthesisResult& r) {
  Json j;
  j["n"] = r.request.n;
  j["m"] = r.request.m;
  j["domain"] = to_string(r.request.domain);
  j["class"] = to_string(r.request.cls);
  j["seed"] = r.request.seed;
  j["stack_height"] = r.stack_height;
  j["stack_dim"] = r.stack_dim;
  j["tones"] = r.tones;
  j["frequencies"] = r.frequencies;
  j["window"] = r.window;
  j["horizon"] = r.horizon;
  j["proven"] = r.proven;
  j["is_pe"] = r.certificate.is_pe;
  j["margin"] = r.certificate.margin;
  j["tol"] = r.certificate.tol;
  j["certificate"] = to_json(r.certificate);
  return j;
}

int run_synth(const SynthArgs& a) {
  SynthesisRequest req;
  req.n = a.n;
  req.m = a.m;
  req.domain = parse_domain_flag(a.domain);
  req.cls = parse_class_flag(a.cls);
  req.seed = a.seed;
  req.max_tones = a.max_tones;
  req.window = a.window;
  req.horizon = a.horizon;
  validate(req);
  SynthesisResult r;
  try {
    r = synthesize_sr_input(req);
  } catch (const SynthesisError& e) {
    std::cerr << "synth: " << e.what() << "\n";
    print(synthesis_json(e.best_attempt()));
    return kAssertFailed;
  }
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw ParseError("cannot create " + a.out);
  const fs::path dir(a.out);
  if (req.domain == Domain::kDiscrete) {
    atomic_write(dir / "input.csv", signal_csv(to_table(r.samples, "u")));
  } else {
    const int L = static_cast<int>(std::floor(r.horizon / req.step + 1e-9)) + 1;
    atomic_write(dir / "input.csv",
                 signal_csv(to_table(sample(r.signal, req.step, L), "u")));
  }
  atomic_write(dir / "input.json", multisine_to_json(r.signal).dump(2) + "\n");
  const Json cert = synthesis_json(r);
  atomic_write(dir / "certificate.json", cert.dump(2) + "\n");
  print(cert);
  return kOk;
}

// ---- bundle ---------------------------------------------------------------

int run_bundle(std::uint64_t seed, const std::string& out, int n, int m,
               const std::string& cls) {
  Rng rng(seed);
  const auto c = parse_class_flag(cls);
  const auto sys = random_system(rng, Domain::kDiscrete, n, m, c);
  const int k = stack_height(n, c);
  const double offset = std::uniform_real_distribution<double>(0, 1)(rng);
  const FuzzOptions fo;
  const int tones = std::max(n * m, (k * m + 1) / 2 + 1);
  const auto u = sample_integer(
      round_robin_multisine(
          golden_frequencies(tones, fo.dt_band_lo, fo.dt_band_hi, offset), m),
      fo.dt_horizon);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ParseError("cannot create " + out);
  const fs::path dir(out);
  atomic_write(dir / "system.json", system_to_json(sys).dump(2) + "\n");
  atomic_write(dir / "input.csv", signal_csv(to_table(u, "u")));
  print({{"system", (dir / "system.json").string()},
         {"signal", (dir / "input.csv").string()},
         {"seed", seed}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistency of excitation and sufficient richness toolkit"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "PE / PPE verdict for a signal CSV");
  analyze->add_option("signal", an.signal, "Signal CSV")->required();
  analyze->add_option("--window,-T", an.window, "Window length (samples or seconds)");
  analyze->add_option("--tol", an.tol, "Absolute margin threshold");
  analyze->add_flag("--ppe", an.ppe, "Estimate the PPE degree");
  analyze->add_option("--rank-trace", an.rank_trace, "Write cumulative rank CSV");
  analyze->add_option("--rank-tol", an.rank_tol, "Relative singular value cutoff");
  analyze->add_flag("--assert-pe", an.assert_pe, "Exit 2 when not PE");
  analyze->add_option("--domain", an.domain, "auto, dt or ct")
      ->check(CLI::IsMember({"auto", "dt", "ct"}));
  analyze->add_option("--stride", an.stride, "Window start stride");
  analyze->add_flag("--trace", an.trace, "Include the per-window lambda trace");

  CheckArgs ck;
  auto* check = app.add_subcommand("check", "Verify a necessary or sufficient condition");
  check->add_option("system", ck.system, "System JSON")->required();
  check->add_option("signal", ck.signal, "Input CSV (DT) or multisine JSON")->required();
  check->add_option("--theorem", ck.theorem, "suf or nec")
      ->check(CLI::IsMember({"suf", "nec"}));
  check->add_option("--class", ck.cls, "x or xu")->check(CLI::IsMember({"x", "xu"}));
  check->add_option("--window,-T", ck.window, "Window length");
  check->add_option("--tol", ck.tol, "Absolute margin threshold");
  check->add_option("--horizon", ck.horizon, "Samples when sampling a multisine (DT)");
  check->add_option("--ct-horizon", ck.ct_horizon, "Seconds (CT)");
  check->add_option("--step", ck.step, "Grid step (CT)");
  check->add_option("--stride", ck.stride, "Window start stride");

  std::string ce_id, ce_out = ".", ce_variant = "printed";
  double ce_rank_tol = 1e-8;
  auto* ce = app.add_subcommand("counterexample", "Rank-trace experiments");
  ce->add_option("--id", ce_id, "sufficiency or necessity")->required();
  ce->add_option("--out", ce_out, "Output directory");
  ce->add_option("--variant", ce_variant, "printed or consistent feedback gain");
  ce->add_option("--rank-tol", ce_rank_tol, "Relative singular value cutoff");

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "Synthesize a certified multisine");
  synth->add_option("--n", sy.n, "State dimension")->required();
  synth->add_option("--m", sy.m, "Input dimension");
  synth->add_option("--domain", sy.domain, "dt or ct");
  synth->add_option("--class", sy.cls, "x or xu");
  synth->add_option("--seed", sy.seed, "Seed");
  synth->add_option("--out", sy.out, "Output directory");
  synth->add_option("--max-tones", sy.max_tones, "Tone budget");
  synth->add_option("--window,-T", sy.window, "PE window");
  synth->add_option("--horizon", sy.horizon, "Samples (DT) or seconds (CT)");

  std::uint64_t bu_seed = 1;
  std::string bu_out = ".", bu_cls = "x";
  int bu_n = 3, bu_m = 2;
  auto* bundle = app.add_subcommand("bundle", "Write a random fuzz instance for replay");
  bundle->add_option("--seed", bu_seed, "Seed");
  bundle->add_option("--out", bu_out, "Output directory");
  bundle->add_option("--n", bu_n, "State dimension")->check(CLI::Range(1, 8));
  bundle->add_option("--m", bu_m, "Input dimension")->check(CLI::Range(1, 4));
  bundle->add_option("--class", bu_cls, "x or xu");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*analyze) return run_analyze(an);
    if (*check) return run_check(ck);
    if (*ce) return run_counterexample_cmd(ce_id, ce_out, ce_variant, ce_rank_tol);
    if (*synth) return run_synth(sy);
    if (*bundle) return run_bundle(bu_seed, bu_out, bu_n, bu_m, bu_cls);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (*ce) std::cerr << ce->help();
    return kInputError;
  } catch (const CertificateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
