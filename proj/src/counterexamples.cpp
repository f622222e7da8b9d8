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

#include "pexcite/counterexamples.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>

#include <Eigen/Eigenvalues>

#include "pexcite/errors.hpp"
#include "pexcite/io.hpp"

namespace pexcite {

namespace {

Matrix shared_b() {
  Matrix Bt(3, 7);
  Bt << 0, 2, 1, 0, 0, 0, 1,
        2, 1, 0.4, 7, 4, 0, 0,
        5, 2, 0.9, 4, 6, 2, 1;
  return Bt.transpose();
}

Matrix sufficiency_a() {
  Matrix A(7, 7);
  A << 0, 1, 0, 0, 0, 0, 0,
       0, 0, 1, 0, 0, 0, 0,
       0.024, -0.26, 0.9, 0, 0, 0, 0,
       0, 0, 0, 0, 1, 0, 0,
       0, 0, 0, 0, 0, 1, 0,
       0, 0, 0, 0.21, -1.07, 1.8, 0,
       0, 0, 0, 0, 0, 0, 0.8;
  return A;
}

Matrix necessity_a() {
  Matrix A(7, 7);
  A << 0, 1, 0, 0, 0, 0, 0,
       0, 0, 1, 0, 0, 0, 0,
       -0.3, 0.2, 0.1, 0, 0, 0, 0,
       0, 0, 0, 0, 1, 0, 0,
       0, 0, 0, 0, 0, 1, 0,
       0, 0, 0, -0.3, 0.2, 0.1, 0,
       0, 0, 0, 0, 0, 0, -0.7324;
  return A;
}

Matrix printed_kx() {
  Matrix K(3, 7);
  K << -8, 8.67, -300, -70, 356.7, -600, -266.7,
       -4, 4.33, -150, -350, 178.3, -300, -133.3,
       4, -4.33, 150, 350, -178.3, 300, 133.3;
  return 1e-3 * K;
}

// Columns 2 and 4 differ from the typeset gain; the rest is identical.
Matrix consistent_kx() {
  Matrix K(3, 7);
  K << -8, 86.67, -300, -70, 356.7, -600, -266.7,
       -4, 43.33, -150, -35, 178.3, -300, -133.3,
       4, -43.33, 150, 35, -178.3, 300, 133.3;
  return 1e-3 * K;
}

Matrix printed_ku() {
  Matrix K(3, 3);
  K << -0.6667, -0.1333, -1.3,
       -0.3333, -0.0667, -0.65,
       0.3333, 0.0667, 0.65;
  return K;
}

AnalyticSignal necessity_input() {
  auto ch = [](std::initializer_list<double> freqs) {
    Channel c;
    for (double f : freqs) c.tones.push_back({1.0, f, 0.0});
    return c;
  };
  return AnalyticSignal({ch({1, 2}), ch({3, 4}), ch({5})});
}

void fnv(std::uint64_t& h, double x) {
  unsigned char bytes[sizeof(double)];
  std::memcpy(bytes, &x, sizeof x);
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
}

void fnv(std::uint64_t& h, const Matrix& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index k = 0; k < M.cols(); ++k) fnv(h, M(i, k));
  }
}

DiscreteSignal dither(const CounterexampleSpec& s, int L) {
  Matrix v(s.m, L);
  for (int t = 0; t < L; ++t) {
    double a = 0.0;
    double b = 0.0;
    for (double f : s.v1_freqs) a += std::sin(f * t);
    for (double f : s.v2_freqs) b += std::sin(f * t);
    v.col(t) = s.v1_dir * a + s.v2_dir * b;
  }
  return DiscreteSignal(std::move(v));
}

bool plateau(const RankTrace& r, int span) {
  const int L = static_cast<int>(r.raw.size());
  if (L < span) return false;
  const int last = r.raw.back();
  for (int t = L - span; t < L; ++t) {
    if (r.raw[t] != last) return false;
  }
  return true;
}

}  // namespace

const char* to_string(CounterexampleId id) {
  return id == CounterexampleId::kSufficiency ? "sufficiency" : "necessity";
}

const char* to_string(GainVariant v) {
  return v == GainVariant::kPrinted ? "printed" : "consistent";
}

CounterexampleId parse_counterexample_id(const std::string& s) {
  if (s == "sufficiency") return CounterexampleId::kSufficiency;
  if (s == "necessity") return CounterexampleId::kNecessity;
  throw ParseError("unknown counterexample id \"" + s + "\"");
}

GainVariant parse_gain_variant(const std::string& s) {
  if (s == "printed") return GainVariant::kPrinted;
  if (s == "consistent") return GainVariant::kConsistent;
  throw ParseError("unknown gain variant \"" + s + "\"");
}

CounterexampleSpec counterexample_spec(CounterexampleId id,
                                       GainVariant variant) {
  CounterexampleSpec s;
  s.id = id;
  s.variant = variant;
  s.B = shared_b();
  if (id == CounterexampleId::kSufficiency) {
    s.A = sufficiency_a();
    s.Kx = variant == GainVariant::kPrinted ? printed_kx() : consistent_kx();
    s.Ku = printed_ku();
    s.v1_dir = Vector(3);
    s.v1_dir << -0.4082, 0.9082, 0.0918;
    s.v2_dir = Vector(3);
    s.v2_dir << 0.4082, 0.0918, 0.9082;
    s.v1_freqs = {1, 2, 3, 4};
    s.v2_freqs = {5, 6, 7, 8};
  } else {
    s.A = necessity_a();
    s.multisine = necessity_input();
  }
  return s;
}

std::uint64_t constants_digest(const CounterexampleSpec& s) {
  std::uint64_t h = 14695981039346656037ULL;
  fnv(h, s.A);
  fnv(h, s.B);
  if (s.id == CounterexampleId::kSufficiency) {
    fnv(h, s.Kx);
    fnv(h, s.Ku);
    fnv(h, s.v1_dir);
    fnv(h, s.v2_dir);
    for (double f : s.v1_freqs) fnv(h, f);
    for (double f : s.v2_freqs) fnv(h, f);
  } else {
    for (const auto& ch : s.multisine.channels()) {
      fnv(h, ch.offset);
      for (const auto& t : ch.tones) {
        fnv(h, t.amplitude);
        fnv(h, t.frequency);
        fnv(h, t.phase);
      }
    }
  }
  return h;
}

CounterexampleRun run_counterexample(const CounterexampleSpec& spec,
                                     double rank_tol) {
  const auto t0 = std::chrono::steady_clock::now();
  CounterexampleRun run;
  run.spec = spec;
  const auto sys = LtiSystem::state_input_output(Domain::kDiscrete, spec.A, spec.B);
  run.certificate = certify(sys);
  run.nu = run.certificate.nu.value_or(spec.n);
  const int L = spec.horizon;
  const int n = spec.n;
  const int m = spec.m;

  if (spec.id == CounterexampleId::kSufficiency) {
    const auto res = closed_loop_input_dt(sys, spec.Kx, spec.Ku, dither(spec, L),
                                          Vector::Zero(m), Vector::Zero(n), L);
    run.u = res.u;
    run.x = res.x;
    Matrix loop(n + m, n + m);
    loop << spec.A, spec.B, spec.Kx, spec.Ku;
    run.closed_loop_radius = loop.eigenvalues().cwiseAbs().maxCoeff();
  } else {
    run.u = sample_integer(spec.multisine, L);
    run.x = simulate_dt(sys, run.u, Vector::Zero(n)).x;
  }

  const auto xu = stack(run.x, run.u);
  run.max_abs = xu.data().cwiseAbs().maxCoeff();
  run.r1_xu = rank_trace(xu, rank_tol);
  run.rn_u = rank_trace(multi_shift(run.u, n), rank_tol, n - 1);
  run.rnp1_u = rank_trace(multi_shift(run.u, n + 1), rank_tol, n);
  run.rnu1_u = rank_trace(multi_shift(run.u, run.nu + 1), rank_tol, run.nu);
  run.r1_plateau = plateau(run.r1_xu, 500);

  run.xu_full = run.r1_xu.terminal() == n + m;
  run.stack_np1_full = run.rnp1_u.terminal() == (n + 1) * m;
  if (spec.id == CounterexampleId::kSufficiency) {
    run.refutes_condition = run.rn_u.terminal() == n * m && !run.xu_full;
    run.refutes_nu_conjecture =
        run.rnu1_u.terminal() == (run.nu + 1) * m && !run.xu_full;
  } else {
    run.refutes_condition = run.xu_full && run.rnp1_u.terminal() <= n + m;
    run.refutes_nu_conjecture =
        run.xu_full && run.rnu1_u.terminal() < (run.nu + 1) * m;
  }
  run.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return run;
}

std::vector<std::filesystem::path> emit_figures(
    const CounterexampleRun& run, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string());
  std::vector<std::filesystem::path> out;
  const bool suff = run.spec.id == CounterexampleId::kSufficiency;

  out.push_back(dir / "r1_xu.csv");
  atomic_write(out.back(), rank_trace_csv(run.r1_xu));
  out.push_back(dir / (suff ? "rn_u.csv" : "rnp1_u.csv"));
  atomic_write(out.back(), rank_trace_csv(suff ? run.rn_u : run.rnp1_u));

  const int n = run.spec.n;
  const int m = run.spec.m;
  Json s;
  s["id"] = to_string(run.spec.id);
  s["variant"] = to_string(run.spec.variant);
  s["n"] = n;
  s["m"] = m;
  s["horizon"] = run.spec.horizon;
  s["rank_tol"] = run.r1_xu.rank_tol;
  s["constants_digest"] = constants_digest(run.spec);
  s["certificate"] = to_json(run.certificate);
  s["nu"] = run.nu;
  s["terminal_r1"] = run.r1_xu.terminal();
  s["terminal_rn"] = run.rn_u.terminal();
  s["terminal_rnp1"] = run.rnp1_u.terminal();
  s["terminal_rnu1"] = run.rnu1_u.terminal();
  s["r1_plateau_last_500"] = run.r1_plateau;
  s["scale_dominated"] = run.r1_xu.scale_dominated ||
                         run.rn_u.scale_dominated ||
                         run.rnp1_u.scale_dominated;
  s["xu_full_rank"] = run.xu_full;
  s["stack_np1_full_rank"] = run.stack_np1_full;
  s["refutes_condition"] = run.refutes_condition;
  s["refutes_nu_conjecture"] = run.refutes_nu_conjecture;
  s["max_abs"] = run.max_abs;
  if (suff) s["closed_loop_radius"] = run.closed_loop_radius;
  out.push_back(dir / "summary.json");
  atomic_write(out.back(), s.dump(2) + "\n");
  return out;
}

}  // namespace pexcite
