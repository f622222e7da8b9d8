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

#include "pexcite/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "pexcite/errors.hpp"

namespace pexcite {

namespace {

// Exact recomputation period for the sliding sums.
constexpr int kRefresh = 32;

double min_eigenvalue(const Matrix& sym) {
  if (sym.rows() == 1) return sym(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Calls f(start, gram) for every window start 0, stride, 2*stride, ... of the
// inclusive sums over T+1 columns.
template <class F>
void for_each_window_dt(const Matrix& X, int T, int stride, F&& f) {
  const int L = static_cast<int>(X.cols());
  const int last = L - 1 - T;
  Matrix G;
  int since_refresh = kRefresh;
  int prev = 0;
  for (int t = 0; t <= last; t += stride) {
    if (since_refresh >= kRefresh || t - prev > T) {
      const auto block = X.middleCols(t, T + 1);
      G.noalias() = block * block.transpose();
      since_refresh = 0;
    } else {
      for (int s = prev; s < t; ++s) G.noalias() -= X.col(s) * X.col(s).transpose();
      for (int s = prev + T + 1; s <= t + T; ++s) {
        G.noalias() += X.col(s) * X.col(s).transpose();
      }
      ++since_refresh;
    }
    prev = t;
    f(t, G);
  }
}

// Trapezoid windows of N grid intervals; calls f(first_index, gram).
template <class F>
void for_each_window_ct(const Matrix& X, double h, int N, int stride, F&& f) {
  const int L = static_cast<int>(X.cols());
  const int last = L - 1 - N;
  Matrix S;
  int since_refresh = kRefresh;
  int prev = 0;
  Matrix G;
  for (int i = 0; i <= last; i += stride) {
    if (since_refresh >= kRefresh || i - prev > N) {
      const auto block = X.middleCols(i, N + 1);
      S.noalias() = block * block.transpose();
      since_refresh = 0;
    } else {
      for (int s = prev; s < i; ++s) S.noalias() -= X.col(s) * X.col(s).transpose();
      for (int s = prev + N + 1; s <= i + N; ++s) {
        S.noalias() += X.col(s) * X.col(s).transpose();
      }
      ++since_refresh;
    }
    prev = i;
    G = S;
    G.noalias() -= 0.5 * X.col(i) * X.col(i).transpose();
    G.noalias() -= 0.5 * X.col(i + N) * X.col(i + N).transpose();
    G *= h;
    f(i, G);
  }
}

int grid_intervals(const SampledSignal& w, double T) {
  const double ratio = T / w.step();
  const long n = std::lround(ratio);
  if (n < 2) {
    throw RangeError("window " + std::to_string(T) +
                     " s is shorter than two grid steps");
  }
  return static_cast<int>(n);
}

GramWindow make_window(double start, double length, Matrix gram) {
  GramWindow out;
  out.start = start;
  out.length = length;
  sorted_eigen(gram, out.eigenvalues, out.eigenvectors);
  out.gram = std::move(gram);
  return out;
}

void check_stride(int stride) {
  if (stride < 1) throw DimensionError("window stride must be >= 1");
}

double resolve_tol(const PeOptions& opts, double T, double M) {
  if (opts.tol) {
    if (!(*opts.tol > 0.0)) throw DimensionError("tol must be positive");
    return *opts.tol;
  }
  return default_tol(T, M);
}

// Shared tail of pe_check: fill margin, verdict and the deficient direction.
void finish_report(ExcitationReport& r, const Matrix& worst_gram) {
  r.is_pe = r.margin >= r.tol;
  Vector values;
  Matrix vectors;
  sorted_eigen(worst_gram, values, vectors);
  r.deficient_direction = vectors.col(vectors.cols() - 1);
}

// Top-down scan shared by both domains. `grams` holds every window Gram of w.
void scan_ppe(ExcitationReport& r, const Matrix& total,
              const std::vector<Matrix>& grams, const std::vector<double>& starts,
              bool keep_trace) {
  Vector values;
  Matrix vectors;
  sorted_eigen(total, values, vectors);
  const int d = static_cast<int>(total.rows());
  for (int k = d; k >= 1; --k) {
    const Matrix P = vectors.leftCols(k).transpose();
    double margin = std::numeric_limits<double>::infinity();
    std::size_t worst = 0;
    std::vector<double> trace;
    bool ok = true;
    for (std::size_t i = 0; i < grams.size(); ++i) {
      const double lam = min_eigenvalue(P * grams[i] * P.transpose());
      if (keep_trace) trace.push_back(lam);
      if (lam < margin) {
        margin = lam;
        worst = i;
      }
      if (lam < r.tol && !keep_trace) {
        ok = false;
        break;
      }
    }
    if (ok && margin >= r.tol) {
      r.ppe_degree = k;
      r.directions = P;
      r.margin = margin;
      r.worst_start = starts[worst];
      r.lambda_trace = std::move(trace);
      Vector v;
      Matrix z;
      sorted_eigen(P * grams[worst] * P.transpose(), v, z);
      r.deficient_direction = P.transpose() * z.col(k - 1);
      return;
    }
  }
  r.ppe_degree = 0;
  r.directions = Matrix(0, d);
  r.lambda_trace.clear();
}

}  // namespace

const char* to_string(Domain d) {
  return d == Domain::kDiscrete ? "dt" : "ct";
}

double GramWindow::lambda_min() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues(eigenvalues.size() - 1);
}

void sorted_eigen(const Matrix& sym, Vector& values, Matrix& vectors) {
  const Eigen::Index d = sym.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  std::vector<Eigen::Index> order(d);
  std::iota(order.begin(), order.end(), 0);
  // Solver order is ascending; reverse it, then stable-sort so ties keep a
  // deterministic order.
  std::reverse(order.begin(), order.end());
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return es.eigenvalues()(a) > es.eigenvalues()(b);
  });
  values.resize(d);
  vectors.resize(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    values(j) = es.eigenvalues()(order[j]);
    Vector v = es.eigenvectors().col(order[j]);
    for (Eigen::Index i = 0; i < d; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    vectors.col(j) = v;
  }
}

GramWindow window_gram_dt(const DiscreteSignal& w, int t, int T) {
  if (t < 0 || T < 0 || static_cast<long>(t) + T > w.length() - 1) {
    throw RangeError("window [" + std::to_string(t) + ", " +
                     std::to_string(static_cast<long>(t) + T) +
                     "] exceeds signal of length " +
                     std::to_string(w.length()));
  }
  const auto block = w.data().middleCols(t, T + 1);
  Matrix gram = block * block.transpose();
  return make_window(t, T, std::move(gram));
}

GramWindow window_gram_ct(const SampledSignal& w, double t, double T) {
  const int N = grid_intervals(w, T);
  const long i0 = std::lround((t - w.t0()) / w.step());
  if (i0 < 0 || i0 + N > w.length() - 1) {
    throw RangeError("window [" + std::to_string(t) + ", " +
                     std::to_string(t + T) + "] leaves the sampled grid");
  }
  const auto block = w.data().middleCols(i0, N + 1);
  Matrix gram = block * block.transpose();
  gram.noalias() -= 0.5 * block.col(0) * block.col(0).transpose();
  gram.noalias() -= 0.5 * block.col(N) * block.col(N).transpose();
  gram *= w.step();
  return make_window(w.time(static_cast<int>(i0)), N * w.step(),
                     std::move(gram));
}

double default_tol(double T, double sup_norm) {
  return std::max(1e-6 * T * sup_norm * sup_norm,
                  std::numeric_limits<double>::min());
}

ExcitationReport pe_check(const DiscreteSignal& w, int T,
                          const PeOptions& opts) {
  check_stride(opts.stride);
  if (T < 1) throw RangeError("window must span at least one sample");
  if (T > w.length() - 1) {
    throw RangeError("signal of length " + std::to_string(w.length()) +
                     " is shorter than one window of " + std::to_string(T));
  }
  ExcitationReport r;
  r.domain = Domain::kDiscrete;
  r.dim = w.dim();
  r.window = T;
  r.sup_norm = w.sup_norm();
  r.tol = resolve_tol(opts, T, r.sup_norm);
  r.margin = std::numeric_limits<double>::infinity();
  Matrix worst;
  for_each_window_dt(w.data(), T, opts.stride, [&](int t, const Matrix& G) {
    const double lam = min_eigenvalue(G);
    if (opts.keep_trace) r.lambda_trace.push_back(lam);
    ++r.window_count;
    if (lam < r.margin) {
      r.margin = lam;
      r.worst_start = t;
      worst = G;
    }
  });
  finish_report(r, worst);
  return r;
}

ExcitationReport pe_check(const SampledSignal& w, double T,
                          const PeOptions& opts) {
  check_stride(opts.stride);
  const int N = grid_intervals(w, T);
  if (N > w.length() - 1) {
    throw RangeError("sampled signal is shorter than one window");
  }
  ExcitationReport r;
  r.domain = Domain::kContinuous;
  r.dim = w.dim();
  r.window = N * w.step();
  r.sup_norm = w.sup_norm();
  r.tol = resolve_tol(opts, r.window, r.sup_norm);
  r.margin = std::numeric_limits<double>::infinity();
  Matrix worst;
  for_each_window_ct(w.data(), w.step(), N, opts.stride,
                     [&](int i, const Matrix& G) {
                       const double lam = min_eigenvalue(G);
                       if (opts.keep_trace) r.lambda_trace.push_back(lam);
                       ++r.window_count;
                       if (lam < r.margin) {
                         r.margin = lam;
                         r.worst_start = w.time(i);
                         worst = G;
                       }
                     });
  finish_report(r, worst);
  return r;
}

ExcitationReport ppe_degree(const DiscreteSignal& w, int T,
                            const PeOptions& opts) {
  ExcitationReport r = pe_check(w, T, {opts.tol, opts.stride, false});
  std::vector<Matrix> grams;
  std::vector<double> starts;
  grams.reserve(r.window_count);
  for_each_window_dt(w.data(), T, opts.stride, [&](int t, const Matrix& G) {
    grams.push_back(G);
    starts.push_back(t);
  });
  const Matrix total = w.data() * w.data().transpose();
  scan_ppe(r, total, grams, starts, opts.keep_trace);
  return r;
}

ExcitationReport ppe_degree(const SampledSignal& w, double T,
                            const PeOptions& opts) {
  ExcitationReport r = pe_check(w, T, {opts.tol, opts.stride, false});
  const int N = grid_intervals(w, T);
  std::vector<Matrix> grams;
  std::vector<double> starts;
  grams.reserve(r.window_count);
  for_each_window_ct(w.data(), w.step(), N, opts.stride,
                     [&](int i, const Matrix& G) {
                       grams.push_back(G);
                       starts.push_back(w.time(i));
                     });
  const Matrix total = w.data() * w.data().transpose() * w.step();
  scan_ppe(r, total, grams, starts, opts.keep_trace);
  return r;
}

int numerical_rank(const Matrix& sym_psd, double rank_tol) {
  if (sym_psd.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym_psd, Eigen::EigenvaluesOnly);
  const Vector sv = es.eigenvalues().cwiseAbs();
  const double top = sv.maxCoeff();
  if (!(top > 0.0)) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) >= rank_tol * top) ++rank;
  }
  return rank;
}

RankTrace rank_trace(const DiscreteSignal& w, double rank_tol, int start) {
  if (!(rank_tol > 0.0 && rank_tol < 1.0)) {
    throw DimensionError("rank_tol must lie in (0, 1)");
  }
  if (start < 0) throw DimensionError("start must be >= 0");
  RankTrace out;
  out.rank_tol = rank_tol;
  out.start = start;
  const int L = w.length();
  out.raw.assign(L, 0);
  out.ranks.assign(L, 0);
  Matrix G = Matrix::Zero(w.dim(), w.dim());
  int envelope = 0;
  for (int t = 0; t < L; ++t) {
    if (t >= start) {
      G.noalias() += w.column(t) * w.column(t).transpose();
      out.raw[t] = numerical_rank(G, rank_tol);
    }
    if (out.raw[t] < envelope) out.scale_dominated = true;
    envelope = std::max(envelope, out.raw[t]);
    out.ranks[t] = envelope;
  }
  return out;
}

double perturbation_margin(const ExcitationReport& report,
                           const DiscreteSignal& w) {
  if (!report.is_pe) {
    throw PreconditionError("perturbation margin requires a PE report");
  }
  const double M = w.sup_norm();
  return report.margin / (4.0 * report.window * M);
}

double perturbation_margin(const ExcitationReport& report,
                           const SampledSignal& w) {
  if (!report.is_pe) {
    throw PreconditionError("perturbation margin requires a PE report");
  }
  const double M = w.sup_norm();
  return report.margin / (4.0 * report.window * M);
}

DeficiencyWitness derivative_deficiency(const AnalyticSignal& w, double T,
                                        double step, double horizon,
                                        const PeOptions& opts) {
  check_stride(opts.stride);
  const int L = static_cast<int>(std::floor(horizon / step + 1e-9)) + 1;
  const SampledSignal sw = sample(w, step, L);
  if (pe_check(sw, T, {opts.tol, opts.stride, false}).is_pe) {
    throw PreconditionError("signal is PE; no deficiency witness exists");
  }
  const SampledSignal sd = sample(w.derivative(1), step, L);
  const SampledSignal both = stack(sw, sd);
  const int d = w.dim();
  const int N = grid_intervals(sw, T);

  DeficiencyWitness best;
  best.lambda = std::numeric_limits<double>::infinity();
  Matrix worst;
  int worst_i = 0;
  for_each_window_ct(both.data(), step, N, opts.stride,
                     [&](int i, const Matrix& G) {
                       const Matrix H = G.topLeftCorner(d, d) +
                                        G.bottomRightCorner(d, d);
                       const double lam = min_eigenvalue(H);
                       if (lam < best.lambda) {
                         best.lambda = lam;
                         worst = H;
                         worst_i = i;
                       }
                     });
  Vector values;
  Matrix vectors;
  sorted_eigen(worst, values, vectors);
  best.z = vectors.col(d - 1);
  best.start = sw.time(worst_i);
  const auto zw = best.z.transpose() * sw.data().middleCols(worst_i, N + 1);
  const auto zd = best.z.transpose() * sd.data().middleCols(worst_i, N + 1);
  best.eps_out = std::max(zw.cwiseAbs().maxCoeff(), zd.cwiseAbs().maxCoeff());
  return best;
}

}  // namespace pexcite
