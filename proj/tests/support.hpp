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

#include <cmath>
#include <cstdint>
#include <random>

#include "pexcite/signal.hpp"

namespace pexcite::testing {

// Small hand-rolled generators. Each test seeds its own engine so failures
// replay from the seed printed in the assertion message.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  Matrix matrix(int r, int c) {
    Matrix M(r, c);
    for (int j = 0; j < c; ++j) {
      for (int i = 0; i < r; ++i) M(i, j) = normal();
    }
    return M;
  }
  Vector unit(int d) {
    Vector v = matrix(d, 1);
    return v / v.norm();
  }
  DiscreteSignal noise(int d, int L) { return DiscreteSignal(matrix(d, L)); }

  // d channels, `per_channel` tones each, distinct frequencies in (lo, hi).
  AnalyticSignal multisine(int d, int per_channel, double lo, double hi) {
    std::vector<Channel> ch(d);
    for (int c = 0; c < d; ++c) {
      for (int k = 0; k < per_channel; ++k) {
        ch[c].tones.push_back(
            {uniform(0.5, 2.0), uniform(lo, hi), uniform(0.0, 6.28)});
      }
    }
    return AnalyticSignal(std::move(ch));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Inclusive double-loop sum over [t, t+T].
inline Matrix naive_gram(const DiscreteSignal& w, int t, int T) {
  const int d = w.dim();
  Matrix G = Matrix::Zero(d, d);
  for (int tau = t; tau <= t + T; ++tau) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        G(i, j) += w.data()(i, tau) * w.data()(j, tau);
      }
    }
  }
  return G;
}

inline double rel_err(const Matrix& a, const Matrix& b) {
  const double s = std::max(a.norm(), b.norm());
  return s == 0.0 ? 0.0 : (a - b).norm() / s;
}

}  // namespace pexcite::testing
