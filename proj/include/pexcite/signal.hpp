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

#include <vector>

#include <Eigen/Core>

namespace pexcite {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/**
 * A finite, uniformly indexed vector-valued sequence. Column t holds w_t.
 *
 * The horizon is finite: statements that hold "for all t" on the infinite
 * sequence are evaluated over the admissible window starts of [0, L).
 */
class DiscreteSignal {
 public:
  DiscreteSignal() = default;
  /// Throws DimensionError on an empty row count or non-finite entries.
  explicit DiscreteSignal(Matrix data, long origin = 0);

  static DiscreteSignal zeros(int dim, int length);

  int dim() const { return static_cast<int>(data_.rows()); }
  int length() const { return static_cast<int>(data_.cols()); }
  long origin() const { return origin_; }
  const Matrix& data() const { return data_; }
  auto column(int t) const { return data_.col(t); }

  /// max_t |w_t| with |.| the Euclidean norm.
  double sup_norm() const;

 private:
  Matrix data_;
  long origin_ = 0;
};

/// Samples of a continuous-time signal on the uniform grid t0 + k*step.
class SampledSignal {
 public:
  SampledSignal() = default;
  SampledSignal(Matrix data, double step, double t0 = 0.0);

  int dim() const { return static_cast<int>(data_.rows()); }
  int length() const { return static_cast<int>(data_.cols()); }
  double step() const { return step_; }
  double t0() const { return t0_; }
  double time(int k) const { return t0_ + k * step_; }
  const Matrix& data() const { return data_; }
  double sup_norm() const;

 private:
  Matrix data_;
  double step_ = 1.0;
  double t0_ = 0.0;
};

/// a*sin(frequency*t + phase)
struct Tone {
  double amplitude = 1.0;
  double frequency = 1.0;  // rad/s, or rad/sample when sampled at integer t
  double phase = 0.0;
};

/// offset + sum of tones
struct Channel {
  double offset = 0.0;
  std::vector<Tone> tones;
};

/**
 * Continuous-time signal given in closed form as constants plus sinusoids.
 * The family is closed under differentiation, so derivative stacks are exact.
 */
class AnalyticSignal {
 public:
  AnalyticSignal() = default;
  explicit AnalyticSignal(std::vector<Channel> channels);

  static AnalyticSignal constant(const Vector& value);
  /// Single channel sum_k sin(frequency_k * t).
  static AnalyticSignal multisine(const std::vector<double>& frequencies);

  int dim() const { return static_cast<int>(channels_.size()); }
  const std::vector<Channel>& channels() const { return channels_; }
  int tone_count() const;

  Vector evaluate(double t) const;
  AnalyticSignal derivative(int order = 1) const;

  /// Upper bound on sup_t |d^order w_j(t)| for each channel j.
  Vector derivative_bound(int order) const;

  AnalyticSignal scaled(double factor) const;

 private:
  std::vector<Channel> channels_;
};

/// (a, b) stacked channel-wise: first a's channels, then b's.
AnalyticSignal stack(const AnalyticSignal& a, const AnalyticSignal& b);
DiscreteSignal stack(const DiscreteSignal& a, const DiscreteSignal& b);
SampledSignal stack(const SampledSignal& a, const SampledSignal& b);

/// Column t is w_{t-k} for t >= k and zero otherwise.
DiscreteSignal shift(const DiscreteSignal& w, int k);

/// (q^{k-1} w, ..., q^0 w): rows [0, d) hold the oldest sample, the last d
/// rows hold w itself.
DiscreteSignal multi_shift(const DiscreteSignal& w, int k);

/// (d^{k-1} w, ..., d^0 w), highest derivative first.
AnalyticSignal multi_derivative(const AnalyticSignal& w, int k);

/// w(t0 + k*step) for k = 0..length-1.
SampledSignal sample(const AnalyticSignal& w, double step, int length,
                     double t0 = 0.0);

/// w evaluated at the integer instants t0, t0+1, ..., t0+length-1.
DiscreteSignal sample_integer(const AnalyticSignal& w, int length,
                              long t0 = 0);

/// P * w_t for every column.
DiscreteSignal project(const Matrix& map, const DiscreteSignal& w);
SampledSignal project(const Matrix& map, const SampledSignal& w);

}  // namespace pexcite
