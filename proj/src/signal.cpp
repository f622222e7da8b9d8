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

#include "pexcite/signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pexcite/errors.hpp"

namespace pexcite {

DiscreteSignal::DiscreteSignal(Matrix data, long origin)
    : data_(std::move(data)), origin_(origin) {
  if (data_.rows() < 1) {
    throw DimensionError("signal must have at least one channel");
  }
  if (!data_.allFinite()) {
    throw DimensionError("signal contains non-finite samples");
  }
}

DiscreteSignal DiscreteSignal::zeros(int dim, int length) {
  return DiscreteSignal(Matrix::Zero(dim, length));
}

double DiscreteSignal::sup_norm() const {
  if (data_.cols() == 0) return 0.0;
  return data_.colwise().norm().maxCoeff();
}

SampledSignal::SampledSignal(Matrix data, double step, double t0)
    : data_(std::move(data)), step_(step), t0_(t0) {
  if (data_.rows() < 1) {
    throw DimensionError("signal must have at least one channel");
  }
  if (!(step_ > 0.0) || !std::isfinite(step_)) {
    throw DimensionError("grid step must be positive");
  }
  if (!data_.allFinite()) {
    throw DimensionError("signal contains non-finite samples");
  }
}

double SampledSignal::sup_norm() const {
  if (data_.cols() == 0) return 0.0;
  return data_.colwise().norm().maxCoeff();
}

AnalyticSignal::AnalyticSignal(std::vector<Channel> channels)
    : channels_(std::move(channels)) {
  for (const auto& ch : channels_) {
    if (!std::isfinite(ch.offset)) {
      throw DimensionError("non-finite offset");
    }
    for (const auto& tone : ch.tones) {
      if (!std::isfinite(tone.amplitude) || !std::isfinite(tone.frequency) ||
          !std::isfinite(tone.phase)) {
        throw DimensionError("non-finite tone parameter");
      }
    }
  }
}

AnalyticSignal AnalyticSignal::constant(const Vector& value) {
  std::vector<Channel> channels(value.size());
  for (Eigen::Index j = 0; j < value.size(); ++j) {
    channels[j].offset = value(j);
  }
  return AnalyticSignal(std::move(channels));
}

AnalyticSignal AnalyticSignal::multisine(
    const std::vector<double>& frequencies) {
  Channel ch;
  for (double f : frequencies) ch.tones.push_back({1.0, f, 0.0});
  return AnalyticSignal({ch});
}

int AnalyticSignal::tone_count() const {
  int count = 0;
  for (const auto& ch : channels_) count += static_cast<int>(ch.tones.size());
  return count;
}

Vector AnalyticSignal::evaluate(double t) const {
  Vector out(dim());
  for (int j = 0; j < dim(); ++j) {
    const auto& ch = channels_[j];
    double v = ch.offset;
    for (const auto& tone : ch.tones) {
      v += tone.amplitude * std::sin(tone.frequency * t + tone.phase);
    }
    out(j) = v;
  }
  return out;
}

AnalyticSignal AnalyticSignal::derivative(int order) const {
  if (order < 0) throw DimensionError("derivative order must be >= 0");
  if (order == 0) return *this;
  // d/dt a sin(wt + p) = a w sin(wt + p + pi/2); applied `order` times at once.
  std::vector<Channel> out(channels_.size());
  const double quarter = std::numbers::pi / 2.0;
  for (std::size_t j = 0; j < channels_.size(); ++j) {
    for (const auto& tone : channels_[j].tones) {
      out[j].tones.push_back({tone.amplitude * std::pow(tone.frequency, order),
                              tone.frequency, tone.phase + order * quarter});
    }
  }
  return AnalyticSignal(std::move(out));
}

Vector AnalyticSignal::derivative_bound(int order) const {
  Vector out(dim());
  for (int j = 0; j < dim(); ++j) {
    const auto& ch = channels_[j];
    double b = order == 0 ? std::abs(ch.offset) : 0.0;
    for (const auto& tone : ch.tones) {
      b += std::abs(tone.amplitude) * std::pow(std::abs(tone.frequency), order);
    }
    out(j) = b;
  }
  return out;
}

AnalyticSignal AnalyticSignal::scaled(double factor) const {
  auto channels = channels_;
  for (auto& ch : channels) {
    ch.offset *= factor;
    for (auto& tone : ch.tones) tone.amplitude *= factor;
  }
  return AnalyticSignal(std::move(channels));
}

AnalyticSignal stack(const AnalyticSignal& a, const AnalyticSignal& b) {
  auto channels = a.channels();
  channels.insert(channels.end(), b.channels().begin(), b.channels().end());
  return AnalyticSignal(std::move(channels));
}

DiscreteSignal stack(const DiscreteSignal& a, const DiscreteSignal& b) {
  if (a.length() != b.length()) {
    throw DimensionError("stacked signals differ in length");
  }
  Matrix data(a.dim() + b.dim(), a.length());
  data << a.data(), b.data();
  return DiscreteSignal(std::move(data), a.origin());
}

SampledSignal stack(const SampledSignal& a, const SampledSignal& b) {
  if (a.length() != b.length() || a.step() != b.step() || a.t0() != b.t0()) {
    throw DimensionError("stacked signals live on different grids");
  }
  Matrix data(a.dim() + b.dim(), a.length());
  data << a.data(), b.data();
  return SampledSignal(std::move(data), a.step(), a.t0());
}

DiscreteSignal shift(const DiscreteSignal& w, int k) {
  if (k < 0) throw DimensionError("shift must be non-negative");
  const int L = w.length();
  Matrix data = Matrix::Zero(w.dim(), L);
  if (k < L) data.rightCols(L - k) = w.data().leftCols(L - k);
  return DiscreteSignal(std::move(data), w.origin());
}

DiscreteSignal multi_shift(const DiscreteSignal& w, int k) {
  if (k < 1) throw DimensionError("stack height must be >= 1");
  const int d = w.dim();
  const int L = w.length();
  Matrix data = Matrix::Zero(static_cast<Eigen::Index>(d) * k, L);
  for (int j = 0; j < k; ++j) {
    const int lag = k - 1 - j;
    if (lag < L) {
      data.block(j * d, lag, d, L - lag) = w.data().leftCols(L - lag);
    }
  }
  return DiscreteSignal(std::move(data), w.origin());
}

AnalyticSignal multi_derivative(const AnalyticSignal& w, int k) {
  if (k < 1) throw DimensionError("stack height must be >= 1");
  std::vector<Channel> channels;
  channels.reserve(static_cast<std::size_t>(w.dim()) * k);
  for (int j = k - 1; j >= 0; --j) {
    const auto dj = w.derivative(j);
    channels.insert(channels.end(), dj.channels().begin(),
                    dj.channels().end());
  }
  return AnalyticSignal(std::move(channels));
}

SampledSignal sample(const AnalyticSignal& w, double step, int length,
                     double t0) {
  if (!(step > 0.0)) throw DimensionError("grid step must be positive");
  if (length < 1) throw DimensionError("sample count must be >= 1");
  Matrix data(w.dim(), length);
  for (int k = 0; k < length; ++k) data.col(k) = w.evaluate(t0 + k * step);
  return SampledSignal(std::move(data), step, t0);
}

DiscreteSignal sample_integer(const AnalyticSignal& w, int length, long t0) {
  if (length < 0) throw DimensionError("sample count must be >= 0");
  Matrix data(w.dim(), length);
  for (int k = 0; k < length; ++k) {
    data.col(k) = w.evaluate(static_cast<double>(t0 + k));
  }
  return DiscreteSignal(std::move(data), t0);
}

DiscreteSignal project(const Matrix& map, const DiscreteSignal& w) {
  if (map.cols() != w.dim()) {
    throw DimensionError("projection has " + std::to_string(map.cols()) +
                         " columns, signal has " + std::to_string(w.dim()) +
                         " channels");
  }
  if (map.rows() == 0) return DiscreteSignal();
  return DiscreteSignal(map * w.data(), w.origin());
}

SampledSignal project(const Matrix& map, const SampledSignal& w) {
  if (map.cols() != w.dim()) {
    throw DimensionError("projection does not match signal dimension");
  }
  if (map.rows() == 0) return SampledSignal();
  return SampledSignal(map * w.data(), w.step(), w.t0());
}

}  // namespace pexcite
