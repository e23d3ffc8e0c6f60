// Copyright 2025 The persakit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "persakit/frontends.hpp"
#include "persakit/types.hpp"

// A from-scratch softmax probe over pooled front-end features. Full-batch
// gradient descent on cross-entropy plus L2; features are standardized with
// training-set statistics only.

namespace persakit {

/// Temporal pooling: first M entries are the per-band mean over time, the
/// next M the per-band population standard deviation.
std::vector<double> pool_features(const NormalizedSample& x);

/// Row-major n x d feature matrix.
struct FeatureMatrix {
  std::vector<double> data;
  std::size_t n = 0;
  std::size_t d = 0;

  double* row(std::size_t i) { return data.data() + i * d; }
  const double* row(std::size_t i) const { return data.data() + i * d; }
  void add_row(const std::vector<double>& v);
};

/// Per-dimension affine normalization fitted on the training split.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;

  void fit(const FeatureMatrix& x);
  void transform(FeatureMatrix& x) const;
};

struct ProbeHyper {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
  std::uint64_t seed = 0;  // reserved; training is deterministic from zeros
};

struct ProbeModel {
  std::vector<double> weights;  // classes x dims, row-major
  std::vector<double> bias;     // classes
  std::size_t classes = 0;
  std::size_t dims = 0;
  std::vector<double> loss_log;  // loss before each update, plus final

  int predict(const double* x) const;
};

/// loss = mean cross-entropy + (l2/2)*||W||^2 (bias unregularized);
/// gradients are written to grad_w (classes x dims) and grad_b (classes).
/// Exposed so the finite-difference check can call it directly.
double probe_loss_grad(const std::vector<double>& weights,
                       const std::vector<double>& bias,
                       const FeatureMatrix& x, const std::vector<int>& y,
                       std::size_t classes, double l2,
                       std::vector<double>* grad_w,
                       std::vector<double>* grad_b);

ProbeModel train_probe(const FeatureMatrix& x, const std::vector<int>& y,
                       std::size_t classes, const ProbeHyper& hyper);

double evaluate(const ProbeModel& model, const FeatureMatrix& x,
                const std::vector<int>& y);

}  // namespace persakit
