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

#include "persakit/probe.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "persakit/kernels.hpp"

namespace persakit {

std::vector<double> pool_features(const NormalizedSample& x) {
  const int l_frames = x.rows, m_bands = x.cols;
  std::vector<double> out(2 * static_cast<std::size_t>(m_bands), 0.0);
  for (int m = 0; m < m_bands; ++m) {
    double acc = 0.0;
    for (int t = 0; t < l_frames; ++t) acc += x.at(t, m);
    const double mean = acc / l_frames;
    double var = 0.0;
    for (int t = 0; t < l_frames; ++t) {
      const double d = x.at(t, m) - mean;
      var += d * d;
    }
    out[m] = mean;
    out[m_bands + m] = std::sqrt(var / l_frames);
  }
  return out;
}

void FeatureMatrix::add_row(const std::vector<double>& v) {
  if (n == 0) {
    d = v.size();
  } else if (v.size() != d) {
    throw Error("feature rows have inconsistent width");
  }
  data.insert(data.end(), v.begin(), v.end());
  ++n;
}

void Standardizer::fit(const FeatureMatrix& x) {
  if (x.n == 0) throw Error("standardizer: empty training set");
  mean.assign(x.d, 0.0);
  stddev.assign(x.d, 0.0);
  for (std::size_t i = 0; i < x.n; ++i) {
    const double* row = x.row(i);
    for (std::size_t j = 0; j < x.d; ++j) mean[j] += row[j];
  }
  for (double& m : mean) m /= static_cast<double>(x.n);
  for (std::size_t i = 0; i < x.n; ++i) {
    const double* row = x.row(i);
    for (std::size_t j = 0; j < x.d; ++j) {
      const double dlt = row[j] - mean[j];
      stddev[j] += dlt * dlt;
    }
  }
  for (double& s : stddev) {
    s = std::sqrt(s / static_cast<double>(x.n));
    if (s < 1e-12) s = 1.0;  // constant dimension, leave centered at zero
  }
}

void Standardizer::transform(FeatureMatrix& x) const {
  if (x.d != mean.size()) throw Error("standardizer: dimension mismatch");
  for (std::size_t i = 0; i < x.n; ++i) {
    double* row = x.row(i);
    for (std::size_t j = 0; j < x.d; ++j) {
      row[j] = (row[j] - mean[j]) / stddev[j];
    }
  }
}

namespace {

void softmax_row(double* z, std::size_t c) {
  const double zmax = *std::max_element(z, z + c);
  double denom = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    z[k] = std::exp(z[k] - zmax);
    denom += z[k];
  }
  for (std::size_t k = 0; k < c; ++k) z[k] /= denom;
}

}  // namespace

double probe_loss_grad(const std::vector<double>& weights,
                       const std::vector<double>& bias,
                       const FeatureMatrix& x, const std::vector<int>& y,
                       std::size_t classes, double l2,
                       std::vector<double>* grad_w,
                       std::vector<double>* grad_b) {
  const std::size_t n = x.n, d = x.d;
  if (grad_w) grad_w->assign(classes * d, 0.0);
  if (grad_b) grad_b->assign(classes, 0.0);

  double loss = 0.0;
  std::vector<double> p(classes);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = x.row(i);
    for (std::size_t k = 0; k < classes; ++k) {
      p[k] = bias[k] + kernels::dot(weights.data() + k * d, row, d);
    }
    softmax_row(p.data(), classes);
    loss -= std::log(std::max(p[static_cast<std::size_t>(y[i])], 1e-300));

    if (grad_w) {
      for (std::size_t k = 0; k < classes; ++k) {
        const double err = p[k] - (static_cast<std::size_t>(y[i]) == k ? 1.0 : 0.0);
        kernels::mix_accum(grad_w->data() + k * d, row, err, d);
        (*grad_b)[k] += err;
      }
    }
  }
  loss /= static_cast<double>(n);

  double w_norm_sq = 0.0;
  for (double w : weights) w_norm_sq += w * w;
  loss += 0.5 * l2 * w_norm_sq;

  if (grad_w) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < grad_w->size(); ++j) {
      (*grad_w)[j] = (*grad_w)[j] * inv_n + l2 * weights[j];
    }
    for (double& g : *grad_b) g *= inv_n;
  }
  return loss;
}

ProbeModel train_probe(const FeatureMatrix& x, const std::vector<int>& y,
                       std::size_t classes, const ProbeHyper& hyper) {
  if (x.n == 0 || x.n != y.size()) throw Error("train_probe: bad inputs");
  std::set<int> seen(y.begin(), y.end());
  if (seen.size() < 2) throw Error("train_probe: need at least 2 classes present");
  for (int label : seen) {
    if (label < 0 || static_cast<std::size_t>(label) >= classes) {
      throw Error("train_probe: label outside [0, classes)");
    }
  }

  ProbeModel model;
  model.classes = classes;
  model.dims = x.d;
  model.weights.assign(classes * x.d, 0.0);
  model.bias.assign(classes, 0.0);
  model.loss_log.reserve(hyper.epochs + 1);

  std::vector<double> grad_w, grad_b;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    const double loss = probe_loss_grad(model.weights, model.bias, x, y,
                                        classes, hyper.l2, &grad_w, &grad_b);
    model.loss_log.push_back(loss);
    kernels::mix_accum(model.weights.data(), grad_w.data(),
                       -hyper.learning_rate, model.weights.size());
    kernels::mix_accum(model.bias.data(), grad_b.data(),
                       -hyper.learning_rate, model.bias.size());
  }
  model.loss_log.push_back(probe_loss_grad(model.weights, model.bias, x, y,
                                           classes, hyper.l2, nullptr,
                                           nullptr));
  return model;
}

int ProbeModel::predict(const double* x) const {
  int best = 0;
  double best_score = -1e300;
  for (std::size_t k = 0; k < classes; ++k) {
    const double score = bias[k] + kernels::dot(weights.data() + k * dims, x, dims);
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(k);
    }
  }
  return best;
}

double evaluate(const ProbeModel& model, const FeatureMatrix& x,
                const std::vector<int>& y) {
  if (x.n == 0) throw Error("evaluate: empty test set");
  if (x.n != y.size()) throw Error("evaluate: labels do not match features");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < x.n; ++i) {
    if (model.predict(x.row(i)) == y[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(x.n);
}

}  // namespace persakit
