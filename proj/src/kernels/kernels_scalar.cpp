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

// Reference implementations. These define the semantics the SIMD variants
// are tested against.

#include <cmath>

#include "kernels_internal.hpp"

namespace persakit::kernels {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sum_sq_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double peak_abs_scalar(const double* x, std::size_t n) {
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double a = std::fabs(x[i]);
    if (a > peak) peak = a;
  }
  return peak;
}

void add_scalar_scalar(double* x, std::size_t n, double c) {
  for (std::size_t i = 0; i < n; ++i) x[i] += c;
}

void scale_scalar(double* x, std::size_t n, double c) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= c;
}

void multiply_scalar(double* dst, const double* a, const double* b,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void mix_accum_scalar(double* dst, const double* src, double g,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += g * src[i];
}

void inject_scalar(double* dst, const double* s, const double* nn, double c,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = std::sqrt(s[i] * s[i] + nn[i] * nn[i] * c);
  }
}

void ema_step_scalar(double* m, const double* e, double b, std::size_t n) {
  const double keep = 1.0 - b;
  for (std::size_t i = 0; i < n; ++i) m[i] = keep * m[i] + b * e[i];
}

}  // namespace

const KernelTable kScalarTable = {
    sum_scalar,       sum_sq_scalar, dot_scalar,      peak_abs_scalar,
    add_scalar_scalar, scale_scalar,  multiply_scalar, mix_accum_scalar,
    inject_scalar,    ema_step_scalar,
};

}  // namespace persakit::kernels
