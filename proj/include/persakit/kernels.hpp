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

#include <cstddef>
#include <string>

// Data-parallel inner loops used by the DSP pipeline. Every operation has a
// scalar reference implementation plus SIMD variants (AVX2 on x86-64, NEON
// on aarch64) selected once at startup. Elementwise kernels are written
// without FMA contraction so all backends produce bit-identical results;
// reductions may reassociate and agree with the reference only to rounding.
//
// The active backend can be forced with set_backend() or the environment
// variable PERSAKIT_KERNELS (scalar|avx2|neon), checked once at first use.

namespace persakit::kernels {

enum class Backend { scalar, avx2, neon };

Backend backend();
void set_backend(Backend b);
const char* backend_name(Backend b);
bool backend_available(Backend b);

struct KernelTable {
  double (*sum)(const double*, std::size_t);
  double (*sum_sq)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*peak_abs)(const double*, std::size_t);
  void (*add_scalar)(double*, std::size_t, double);
  void (*scale)(double*, std::size_t, double);
  void (*multiply)(double*, const double*, const double*, std::size_t);
  // dst += g * src
  void (*mix_accum)(double*, const double*, double, std::size_t);
  // dst[i] = sqrt(s[i]^2 + n[i]^2 * c)
  void (*inject)(double*, const double*, const double*, double, std::size_t);
  // m[i] = (1-b)*m[i] + b*e[i]
  void (*ema_step)(double*, const double*, double, std::size_t);
};

const KernelTable& table(Backend b);

double sum(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double peak_abs(const double* x, std::size_t n);
void add_scalar(double* x, std::size_t n, double c);
void scale(double* x, std::size_t n, double c);
void multiply(double* dst, const double* a, const double* b, std::size_t n);
void mix_accum(double* dst, const double* src, double g, std::size_t n);
void inject(double* dst, const double* s, const double* nn, double c,
            std::size_t n);
void ema_step(double* m, const double* e, double b, std::size_t n);

inline double mean(const double* x, std::size_t n) {
  return n == 0 ? 0.0 : sum(x, n) / static_cast<double>(n);
}
inline double mean_sq(const double* x, std::size_t n) {
  return n == 0 ? 0.0 : sum_sq(x, n) / static_cast<double>(n);
}

}  // namespace persakit::kernels
