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

// NEON variants, 2 doubles per vector. Same contract as the AVX2 file:
// elementwise kernels avoid FMA to stay bit-identical with the scalar
// reference, reductions may reassociate.

#include <arm_neon.h>
#include <cmath>

#include "kernels_internal.hpp"

namespace persakit::kernels {
namespace {

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double sum_sq_neon(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t a = vld1q_f64(x + i);
    float64x2_t b = vld1q_f64(x + i + 2);
    acc0 = vfmaq_f64(acc0, a, a);
    acc1 = vfmaq_f64(acc1, b, b);
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double peak_abs_neon(const double* x, std::size_t n) {
  float64x2_t vmax = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vmax = vmaxq_f64(vmax, vabsq_f64(vld1q_f64(x + i)));
  }
  double peak = vmaxvq_f64(vmax);
  for (; i < n; ++i) {
    double a = std::fabs(x[i]);
    if (a > peak) peak = a;
  }
  return peak;
}

void add_scalar_neon(double* x, std::size_t n, double c) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(x + i, vaddq_f64(vld1q_f64(x + i), vc));
  }
  for (; i < n; ++i) x[i] += c;
}

void scale_neon(double* x, std::size_t n, double c) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), vc));
  }
  for (; i < n; ++i) x[i] *= c;
}

void multiply_neon(double* dst, const double* a, const double* b,
                   std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(dst + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void mix_accum_neon(double* dst, const double* src, double g, std::size_t n) {
  const float64x2_t vg = vdupq_n_f64(g);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t s = vmulq_f64(vg, vld1q_f64(src + i));
    vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), s));
  }
  for (; i < n; ++i) dst[i] += g * src[i];
}

void inject_neon(double* dst, const double* s, const double* nn, double c,
                 std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vs = vld1q_f64(s + i);
    float64x2_t vn = vld1q_f64(nn + i);
    float64x2_t t = vaddq_f64(vmulq_f64(vs, vs),
                              vmulq_f64(vmulq_f64(vn, vn), vc));
    vst1q_f64(dst + i, vsqrtq_f64(t));
  }
  for (; i < n; ++i) {
    dst[i] = std::sqrt(s[i] * s[i] + nn[i] * nn[i] * c);
  }
}

void ema_step_neon(double* m, const double* e, double b, std::size_t n) {
  const float64x2_t vkeep = vdupq_n_f64(1.0 - b);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vm = vmulq_f64(vkeep, vld1q_f64(m + i));
    float64x2_t ve = vmulq_f64(vb, vld1q_f64(e + i));
    vst1q_f64(m + i, vaddq_f64(vm, ve));
  }
  const double keep = 1.0 - b;
  for (; i < n; ++i) m[i] = keep * m[i] + b * e[i];
}

}  // namespace

const KernelTable kNeonTable = {
    sum_neon,       sum_sq_neon, dot_neon,      peak_abs_neon,
    add_scalar_neon, scale_neon,  multiply_neon, mix_accum_neon,
    inject_neon,    ema_step_neon,
};

}  // namespace persakit::kernels
