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

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "kernels_internal.hpp"

namespace persakit::kernels {
namespace {

Backend detect_backend() {
  if (const char* env = std::getenv("PERSAKIT_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::avx2))
      return Backend::avx2;
    if (std::strcmp(env, "neon") == 0 && backend_available(Backend::neon))
      return Backend::neon;
    return Backend::scalar;
  }
#if defined(__x86_64__) || defined(__amd64__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Backend::avx2;
#elif defined(__aarch64__)
  return Backend::neon;
#endif
  return Backend::scalar;
}

std::atomic<int> g_backend{-1};

Backend current() {
  int b = g_backend.load(std::memory_order_acquire);
  if (b < 0) {
    b = static_cast<int>(detect_backend());
    g_backend.store(b, std::memory_order_release);
  }
  return static_cast<Backend>(b);
}

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(__amd64__)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Backend b) {
  switch (b) {
#if defined(__x86_64__) || defined(__amd64__)
    case Backend::avx2:
      return kAvx2Table;
#endif
#if defined(__aarch64__)
    case Backend::neon:
      return kNeonTable;
#endif
    default:
      return kScalarTable;
  }
}

Backend backend() { return current(); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::runtime_error(std::string("kernel backend not available: ") +
                             backend_name(b));
  }
  g_backend.store(static_cast<int>(b), std::memory_order_release);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

double sum(const double* x, std::size_t n) { return table(current()).sum(x, n); }
double sum_sq(const double* x, std::size_t n) {
  return table(current()).sum_sq(x, n);
}
double dot(const double* a, const double* b, std::size_t n) {
  return table(current()).dot(a, b, n);
}
double peak_abs(const double* x, std::size_t n) {
  return table(current()).peak_abs(x, n);
}
void add_scalar(double* x, std::size_t n, double c) {
  table(current()).add_scalar(x, n, c);
}
void scale(double* x, std::size_t n, double c) {
  table(current()).scale(x, n, c);
}
void multiply(double* dst, const double* a, const double* b, std::size_t n) {
  table(current()).multiply(dst, a, b, n);
}
void mix_accum(double* dst, const double* src, double g, std::size_t n) {
  table(current()).mix_accum(dst, src, g, n);
}
void inject(double* dst, const double* s, const double* nn, double c,
            std::size_t n) {
  table(current()).inject(dst, s, nn, c, n);
}
void ema_step(double* m, const double* e, double b, std::size_t n) {
  table(current()).ema_step(m, e, b, n);
}

}  // namespace persakit::kernels
