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

#include <complex>
#include <cstddef>
#include <vector>

namespace persakit {

/// In-place iterative radix-2 DIT transform. Size must be a power of two.
/// The inverse includes the 1/N normalization.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

/// Transform of arbitrary size (Bluestein's chirp-z for non powers of two).
/// The inverse includes the 1/N normalization.
std::vector<std::complex<double>> fft(std::vector<std::complex<double>> a,
                                      bool inverse);

/// One-sided power spectrum |X[k]|^2, k = 0..fft_len/2, of a real frame.
/// The frame is zero-padded (or truncated) to fft_len, which must be a
/// power of two.
std::vector<double> power_spectrum(const double* frame, std::size_t n,
                                   std::size_t fft_len);

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
std::size_t next_pow2(std::size_t n);

}  // namespace persakit
