// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_FFT_HPP
#define TFLOC_FFT_HPP

#include <complex>
#include <vector>

namespace tfloc::fft {

using cplx = std::complex<double>;

// Unnormalized DFT, out[m] = sum_k in[k] exp(-2 pi i k m / n), in place.
void forward_raw(cplx* data, int n);
// Unnormalized inverse kernel, out[k] = sum_m in[m] exp(+2 pi i k m / n).
void backward_raw(cplx* data, int n);

// Centered transforms for a length-n array indexed by node k at (k - n/2)*h
// and frequency node m at (m - n/2)*dxi with h*dxi = 2*pi/n:
//   forward:  out[m] = sum_k in[k] exp(-i x_k xi_m)
//   backward: out[k] = sum_m in[m] exp(+i x_k xi_m)
// These are plain sign-flipped DFTs conjugated by (-1)^k twiddles and a
// global phase i^{-n} (forward) or i^{n} (backward); n must be even.
// backward(forward(x)) == n * x up to rounding.
void centered_forward(cplx* data, int n);
void centered_backward(cplx* data, int n);

// Apply the centered transform along every axis of a row-major array with
// `dim` axes of length n each (dim 1 or 2).
void centered_forward_nd(cplx* data, int n, int dim);
void centered_backward_nd(cplx* data, int n, int dim);

// Apply the centered transform along one axis of a row-major 2-dim array
// with shape rows x cols (axis 0 transforms columns, axis 1 rows).
void centered_forward_axis(cplx* data, int rows, int cols, int axis);
void centered_backward_axis(cplx* data, int rows, int cols, int axis);

// Unnormalized DFT along every axis of a row-major array with the given
// shape (any rank >= 1); sign -1 forward, +1 backward. Used for zero-padded
// linear convolutions, where the axis lengths are padded sizes, not n.
void raw_nd(cplx* data, const std::vector<int>& shape, int sign);

// Smallest 2^a 3^b 5^c >= n (sizes fftw handles at O(n log n)).
int next_fast_size(int n);

}  // namespace tfloc::fft

#endif
