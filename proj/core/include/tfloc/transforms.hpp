// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_TRANSFORMS_HPP
#define TFLOC_TRANSFORMS_HPP

#include "tfloc/signal.hpp"

namespace tfloc {

// Short-time Fourier transform with analysis window psi:
//   V(x_j, xi_m) = h^d * sum_k f(y_k) conj(psi(y_k - x_j)) exp(-i y_k . xi_m).
// Window samples outside the grid are zero. Output frequency grid is the dual
// lattice of the signal grid.
PhaseSpaceFunction stft(const SampledSignal& f, const SampledSignal& window);

// Adjoint of stft with synthesis window g (no conjugation on g):
//   (V* F)(y_k) = (h dxi)^d sum_{j,m} F(x_j, xi_m) exp(+i y_k . xi_m) g(y_k - x_j).
// Exact adjoint of stft with respect to the quadrature inner products.
SampledSignal stft_adjoint(const PhaseSpaceFunction& F, const SampledSignal& window);

// (2 pi)^{-d} <gamma, psi>^{-1} V*_gamma V_psi f. Throws SingularConfiguration
// when |<gamma, psi>| <= 1e-12.
SampledSignal invert(const SampledSignal& f, const SampledSignal& psi,
                     const SampledSignal& gamma);

// Cross ambiguity of f against g on the signal grid:
//   W(f,g)(x_j, xi_m) = (2h)^d sum_mu f(x_j + mu h) conj(g(x_j - mu h))
//                               exp(-2 i mu h . xi_m),
// the symmetric-offset quadrature of int f(x + t/2) conj(g(x - t/2)) e^{-i xi t} dt.
// Off-grid samples are zero. Evaluated by a length-2n transform per x node.
PhaseSpaceFunction cross_wigner(const SampledSignal& f, const SampledSignal& g);

// f_hat(xi_m) = h^d sum_k f(y_k) exp(-i y_k . xi_m), on the dual grid.
SampledSignal fourier(const SampledSignal& f);
// (2 pi)^{-d} * dxi^d * sum_m F(xi_m) exp(+i y_k . xi_m); inverse of fourier.
SampledSignal fourier_inverse(const SampledSignal& fhat);

}  // namespace tfloc

#endif
