// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "tfloc/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace tfloc::fft {

namespace {

// FFTW planning is not thread safe and plan creation with FFTW_ESTIMATE is
// cheap but not free; keep one in-place plan per (n, sign).
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  void execute(cplx* data, int n, int sign) {
    fftw_plan plan = nullptr;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto key = std::make_pair(n, sign);
      auto it = plans_.find(key);
      if (it == plans_.end()) {
        std::vector<cplx> scratch(static_cast<std::size_t>(n));
        auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
        plan = fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) throw std::runtime_error("fftw_plan_dft_1d failed");
        plans_.emplace(key, plan);
      } else {
        plan = it->second;
      }
    }
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, d, d);
  }

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& kv : plans_) fftw_destroy_plan(kv.second);
  }
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

void check_even(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("centered transform needs even n");
}

// i^{-n} for even n: +1 when n % 4 == 0, -1 when n % 4 == 2.
double center_phase(int n) { return (n % 4 == 0) ? 1.0 : -1.0; }

}  // namespace

void forward_raw(cplx* data, int n) { PlanCache::instance().execute(data, n, FFTW_FORWARD); }
void backward_raw(cplx* data, int n) { PlanCache::instance().execute(data, n, FFTW_BACKWARD); }

void centered_forward(cplx* data, int n) {
  check_even(n);
  for (int k = 1; k < n; k += 2) data[k] = -data[k];
  forward_raw(data, n);
  double p = center_phase(n);
  for (int m = 0; m < n; ++m) {
    double s = (m % 2 == 0) ? p : -p;
    data[m] *= s;
  }
}

void centered_backward(cplx* data, int n) {
  check_even(n);
  for (int m = 1; m < n; m += 2) data[m] = -data[m];
  backward_raw(data, n);
  double p = center_phase(n);  // conj(i^{-n}) == i^{-n} for even n
  for (int k = 0; k < n; ++k) {
    double s = (k % 2 == 0) ? p : -p;
    data[k] *= s;
  }
}

namespace {

using Axis1d = void (*)(cplx*, int);

void apply_axis(cplx* data, int rows, int cols, int axis, Axis1d f) {
  if (axis == 1) {
    for (int r = 0; r < rows; ++r) f(data + static_cast<std::size_t>(r) * cols, cols);
    return;
  }
  if (axis != 0) throw std::invalid_argument("axis must be 0 or 1");
  std::vector<cplx> col(static_cast<std::size_t>(rows));
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) col[r] = data[static_cast<std::size_t>(r) * cols + c];
    f(col.data(), rows);
    for (int r = 0; r < rows; ++r) data[static_cast<std::size_t>(r) * cols + c] = col[r];
  }
}

}  // namespace

void centered_forward_nd(cplx* data, int n, int dim) {
  if (dim == 1) {
    centered_forward(data, n);
  } else if (dim == 2) {
    apply_axis(data, n, n, 1, &centered_forward);
    apply_axis(data, n, n, 0, &centered_forward);
  } else {
    throw std::invalid_argument("centered_forward_nd: dim must be 1 or 2");
  }
}

void centered_backward_nd(cplx* data, int n, int dim) {
  if (dim == 1) {
    centered_backward(data, n);
  } else if (dim == 2) {
    apply_axis(data, n, n, 1, &centered_backward);
    apply_axis(data, n, n, 0, &centered_backward);
  } else {
    throw std::invalid_argument("centered_backward_nd: dim must be 1 or 2");
  }
}

void centered_forward_axis(cplx* data, int rows, int cols, int axis) {
  apply_axis(data, rows, cols, axis, &centered_forward);
}

void centered_backward_axis(cplx* data, int rows, int cols, int axis) {
  apply_axis(data, rows, cols, axis, &centered_backward);
}

void raw_nd(cplx* data, const std::vector<int>& shape, int sign) {
  if (shape.empty()) throw std::invalid_argument("raw_nd: empty shape");
  std::size_t total = 1;
  for (int s : shape) {
    if (s < 1) throw std::invalid_argument("raw_nd: axis lengths must be positive");
    total *= static_cast<std::size_t>(s);
  }
  std::size_t stride = 1;  // product of axis lengths to the right
  for (int a = static_cast<int>(shape.size()) - 1; a >= 0; --a) {
    const int len = shape[a];
    const std::size_t block = stride * static_cast<std::size_t>(len);
    std::vector<cplx> line(static_cast<std::size_t>(len));
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        cplx* p = data + base + off;
        if (stride == 1) {
          PlanCache::instance().execute(p, len, sign);
        } else {
          for (int k = 0; k < len; ++k) line[static_cast<std::size_t>(k)] = p[k * stride];
          PlanCache::instance().execute(line.data(), len, sign);
          for (int k = 0; k < len; ++k) p[k * stride] = line[static_cast<std::size_t>(k)];
        }
      }
    }
    stride = block;
  }
}

int next_fast_size(int n) {
  if (n < 1) throw std::invalid_argument("next_fast_size: n must be positive");
  for (int m = n;; ++m) {
    int r = m;
    for (int f : {2, 3, 5}) {
      while (r % f == 0) r /= f;
    }
    if (r == 1) return m;
  }
}

}  // namespace tfloc::fft
