// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace topicmatch::nn::kernels {

// Dense row-major kernels. Every kernel ships in two forms: a serial
// reference (`*_serial`) and an OpenMP version that partitions independent
// output rows across threads. Each output element is produced by exactly one
// thread with the same inner-loop order as the serial code, so the parallel
// results are bit-identical to the reference. The unsuffixed entry points
// dispatch on problem size.

// Below this many multiply-adds the fork/join overhead dominates.
inline constexpr std::size_t kParallelFlopThreshold = 1u << 15;

bool parallel_enabled();
void set_parallel_enabled(bool on);

// c[m x n] = a op_a [m x k] * b op_b [k x n]; transpose flags select whether
// a is stored [m x k] or [k x m] (likewise b). beta scales existing c.
template <typename T>
void gemm_serial(const T* a, const T* b, T* c, std::size_t m, std::size_t n,
                 std::size_t k, bool trans_a, bool trans_b, T beta) {
  for (std::size_t i = 0; i < m; ++i) {
    T* crow = c + i * n;
    if (beta == T(0)) {
      std::fill(crow, crow + n, T(0));
    } else if (beta != T(1)) {
      for (std::size_t j = 0; j < n; ++j) crow[j] *= beta;
    }
    for (std::size_t p = 0; p < k; ++p) {
      const T av = trans_a ? a[p * m + i] : a[i * k + p];
      if (av == T(0)) continue;
      const T* brow = trans_b ? nullptr : b + p * n;
      if (trans_b) {
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * b[j * k + p];
      } else {
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
}

// Output rows are independent, so partitioning i across threads keeps each
// element's accumulation order identical to the serial kernel.
template <typename T>
void gemm_omp(const T* a, const T* b, T* c, std::size_t m, std::size_t n,
              std::size_t k, bool trans_a, bool trans_b, T beta) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m; ++i) {
    T* crow = c + i * n;
    if (beta == T(0)) {
      std::fill(crow, crow + n, T(0));
    } else if (beta != T(1)) {
      for (std::size_t j = 0; j < n; ++j) crow[j] *= beta;
    }
    for (std::size_t p = 0; p < k; ++p) {
      const T av = trans_a ? a[p * m + i] : a[i * k + p];
      if (av == T(0)) continue;
      if (trans_b) {
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * b[j * k + p];
      } else {
        const T* brow = b + p * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
}

template <typename T>
void gemm(const T* a, const T* b, T* c, std::size_t m, std::size_t n,
          std::size_t k, bool trans_a = false, bool trans_b = false,
          T beta = T(0)) {
  if (parallel_enabled() && m > 1 && m * n * k >= kParallelFlopThreshold) {
    gemm_omp(a, b, c, m, n, k, trans_a, trans_b, beta);
  } else {
    gemm_serial(a, b, c, m, n, k, trans_a, trans_b, beta);
  }
}

// In-place row softmax with per-row max subtraction.
template <typename T>
void softmax_row(T* row, std::size_t n) {
  T mx = row[0];
  for (std::size_t j = 1; j < n; ++j) mx = std::max(mx, row[j]);
  T sum = T(0);
  for (std::size_t j = 0; j < n; ++j) {
    row[j] = std::exp(row[j] - mx);
    sum += row[j];
  }
  const T inv = T(1) / sum;
  for (std::size_t j = 0; j < n; ++j) row[j] *= inv;
}

template <typename T>
void softmax_rows_serial(T* x, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) softmax_row(x + i * cols, cols);
}

template <typename T>
void softmax_rows(T* x, std::size_t rows, std::size_t cols) {
  if (parallel_enabled() && rows > 1 && rows * cols >= kParallelFlopThreshold) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < rows; ++i) softmax_row(x + i * cols, cols);
  } else {
    softmax_rows_serial(x, rows, cols);
  }
}

// y = layer_norm(x) * gain + bias per row; returns nothing, writes y.
// mean/rstd scratch (length rows) is optional and used by backward passes.
template <typename T>
void layer_norm_row(const T* x, T* y, const T* gain, const T* bias,
                    std::size_t n, T eps, T* mean_out, T* rstd_out) {
  T mean = T(0);
  for (std::size_t j = 0; j < n; ++j) mean += x[j];
  mean /= static_cast<T>(n);
  T var = T(0);
  for (std::size_t j = 0; j < n; ++j) {
    const T d = x[j] - mean;
    var += d * d;
  }
  var /= static_cast<T>(n);
  const T rstd = T(1) / std::sqrt(var + eps);
  for (std::size_t j = 0; j < n; ++j) {
    y[j] = (x[j] - mean) * rstd * gain[j] + bias[j];
  }
  if (mean_out) *mean_out = mean;
  if (rstd_out) *rstd_out = rstd;
}

template <typename T>
void layer_norm_rows(const T* x, T* y, const T* gain, const T* bias,
                     std::size_t rows, std::size_t cols, T eps,
                     T* means = nullptr, T* rstds = nullptr) {
  if (parallel_enabled() && rows > 1 && rows * cols >= kParallelFlopThreshold) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < rows; ++i) {
      layer_norm_row(x + i * cols, y + i * cols, gain, bias, cols, eps,
                     means ? means + i : nullptr, rstds ? rstds + i : nullptr);
    }
  } else {
    for (std::size_t i = 0; i < rows; ++i) {
      layer_norm_row(x + i * cols, y + i * cols, gain, bias, cols, eps,
                     means ? means + i : nullptr, rstds ? rstds + i : nullptr);
    }
  }
}

// Exact (erf-based) GELU; both the tape and the batch path use this form.
template <typename T>
T gelu_scalar(T x) {
  return x * T(0.5) * (T(1) + std::erf(x * T(M_SQRT1_2)));
}

template <typename T>
T gelu_grad_scalar(T x) {
  const T cdf = T(0.5) * (T(1) + std::erf(x * T(M_SQRT1_2)));
  const T pdf = std::exp(T(-0.5) * x * x) * T(0.3989422804014326779);
  return cdf + x * pdf;
}

template <typename T>
void gelu(const T* x, T* y, std::size_t n) {
  if (parallel_enabled() && n >= kParallelFlopThreshold) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) y[i] = gelu_scalar(x[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) y[i] = gelu_scalar(x[i]);
  }
}

template <typename T>
void relu(const T* x, T* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
}

template <typename T>
void add_row_vector(T* x, const T* v, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    T* row = x + i * cols;
    for (std::size_t j = 0; j < cols; ++j) row[j] += v[j];
  }
}

}  // namespace topicmatch::nn::kernels
