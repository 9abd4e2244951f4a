// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "topicmatch/common.hpp"

namespace topicmatch::nn {

// Dense row-major tensor. Rank 1 or 2 in practice (vectors and matrices);
// batched sequences are handled as stacked rows by the callers.
template <typename T>
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<T> v;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> s) : shape(std::move(s)) {
    v.assign(numel_of(shape), T(0));
  }
  Tensor(std::size_t r, std::size_t c) : Tensor(std::vector<std::size_t>{r, c}) {}

  static std::size_t numel_of(const std::vector<std::size_t>& s) {
    std::size_t n = 1;
    for (std::size_t d : s) n *= d;
    return s.empty() ? 0 : n;
  }

  static Tensor row(std::initializer_list<T> vals) {
    Tensor t(1, vals.size());
    std::size_t j = 0;
    for (T x : vals) t.v[j++] = x;
    return t;
  }

  static Tensor from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    Tensor t(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      std::size_t j = 0;
      for (T x : row) t.v[i * c + j++] = x;
      ++i;
    }
    return t;
  }

  std::size_t numel() const { return v.size(); }
  std::size_t rows() const { return shape.empty() ? 0 : shape[0]; }
  std::size_t cols() const { return shape.size() > 1 ? shape[1] : 1; }

  T& at(std::size_t i, std::size_t j) { return v[i * cols() + j]; }
  T at(std::size_t i, std::size_t j) const { return v[i * cols() + j]; }

  T* data() { return v.data(); }
  const T* data() const { return v.data(); }

  void zero() { std::fill(v.begin(), v.end(), T(0)); }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }

  std::string shape_str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
      if (i) s += "x";
      s += std::to_string(shape[i]);
    }
    return s + "]";
  }
};

using Tensor32 = Tensor<float>;
using Tensor64 = Tensor<double>;

}  // namespace topicmatch::nn
