// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "topicmatch/common.hpp"
#include "topicmatch/nn/tensor.hpp"
#include "topicmatch/rng.hpp"

namespace topicmatch::nn {

// Named trainable parameters with their gradient accumulators. The
// `is_gain_or_bias` flag marks layer-norm gains and bias vectors, which are
// excluded from weight decay.
template <typename T>
class ParamRegistry {
 public:
  struct Param {
    std::string name;
    bool is_gain_or_bias = false;
    Tensor<T> value;
    Tensor<T> grad;
  };

  std::size_t add(const std::string& name, Tensor<T> init, bool is_gain_or_bias) {
    if (index_.count(name)) throw ConfigError("duplicate parameter name: " + name);
    Param p;
    p.name = name;
    p.is_gain_or_bias = is_gain_or_bias;
    p.grad = Tensor<T>(init.shape);
    p.value = std::move(init);
    params_.push_back(std::move(p));
    index_[name] = params_.size() - 1;
    return params_.size() - 1;
  }

  // Seeded per (master seed, name): bit-identical values for the same seed
  // regardless of registration order.
  std::size_t add_weight(const std::string& name, std::size_t rows, std::size_t cols,
                         std::uint64_t master_seed) {
    Tensor<T> t(rows, cols);
    Rng rng(mix_seed(master_seed, fnv1a(name)));
    for (auto& x : t.v) x = static_cast<T>(rng.truncated_normal(0.02));
    return add(name, std::move(t), false);
  }

  std::size_t add_bias(const std::string& name, std::size_t n) {
    return add(name, Tensor<T>(1, n), true);
  }

  std::size_t add_gain(const std::string& name, std::size_t n) {
    Tensor<T> t(1, n);
    std::fill(t.v.begin(), t.v.end(), T(1));
    return add(name, std::move(t), true);
  }

  std::size_t size() const { return params_.size(); }
  Param& at(std::size_t i) { return params_[i]; }
  const Param& at(std::size_t i) const { return params_[i]; }

  bool has(const std::string& name) const { return index_.count(name) != 0; }

  std::size_t index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ConfigError("unknown parameter: " + name);
    return it->second;
  }

  Param& lookup(const std::string& name) { return params_[index_of(name)]; }
  const Param& lookup(const std::string& name) const { return params_[index_of(name)]; }

  void zero_grads() {
    for (auto& p : params_) p.grad.zero();
  }

  std::size_t total_values() const {
    std::size_t n = 0;
    for (const auto& p : params_) n += p.value.numel();
    return n;
  }

  // Detached gradient storage for thread-local accumulation.
  std::vector<Tensor<T>> make_grad_buffer() const {
    std::vector<Tensor<T>> buf;
    buf.reserve(params_.size());
    for (const auto& p : params_) buf.emplace_back(p.value.shape);
    return buf;
  }

  void accumulate_from(const std::vector<Tensor<T>>& buf) {
    for (std::size_t i = 0; i < params_.size(); ++i) {
      auto& g = params_[i].grad.v;
      const auto& src = buf[i].v;
      for (std::size_t j = 0; j < g.size(); ++j) g[j] += src[j];
    }
  }

  // Content hash over values (exact bytes), used for cache staleness checks.
  std::uint64_t value_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& p : params_) {
      h = fnv1a(p.name, h);
      h = fnv1a(p.value.v.data(), p.value.v.size() * sizeof(T), h);
    }
    return h;
  }

 private:
  std::vector<Param> params_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace topicmatch::nn
