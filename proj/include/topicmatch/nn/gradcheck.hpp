// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "topicmatch/nn/autodiff.hpp"
#include "topicmatch/nn/registry.hpp"

namespace topicmatch::nn {

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  bool passed = false;
};

// Compares tape gradients against central finite differences for every value
// in the registry. The builder must construct the loss graph from the current
// registry contents and be deterministic (dropout off); nondeterminism is
// detected by evaluating twice.
template <typename T>
GradCheckReport grad_check(
    const std::function<typename Tape<T>::Var(Tape<T>&)>& build_loss,
    ParamRegistry<T>& params, double h = 1e-5, double tol = 1e-4) {
  auto eval = [&]() -> T {
    Tape<T> tape;
    return tape.scalar(build_loss(tape));
  };

  const T l0 = eval();
  const T l1 = eval();
  if (!(l0 == l1)) {
    throw ConfigError("grad_check: nondeterministic function (two evaluations differ)");
  }
  if (!std::isfinite(static_cast<double>(l0))) {
    throw NumericError("grad_check: loss is non-finite");
  }

  params.zero_grads();
  {
    Tape<T> tape;
    auto loss = build_loss(tape);
    tape.backward(loss);
  }

  GradCheckReport rep;
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    auto& p = params.at(pi);
    for (std::size_t j = 0; j < p.value.numel(); ++j) {
      const T saved = p.value.v[j];
      p.value.v[j] = saved + static_cast<T>(h);
      const double lp = static_cast<double>(eval());
      p.value.v[j] = saved - static_cast<T>(h);
      const double lm = static_cast<double>(eval());
      p.value.v[j] = saved;
      if (!std::isfinite(lp) || !std::isfinite(lm)) {
        throw NumericError("grad_check: non-finite loss while perturbing " + p.name);
      }
      const double numeric = (lp - lm) / (2.0 * h);
      const double analytic = static_cast<double>(p.grad.v[j]);
      const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
      const double rel = std::abs(analytic - numeric) / denom;
      if (rel > rep.max_rel_err) {
        rep.max_rel_err = rel;
        rep.worst_param = p.name;
        rep.worst_index = j;
        rep.analytic = analytic;
        rep.numeric = numeric;
      }
    }
  }
  rep.passed = rep.max_rel_err < tol;
  return rep;
}

}  // namespace topicmatch::nn
