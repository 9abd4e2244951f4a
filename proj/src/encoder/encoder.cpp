// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/encoder/encoder.hpp"

namespace topicmatch::encoder {

namespace {
std::atomic<std::uint64_t> g_encode_calls{0};
std::atomic<std::uint64_t> g_head_evals{0};
}  // namespace

std::uint64_t encode_call_count() { return g_encode_calls.load(); }
void reset_encode_calls() { g_encode_calls.store(0); }
void bump_encode_calls(std::uint64_t n) { g_encode_calls.fetch_add(n); }

std::uint64_t head_eval_count() { return g_head_evals.load(); }
void reset_head_evals() { g_head_evals.store(0); }
void bump_head_evals(std::uint64_t n) { g_head_evals.fetch_add(n); }

std::string to_string(Pooling p) {
  switch (p) {
    case Pooling::kCls:
      return "cls";
    case Pooling::kMean:
      return "mean";
    case Pooling::kMax:
      return "max";
  }
  return "cls";
}

Pooling pooling_from_string(const std::string& s) {
  if (s == "cls") return Pooling::kCls;
  if (s == "mean") return Pooling::kMean;
  if (s == "max") return Pooling::kMax;
  throw ConfigError("unknown pooling strategy: " + s);
}

}  // namespace topicmatch::encoder
