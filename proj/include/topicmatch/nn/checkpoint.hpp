// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "topicmatch/nn/registry.hpp"

namespace topicmatch::nn {

// Checkpoint JSON layout:
//   { "format": "topicmatch-checkpoint-v1",
//     "dtype": "f32" | "f64",
//     "seed": <uint64>,
//     "config_hash": "<hex64>",
//     "params": { "<path>": { "shape": [..], "gain_or_bias": bool,
//                             "data": [..] } } }
// Values are serialized as JSON numbers with shortest round-trip formatting,
// so save/load is bit-exact for both dtypes.
struct CheckpointHeader {
  std::string dtype;
  std::uint64_t seed = 0;
  std::string config_hash;
};

template <typename T>
void save_checkpoint(const std::string& path, const ParamRegistry<T>& params,
                     const CheckpointHeader& header);

template <typename T>
CheckpointHeader load_checkpoint(const std::string& path, ParamRegistry<T>& params);

// Reads only the header fields (cheap full parse; files are desk-scale).
CheckpointHeader read_checkpoint_header(const std::string& path);

}  // namespace topicmatch::nn
