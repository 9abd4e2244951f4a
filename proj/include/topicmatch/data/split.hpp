// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "topicmatch/data/dataset.hpp"

namespace topicmatch::data {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

// Stratified on topic frequency: each text is keyed by its rarest positive
// topic so rare topics spread across splits. Split sizes match the exact
// largest-remainder targets for the ratios; deterministic under seed.
SplitIndices stratified_split(const Dataset& ds,
                              std::array<double, 3> ratios = {0.70, 0.15, 0.15},
                              std::uint64_t seed = 0);

// Restrict the label matrix to one side of a split (labels whose text falls
// in `text_indices`), preserving global indices.
PartialLabelMatrix restrict_labels(const PartialLabelMatrix& labels,
                                   const std::vector<std::size_t>& text_indices);

}  // namespace topicmatch::data
