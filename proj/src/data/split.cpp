// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/data/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "topicmatch/rng.hpp"

namespace topicmatch::data {

namespace {

// Integer allocation of n across 3 buckets by largest remainder; ties go to
// the lower bucket index.
std::array<std::size_t, 3> largest_remainder(std::size_t n, const std::array<double, 3>& r) {
  std::array<std::size_t, 3> alloc{};
  std::array<double, 3> frac{};
  std::size_t used = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = static_cast<double>(n) * r[i];
    alloc[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    frac[i] = exact - static_cast<double>(alloc[i]);
    used += alloc[i];
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return frac[a] > frac[b]; });
  for (std::size_t left = n - used, i = 0; left > 0; --left, ++i) {
    ++alloc[order[i % 3]];
  }
  return alloc;
}

}  // namespace

SplitIndices stratified_split(const Dataset& ds, std::array<double, 3> ratios,
                              std::uint64_t seed) {
  const double sum = ratios[0] + ratios[1] + ratios[2];
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("split ratios must sum to 1");

  const std::size_t n_topics = ds.topics.size();
  const auto np = ds.labels.positives_per_topic(n_topics);

  // Stratum key: rarest positive topic (global positive count, then index);
  // texts without positives share one stratum.
  constexpr std::size_t kNoTopic = static_cast<std::size_t>(-1);
  std::vector<std::size_t> stratum(ds.texts.size(), kNoTopic);
  for (const auto& e : ds.labels.entries()) {
    if (!e.label) continue;
    auto& s = stratum[e.text_idx];
    if (s == kNoTopic || np[e.topic_idx] < np[s] ||
        (np[e.topic_idx] == np[s] && e.topic_idx < s)) {
      s = e.topic_idx;
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < ds.texts.size(); ++i) groups[stratum[i]].push_back(i);

  SplitIndices out;
  Rng rng(mix_seed(seed, 0x5711));
  for (auto& [key, members] : groups) {
    rng.shuffle(members);
    const auto alloc = largest_remainder(members.size(), ratios);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < alloc[0]; ++i) out.train.push_back(members[pos++]);
    for (std::size_t i = 0; i < alloc[1]; ++i) out.val.push_back(members[pos++]);
    for (std::size_t i = 0; i < alloc[2]; ++i) out.test.push_back(members[pos++]);
  }

  // Per-stratum rounding can drift the global sizes by a few texts; move
  // surplus between splits to land on the exact global targets.
  const auto target = largest_remainder(ds.texts.size(), ratios);
  std::array<std::vector<std::size_t>*, 3> splits{&out.train, &out.val, &out.test};
  for (int from = 0; from < 3; ++from) {
    for (int to = 0; to < 3; ++to) {
      while (splits[from]->size() > target[from] && splits[to]->size() < target[to]) {
        splits[to]->push_back(splits[from]->back());
        splits[from]->pop_back();
      }
    }
  }

  for (auto* s : splits) std::sort(s->begin(), s->end());
  return out;
}

PartialLabelMatrix restrict_labels(const PartialLabelMatrix& labels,
                                   const std::vector<std::size_t>& text_indices) {
  std::vector<std::uint8_t> keep;
  for (std::size_t i : text_indices) {
    if (i >= keep.size()) keep.resize(i + 1, 0);
    keep[i] = 1;
  }
  PartialLabelMatrix out;
  for (const auto& e : labels.entries()) {
    if (e.text_idx < keep.size() && keep[e.text_idx]) {
      out.set(e.text_idx, e.topic_idx, e.label != 0);
    }
  }
  return out;
}

}  // namespace topicmatch::data
