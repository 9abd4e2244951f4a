// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

// Test-only reference implementations, kept independent of the library code
// they check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "topicmatch/metrics/metrics.hpp"
#include "topicmatch/rng.hpp"

namespace topicmatch::testing {

// Same canonical ranking contract as the library (fixed-seed shuffle, stable
// sort), built here from scratch.
inline std::vector<std::size_t> oracle_ranking(const std::vector<double>& scores) {
  std::vector<std::size_t> idx(scores.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(metrics::kTieShuffleSeed);
  rng.shuffle(idx);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return idx;
}

// Brute-force AP: materialize the precision-recall curve at every rank by
// recounting the prefix, then sum P(i) * (R(i) - R(i-1)).
inline std::optional<double> oracle_average_precision(
    const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
  std::size_t total_pos = 0;
  for (auto l : labels) total_pos += l ? 1 : 0;
  if (total_pos == 0) return std::nullopt;

  const auto order = oracle_ranking(scores);
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 1; i <= order.size(); ++i) {
    std::size_t tp = 0;
    for (std::size_t r = 0; r < i; ++r) tp += labels[order[r]] ? 1 : 0;
    const double precision = static_cast<double>(tp) / static_cast<double>(i);
    const double recall = static_cast<double>(tp) / static_cast<double>(total_pos);
    ap += precision * (recall - prev_recall);
    prev_recall = recall;
  }
  return ap;
}

struct OracleAggregate {
  double macro_map = 0.0;
  double weighted_map = 0.0;
  double micro_ap = 0.0;
  std::size_t excluded = 0;
};

// Straight re-derivation of the macro / weighted / micro aggregation from
// per-topic (scores, labels) lists.
inline OracleAggregate oracle_aggregate(
    const std::vector<std::vector<double>>& topic_scores,
    const std::vector<std::vector<std::uint8_t>>& topic_labels) {
  OracleAggregate out;
  double macro_sum = 0.0, weighted_sum = 0.0;
  std::size_t macro_n = 0, np_total = 0;
  std::vector<double> flat_s;
  std::vector<std::uint8_t> flat_l;
  for (std::size_t j = 0; j < topic_scores.size(); ++j) {
    for (std::size_t k = 0; k < topic_scores[j].size(); ++k) {
      flat_s.push_back(topic_scores[j][k]);
      flat_l.push_back(topic_labels[j][k]);
    }
    auto ap = oracle_average_precision(topic_scores[j], topic_labels[j]);
    if (!ap) {
      ++out.excluded;
      continue;
    }
    std::size_t np = 0;
    for (auto l : topic_labels[j]) np += l ? 1 : 0;
    macro_sum += *ap;
    ++macro_n;
    weighted_sum += *ap * static_cast<double>(np);
    np_total += np;
  }
  out.macro_map = macro_sum / static_cast<double>(macro_n);
  out.weighted_map = weighted_sum / static_cast<double>(np_total);
  out.micro_ap = oracle_average_precision(flat_s, flat_l).value();
  return out;
}

// Exhaustive threshold grid: every distinct score, every midpoint, nudges
// around each score, and the outer boundaries.
inline double oracle_best_fbeta(const std::vector<double>& scores,
                                const std::vector<std::uint8_t>& labels, double beta) {
  std::vector<double> grid;
  for (double s : scores) {
    grid.push_back(s);
    grid.push_back(s - 1e-9);
    grid.push_back(s + 1e-9);
  }
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    grid.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  }
  grid.push_back(sorted.front() - 1.0);
  grid.push_back(sorted.back() + 1.0);

  std::size_t total_pos = 0;
  for (auto l : labels) total_pos += l ? 1 : 0;

  double best = 0.0;
  for (double th : grid) {
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= th) {
        if (labels[i]) ++tp;
        else ++fp;
      }
    }
    best = std::max(best, metrics::fbeta_score(tp, fp, total_pos - tp, beta));
  }
  return best;
}

}  // namespace topicmatch::testing
