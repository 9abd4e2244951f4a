// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topicmatch/data/dataset.hpp"
#include "topicmatch/nn/tensor.hpp"

namespace topicmatch::metrics {

// Real-valued predictions aligned with text/topic id axes; values in [0,1].
struct ScoreMatrix {
  std::vector<std::string> text_ids;
  std::vector<std::string> topic_ids;
  nn::Tensor<double> scores;  // [N x T]

  void validate() const;
};

// Ranking ties are broken by a deterministic shuffle keyed by this fixed
// seed, then a stable sort; neither optimistic nor pessimistic tie bias.
inline constexpr std::uint64_t kTieShuffleSeed = 0x7f4a7c15u;

// Area under the precision-recall curve (non-interpolated, all points).
// Callers must filter out unlabeled entries first. Returns nullopt when the
// labels contain no positive (AP undefined).
std::optional<double> average_precision(const std::vector<double>& scores,
                                        const std::vector<std::uint8_t>& labels);

struct TopicEval {
  std::string topic_id;
  bool defined = false;  // false when the topic has no positives
  double ap = 0.0;
  std::size_t positives = 0;
  std::size_t labeled = 0;
  double threshold = 0.0;
  double fbeta = 0.0;
};

struct EvalReport {
  std::vector<TopicEval> per_topic;
  double macro_map = 0.0;
  double weighted_map = 0.0;
  double micro_ap = 0.0;
  std::size_t labeled_pairs = 0;
  std::size_t excluded_topics = 0;
  double fbeta_beta = 1.0;

  std::string to_json_string() const;
  void save_json(const std::string& path) const;
  // CSV columns: topic_id, AP, NP, threshold, fbeta
  void save_per_topic_csv(const std::string& path) const;
};

// Per-topic AP over labeled entries plus macro / weighted / micro
// aggregation; topics without positives are excluded and counted. Also runs
// the F-beta threshold sweep per topic with the given beta.
EvalReport aggregate(const ScoreMatrix& scores, const data::PartialLabelMatrix& labels,
                     double fbeta_beta = 1.0);

struct ThresholdChoice {
  double threshold = 0.0;
  double fbeta = 0.0;
};

// Exhaustive sweep over midpoints of consecutive distinct scores plus
// boundary candidates; ties resolved to the lowest threshold. Classification
// rule: predict positive when score >= threshold.
ThresholdChoice select_threshold(const std::vector<double>& scores,
                                 const std::vector<std::uint8_t>& labels, double beta);

double fbeta_score(std::size_t tp, std::size_t fp, std::size_t fn, double beta);

}  // namespace topicmatch::metrics
