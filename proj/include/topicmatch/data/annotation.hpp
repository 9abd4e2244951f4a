// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "topicmatch/data/dataset.hpp"
#include "topicmatch/nn/tensor.hpp"

namespace topicmatch::data {

// One annotation task: a text routed to one or more multi-choice question
// groups, answered by exactly three workers who each select the applying
// topics from those groups.
struct AnnotationTask {
  std::string text_id;
  std::vector<std::string> group_ids;
  std::vector<std::set<std::string>> responses;  // 3 workers x selected topic ids
};

struct PlanConfig {
  double threshold = 0.5;
  // Texts drawn per topic, score-weighted without replacement. The sampling
  // scheme is probability-weighted; a budget per topic bounds the plan size.
  std::size_t per_topic_count = 10;
  // Probability that a selected text also gets one uniformly random extra
  // group, guarding against sampling bias.
  double random_group_rate = 1.0;
  std::size_t random_text_count = 0;
  std::uint64_t seed = 0;
};

// Model-score-driven task planning; scores is [N x T] aligned with
// texts/topics order. Per topic, texts at or above the threshold are sampled
// with probability proportional to their score and routed to that topic's
// group; tasks are merged per text with deduplicated groups.
std::vector<AnnotationTask> plan_annotation(const nn::Tensor<double>& scores,
                                            const std::vector<TextRecord>& texts,
                                            const std::vector<Topic>& topics,
                                            const PlanConfig& cfg);

void write_tasks_jsonl(const std::string& path, const std::vector<AnnotationTask>& tasks);

// 2-of-3 labels over every topic in the task's assigned groups; topics in
// unassigned groups stay out of the result (unlabeled).
struct InferredLabel {
  std::string text_id;
  std::string topic_id;
  std::uint8_t label;
};

std::vector<InferredLabel> majority_vote(const AnnotationTask& task,
                                         const std::vector<Topic>& topics);

}  // namespace topicmatch::data
