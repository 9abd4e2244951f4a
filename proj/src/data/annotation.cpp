// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/data/annotation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "json.hpp"
#include "topicmatch/rng.hpp"

namespace topicmatch::data {

using nlohmann::json;

namespace {

// Score-weighted sample of k indices without replacement
// (Efraimidis-Spirakis: rank by u^(1/w)).
std::vector<std::size_t> weighted_sample(const std::vector<std::size_t>& candidates,
                                         const std::vector<double>& weights,
                                         std::size_t k, Rng& rng) {
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double u = rng.uniform();
    keyed.emplace_back(std::pow(u, 1.0 / weights[i]), candidates[i]);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < std::min(k, keyed.size()); ++i) out.push_back(keyed[i].second);
  return out;
}

}  // namespace

std::vector<AnnotationTask> plan_annotation(const nn::Tensor<double>& scores,
                                            const std::vector<TextRecord>& texts,
                                            const std::vector<Topic>& topics,
                                            const PlanConfig& cfg) {
  if (cfg.threshold < 0.0 || cfg.threshold > 1.0) {
    throw ConfigError("plan threshold must be in [0,1]");
  }
  if (scores.rows() != texts.size() || scores.cols() != topics.size()) {
    throw DimensionError("score matrix does not match texts x topics");
  }
  for (double s : scores.v) {
    if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("scores must lie in [0,1]");
  }

  std::vector<std::string> group_ids;
  for (const auto& t : topics) {
    if (std::find(group_ids.begin(), group_ids.end(), t.group_id) == group_ids.end()) {
      group_ids.push_back(t.group_id);
    }
  }

  // text index -> assigned groups, insertion-ordered and deduplicated
  std::map<std::size_t, std::vector<std::string>> assigned;
  auto assign = [&](std::size_t text, const std::string& group) {
    auto& v = assigned[text];
    if (std::find(v.begin(), v.end(), group) == v.end()) v.push_back(group);
  };

  Rng rng(mix_seed(cfg.seed, 0xA110C8));
  for (std::size_t j = 0; j < topics.size(); ++j) {
    std::vector<std::size_t> eligible;
    std::vector<double> weights;
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const double s = scores.at(i, j);
      if (s >= cfg.threshold && s > 0.0) {
        eligible.push_back(i);
        weights.push_back(s);
      }
    }
    for (std::size_t i : weighted_sample(eligible, weights, cfg.per_topic_count, rng)) {
      assign(i, topics[j].group_id);
      if (group_ids.size() > 1 && rng.bernoulli(cfg.random_group_rate)) {
        // one uniformly random *other* group
        std::string other;
        do {
          other = group_ids[rng.below(group_ids.size())];
        } while (other == topics[j].group_id);
        assign(i, other);
      }
    }
  }

  // background random texts with a random group each
  if (cfg.random_text_count > 0 && !group_ids.empty()) {
    std::vector<std::size_t> all(texts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    rng.shuffle(all);
    for (std::size_t i = 0; i < std::min(cfg.random_text_count, all.size()); ++i) {
      assign(all[i], group_ids[rng.below(group_ids.size())]);
    }
  }

  std::vector<AnnotationTask> tasks;
  tasks.reserve(assigned.size());
  for (const auto& [text, groups] : assigned) {
    AnnotationTask t;
    t.text_id = texts[text].text_id;
    t.group_ids = groups;
    tasks.push_back(std::move(t));
  }
  return tasks;
}

void write_tasks_jsonl(const std::string& path, const std::vector<AnnotationTask>& tasks) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& t : tasks) {
    out << json{{"text_id", t.text_id}, {"group_ids", t.group_ids}}.dump() << "\n";
  }
}

std::vector<InferredLabel> majority_vote(const AnnotationTask& task,
                                         const std::vector<Topic>& topics) {
  if (task.responses.size() != 3) {
    throw ConfigError("task " + task.text_id + " needs exactly 3 worker responses, has " +
                      std::to_string(task.responses.size()));
  }
  std::vector<InferredLabel> out;
  for (const auto& topic : topics) {
    const bool in_assigned_group =
        std::find(task.group_ids.begin(), task.group_ids.end(), topic.group_id) !=
        task.group_ids.end();
    if (!in_assigned_group) continue;  // unlabeled
    int votes = 0;
    for (const auto& r : task.responses) votes += r.count(topic.topic_id) ? 1 : 0;
    out.push_back(InferredLabel{task.text_id, topic.topic_id,
                                static_cast<std::uint8_t>(votes >= 2 ? 1 : 0)});
  }
  return out;
}

}  // namespace topicmatch::data
