// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "topicmatch/common.hpp"

namespace topicmatch::data {

struct Topic {
  std::string topic_id;
  std::string name;
  std::string description;
  std::string group_id;
};

struct TextRecord {
  std::string text_id;
  std::string text;
  std::string source;
};

// Sparse ternary labels over (text, topic) index pairs: present entries are
// 0/1, absent pairs are unlabeled and never materialized.
class PartialLabelMatrix {
 public:
  struct Entry {
    std::size_t text_idx;
    std::size_t topic_idx;
    std::uint8_t label;
  };

  void set(std::size_t text_idx, std::size_t topic_idx, bool label) {
    map_[key(text_idx, topic_idx)] = label ? 1 : 0;
  }

  std::optional<int> get(std::size_t text_idx, std::size_t topic_idx) const {
    auto it = map_.find(key(text_idx, topic_idx));
    if (it == map_.end()) return std::nullopt;
    return static_cast<int>(it->second);
  }

  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  // Entries sorted by (text, topic); the deterministic iteration order used
  // everywhere downstream.
  std::vector<Entry> entries() const;

  std::vector<std::size_t> positives_per_topic(std::size_t num_topics) const;

 private:
  static std::uint64_t key(std::size_t t, std::size_t j) {
    return (static_cast<std::uint64_t>(t) << 32) | static_cast<std::uint64_t>(j);
  }
  std::unordered_map<std::uint64_t, std::uint8_t> map_;
};

struct Dataset {
  std::vector<TextRecord> texts;
  std::vector<Topic> topics;
  PartialLabelMatrix labels;
  std::unordered_map<std::string, std::size_t> text_index;
  std::unordered_map<std::string, std::size_t> topic_index;

  void rebuild_indices();
  std::size_t text_idx(const std::string& id) const;
  std::size_t topic_idx(const std::string& id) const;
};

// JSONL readers/writers. One object per line:
//   texts.jsonl        {"text_id", "text", "source"}
//   topics.jsonl       {"topic_id", "name", "description", "group_id"}
//   annotations.jsonl  {"text_id", "topic_id", "label"}
std::vector<TextRecord> read_texts_jsonl(const std::string& path);
std::vector<Topic> read_topics_jsonl(const std::string& path);
void write_texts_jsonl(const std::string& path, const std::vector<TextRecord>& texts);
void write_topics_jsonl(const std::string& path, const std::vector<Topic>& topics);

Dataset load_dataset(const std::string& texts_path, const std::string& topics_path,
                     const std::string& annotations_path);
void write_annotations_jsonl(const std::string& path, const Dataset& ds);

}  // namespace topicmatch::data
