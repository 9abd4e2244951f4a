// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/data/dataset.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"

namespace topicmatch::data {

using nlohmann::json;

std::vector<PartialLabelMatrix::Entry> PartialLabelMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(map_.size());
  for (const auto& [k, v] : map_) {
    out.push_back(Entry{static_cast<std::size_t>(k >> 32),
                        static_cast<std::size_t>(k & 0xffffffffULL), v});
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return a.text_idx != b.text_idx ? a.text_idx < b.text_idx : a.topic_idx < b.topic_idx;
  });
  return out;
}

std::vector<std::size_t> PartialLabelMatrix::positives_per_topic(
    std::size_t num_topics) const {
  std::vector<std::size_t> np(num_topics, 0);
  for (const auto& [k, v] : map_) {
    if (v) ++np[static_cast<std::size_t>(k & 0xffffffffULL)];
  }
  return np;
}

void Dataset::rebuild_indices() {
  text_index.clear();
  topic_index.clear();
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (!text_index.emplace(texts[i].text_id, i).second) {
      throw ConfigError("duplicate text_id: " + texts[i].text_id);
    }
  }
  for (std::size_t i = 0; i < topics.size(); ++i) {
    if (!topic_index.emplace(topics[i].topic_id, i).second) {
      throw ConfigError("duplicate topic_id: " + topics[i].topic_id);
    }
  }
}

std::size_t Dataset::text_idx(const std::string& id) const {
  auto it = text_index.find(id);
  if (it == text_index.end()) throw ConfigError("unknown text_id: " + id);
  return it->second;
}

std::size_t Dataset::topic_idx(const std::string& id) const {
  auto it = topic_index.find(id);
  if (it == topic_index.end()) throw ConfigError("unknown topic_id: " + id);
  return it->second;
}

namespace {

void for_each_jsonl(const std::string& path, const std::function<void(const json&)>& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": bad json: " + e.what());
    }
    fn(j);
  }
}

}  // namespace

std::vector<TextRecord> read_texts_jsonl(const std::string& path) {
  std::vector<TextRecord> out;
  for_each_jsonl(path, [&](const json& j) {
    out.push_back(TextRecord{j.at("text_id").get<std::string>(),
                             j.at("text").get<std::string>(), j.value("source", "")});
  });
  return out;
}

std::vector<Topic> read_topics_jsonl(const std::string& path) {
  std::vector<Topic> out;
  for_each_jsonl(path, [&](const json& j) {
    Topic t{j.at("topic_id").get<std::string>(), j.at("name").get<std::string>(),
            j.at("description").get<std::string>(), j.value("group_id", "")};
    if (t.description.empty()) throw ConfigError("topic " + t.topic_id + " lacks a description");
    out.push_back(std::move(t));
  });
  return out;
}

void write_texts_jsonl(const std::string& path, const std::vector<TextRecord>& texts) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& t : texts) {
    out << json{{"text_id", t.text_id}, {"text", t.text}, {"source", t.source}}.dump()
        << "\n";
  }
}

void write_topics_jsonl(const std::string& path, const std::vector<Topic>& topics) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& t : topics) {
    out << json{{"topic_id", t.topic_id},
                {"name", t.name},
                {"description", t.description},
                {"group_id", t.group_id}}
               .dump()
        << "\n";
  }
}

Dataset load_dataset(const std::string& texts_path, const std::string& topics_path,
                     const std::string& annotations_path) {
  Dataset ds;
  ds.texts = read_texts_jsonl(texts_path);
  ds.topics = read_topics_jsonl(topics_path);
  ds.rebuild_indices();
  for_each_jsonl(annotations_path, [&](const json& j) {
    const auto ti = ds.text_idx(j.at("text_id").get<std::string>());
    const auto tj = ds.topic_idx(j.at("topic_id").get<std::string>());
    const int label = j.at("label").get<int>();
    if (label != 0 && label != 1) throw ConfigError("labels must be 0 or 1");
    ds.labels.set(ti, tj, label == 1);
  });
  return ds;
}

void write_annotations_jsonl(const std::string& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& e : ds.labels.entries()) {
    out << json{{"text_id", ds.texts[e.text_idx].text_id},
                {"topic_id", ds.topics[e.topic_idx].topic_id},
                {"label", static_cast<int>(e.label)}}
               .dump()
        << "\n";
  }
}

}  // namespace topicmatch::data
