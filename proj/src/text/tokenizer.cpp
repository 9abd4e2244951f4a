// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/text/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "topicmatch/common.hpp"

namespace topicmatch::text {

namespace {

const char* kReservedNames[] = {"[PAD]", "[UNK]", "[CLS]", "[SEP]"};

bool is_space_byte(unsigned char c) { return std::isspace(c) != 0; }
bool is_punct_byte(unsigned char c) { return c < 128 && std::ispunct(c) != 0; }

}  // namespace

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) {
      out.push_back(word);
      word.clear();
    }
  };
  for (unsigned char c : text) {
    if (is_space_byte(c)) {
      flush();
    } else if (is_punct_byte(c)) {
      flush();
      out.emplace_back(1, static_cast<char>(c));
    } else {
      word.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  flush();
  return out;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::string word;
  for (unsigned char c : text) {
    if (is_space_byte(c)) {
      if (!word.empty()) {
        out.push_back(word);
        word.clear();
      }
    } else {
      word.push_back(static_cast<char>(c));
    }
  }
  if (!word.empty()) out.push_back(word);
  return out;
}

Vocabulary::Vocabulary() {
  for (int i = 0; i < kNumReserved; ++i) insert(kReservedNames[i], i);
}

void Vocabulary::insert(const std::string& token, int id) {
  if (static_cast<std::size_t>(id) >= id_to_token_.size()) {
    id_to_token_.resize(static_cast<std::size_t>(id) + 1);
  }
  id_to_token_[static_cast<std::size_t>(id)] = token;
  token_to_id_[token] = id;
}

Vocabulary Vocabulary::build(const std::vector<std::string>& texts, int min_frequency,
                             std::size_t max_size) {
  // std::map keeps tie ordering lexicographic without a second sort key pass.
  std::map<std::string, std::size_t> freq;
  for (const auto& t : texts) {
    for (auto& tok : split_tokens(t)) ++freq[tok];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  Vocabulary v;
  v.min_frequency_ = min_frequency;
  int next_id = kNumReserved;
  for (const auto& [tok, count] : ranked) {
    if (count < static_cast<std::size_t>(min_frequency)) continue;
    if (max_size && v.size() >= max_size) break;
    if (v.token_to_id_.count(tok)) continue;  // collides with a reserved name
    v.insert(tok, next_id++);
  }
  return v;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write vocabulary: " + path);
  for (std::size_t id = 0; id < id_to_token_.size(); ++id) {
    out << id_to_token_[id] << '\t' << id << '\n';
  }
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open vocabulary: " + path);
  Vocabulary v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError("vocabulary line " + std::to_string(lineno) + " lacks a tab");
    }
    const std::string tok = line.substr(0, tab);
    const int id = std::stoi(line.substr(tab + 1));
    if (id < kNumReserved) {
      if (tok != kReservedNames[id]) {
        throw IoError("reserved id " + std::to_string(id) + " reassigned in " + path);
      }
      continue;
    }
    v.insert(tok, id);
  }
  return v;
}

TokenSequence tokenize(const std::string& text, const Vocabulary& vocab, bool add_cls,
                       std::size_t l_max) {
  TokenSequence seq;
  if (add_cls) seq.ids.push_back(Vocabulary::kCls);
  for (const auto& tok : split_tokens(text)) {
    if (seq.ids.size() >= l_max) break;
    seq.ids.push_back(vocab.id_of(tok));
  }
  if (seq.ids.size() > l_max) seq.ids.resize(l_max);
  seq.mask.assign(seq.ids.size(), 1);
  return seq;
}

}  // namespace topicmatch::text
