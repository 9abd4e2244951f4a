// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace topicmatch::text {

// Lowercases ASCII and splits on whitespace; ASCII punctuation becomes its
// own single-character token. Non-ASCII bytes are treated as word characters.
std::vector<std::string> split_tokens(const std::string& text);

// Whole-word display split used by the explainer (punctuation stays attached).
std::vector<std::string> split_words(const std::string& text);

class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kCls = 2;
  static constexpr int kSep = 3;
  static constexpr int kNumReserved = 4;

  Vocabulary();

  // Frequency-ranked vocabulary over the corpus; tokens below min_frequency
  // map to UNK. Deterministic: ties broken lexicographically.
  static Vocabulary build(const std::vector<std::string>& texts, int min_frequency = 1,
                          std::size_t max_size = 0);

  int id_of(const std::string& token) const {
    auto it = token_to_id_.find(token);
    return it == token_to_id_.end() ? kUnk : it->second;
  }

  const std::string& token_of(int id) const { return id_to_token_.at(id); }
  std::size_t size() const { return id_to_token_.size(); }
  int min_frequency() const { return min_frequency_; }

  // Newline-delimited "token<TAB>id" rows.
  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

 private:
  void insert(const std::string& token, int id);

  std::unordered_map<std::string, int> token_to_id_;
  std::vector<std::string> id_to_token_;
  int min_frequency_ = 1;
};

// Token ids plus attention mask. The mask is all ones after tokenize();
// zeros only appear when padding is appended.
struct TokenSequence {
  std::vector<int> ids;
  std::vector<std::uint8_t> mask;

  std::size_t size() const { return ids.size(); }

  void pad_to(std::size_t len, int pad_id = Vocabulary::kPad) {
    while (ids.size() < len) {
      ids.push_back(pad_id);
      mask.push_back(0);
    }
  }
};

// Empty text yields just [CLS] (when requested) or an empty sequence.
TokenSequence tokenize(const std::string& text, const Vocabulary& vocab, bool add_cls,
                       std::size_t l_max);

}  // namespace topicmatch::text
