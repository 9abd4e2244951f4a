// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/models/models.hpp"

#include <fstream>

#include "json.hpp"

namespace topicmatch::models {

using nlohmann::json;

std::string to_string(Architecture a) {
  switch (a) {
    case Architecture::kCross:
      return "cross";
    case Architecture::kBiCosine:
      return "bi_cosine";
    case Architecture::kBiConcat:
      return "bi_concat";
  }
  return "bi_concat";
}

std::string to_string(CombinationMode m) {
  switch (m) {
    case CombinationMode::kCosine:
      return "cosine";
    case CombinationMode::kConcat:
      return "concat";
    case CombinationMode::kConcatSub:
      return "concat_sub";
    case CombinationMode::kConcatSubMult:
      return "concat_sub_mult";
  }
  return "concat_sub_mult";
}

Architecture architecture_from_string(const std::string& s) {
  if (s == "cross") return Architecture::kCross;
  if (s == "bi_cosine") return Architecture::kBiCosine;
  if (s == "bi_concat") return Architecture::kBiConcat;
  throw ConfigError("unknown architecture: " + s);
}

CombinationMode combination_from_string(const std::string& s) {
  if (s == "cosine") return CombinationMode::kCosine;
  if (s == "concat") return CombinationMode::kConcat;
  if (s == "concat_sub") return CombinationMode::kConcatSub;
  if (s == "concat_sub_mult") return CombinationMode::kConcatSubMult;
  throw ConfigError("unknown combination mode: " + s);
}

void ModelConfig::validate() const {
  encoder.validate();
  if (architecture == Architecture::kBiCosine && combination != CombinationMode::kCosine) {
    throw ConfigError("bi_cosine takes no combination head");
  }
  if (architecture == Architecture::kBiConcat && combination == CombinationMode::kCosine) {
    throw ConfigError("bi_concat requires a concatenation combination mode");
  }
  if (head_dropout < 0.0 || head_dropout >= 1.0) {
    throw ConfigError("head_dropout must be in [0,1)");
  }
  if (topic_render != "name_desc" && topic_render != "desc") {
    throw ConfigError("unknown topic_render rule: " + topic_render);
  }
  if (precision != "f32" && precision != "f64") {
    throw ConfigError("precision must be f32 or f64");
  }
}

namespace {

json encoder_to_json(const encoder::EncoderConfig& e) {
  return json{{"d_model", e.d_model},       {"num_layers", e.num_layers},
              {"num_heads", e.num_heads},   {"ffn_hidden", e.ffn_hidden},
              {"l_max", e.l_max},           {"dropout", e.dropout},
              {"pooling", to_string(e.pooling)}, {"activation", e.activation}};
}

encoder::EncoderConfig encoder_from_json(const json& j, Architecture arch) {
  encoder::EncoderConfig e;
  e.d_model = j.value("d_model", e.d_model);
  e.num_layers = j.value("num_layers", e.num_layers);
  e.num_heads = j.value("num_heads", e.num_heads);
  e.ffn_hidden = j.value("ffn_hidden", e.ffn_hidden);
  e.l_max = j.value("l_max", e.l_max);
  e.dropout = j.value("dropout", e.dropout);
  e.activation = j.value("activation", e.activation);
  if (j.contains("pooling")) {
    e.pooling = encoder::pooling_from_string(j.at("pooling").get<std::string>());
  } else {
    // bi_cosine prefers mean-pooling, the concat models CLS.
    e.pooling = arch == Architecture::kBiCosine ? encoder::Pooling::kMean
                                                : encoder::Pooling::kCls;
  }
  return e;
}

}  // namespace

std::string ModelConfig::to_json_string() const {
  json j;
  j["architecture"] = to_string(architecture);
  j["combination"] = to_string(combination);
  j["encoder"] = encoder_to_json(encoder);
  j["head_dropout"] = head_dropout;
  j["topic_render"] = topic_render;
  j["precision"] = precision;
  return j.dump(2);
}

ModelConfig ModelConfig::from_json_string(const std::string& s) {
  json j;
  try {
    j = json::parse(s);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed model config: ") + e.what());
  }
  ModelConfig c;
  c.architecture = architecture_from_string(j.value("architecture", "bi_concat"));
  if (j.contains("combination")) {
    c.combination = combination_from_string(j.at("combination").get<std::string>());
  } else {
    c.combination = c.architecture == Architecture::kBiCosine
                        ? CombinationMode::kCosine
                        : CombinationMode::kConcatSubMult;
  }
  c.encoder = encoder_from_json(j.value("encoder", json::object()), c.architecture);
  c.head_dropout = j.value("head_dropout", c.head_dropout);
  c.topic_render = j.value("topic_render", c.topic_render);
  c.precision = j.value("precision", c.precision);
  c.validate();
  return c;
}

void ModelConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model config: " + path);
  out << to_json_string() << "\n";
}

ModelConfig ModelConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model config: " + path);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_string(s);
}

std::uint64_t ModelConfig::config_hash() const { return fnv1a(to_json_string()); }

std::string render_topic(const std::string& name, const std::string& description,
                         const std::string& rule) {
  if (rule == "desc") return description;
  return name + ": " + description;
}

text::TokenSequence make_cross_sequence(const std::string& text_str,
                                        const std::string& topic_str,
                                        const text::Vocabulary& vocab, std::size_t l_max) {
  auto text_toks = text::split_tokens(text_str);
  auto topic_toks = text::split_tokens(topic_str);
  // [CLS] + text + [SEP] + topic + [SEP]
  const std::size_t overhead = 3;
  if (topic_toks.size() + overhead > l_max) {
    topic_toks.resize(l_max - overhead);
  }
  const std::size_t text_budget = l_max - overhead - topic_toks.size();
  if (text_toks.size() > text_budget) text_toks.resize(text_budget);

  text::TokenSequence seq;
  seq.ids.push_back(text::Vocabulary::kCls);
  for (const auto& t : text_toks) seq.ids.push_back(vocab.id_of(t));
  seq.ids.push_back(text::Vocabulary::kSep);
  for (const auto& t : topic_toks) seq.ids.push_back(vocab.id_of(t));
  seq.ids.push_back(text::Vocabulary::kSep);
  seq.mask.assign(seq.ids.size(), 1);
  return seq;
}

}  // namespace topicmatch::models
