// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "topicmatch/encoder/encoder.hpp"
#include "topicmatch/nn/autodiff.hpp"
#include "topicmatch/nn/registry.hpp"
#include "topicmatch/text/tokenizer.hpp"

namespace topicmatch::models {

enum class Architecture { kCross, kBiCosine, kBiConcat };
enum class CombinationMode { kCosine, kConcat, kConcatSub, kConcatSubMult };

std::string to_string(Architecture a);
std::string to_string(CombinationMode m);
Architecture architecture_from_string(const std::string& s);
CombinationMode combination_from_string(const std::string& s);

// d_E / d_model for the concatenation-based modes.
inline std::size_t combination_width_factor(CombinationMode m) {
  switch (m) {
    case CombinationMode::kConcat:
      return 2;
    case CombinationMode::kConcatSub:
      return 3;
    case CombinationMode::kConcatSubMult:
      return 4;
    case CombinationMode::kCosine:
      break;
  }
  throw ConfigError("combination width undefined for cosine mode");
}

struct ModelConfig {
  Architecture architecture = Architecture::kBiConcat;
  CombinationMode combination = CombinationMode::kConcatSubMult;
  encoder::EncoderConfig encoder;
  double head_dropout = 0.1;
  // "name_desc" feeds "name: description" to the encoder; "desc" feeds the
  // description alone.
  std::string topic_render = "name_desc";
  std::string precision = "f32";  // "f32" | "f64"

  void validate() const;

  // Canonical JSON round-trip; config_hash() hashes the canonical dump.
  std::string to_json_string() const;
  static ModelConfig from_json_string(const std::string& s);
  void save(const std::string& path) const;
  static ModelConfig load(const std::string& path);
  std::uint64_t config_hash() const;
};

std::string render_topic(const std::string& name, const std::string& description,
                         const std::string& rule);

// One trainable text-topic pair model. A single ParamRegistry owns encoder
// and head weights, so the text and topic branches of a bi-encoder share
// weights by construction.
template <typename T>
class PairModel {
 public:
  using Var = typename nn::Tape<T>::Var;

  PairModel(ModelConfig config, std::size_t vocab_size, std::uint64_t init_seed)
      : cfg_(std::move(config)), init_seed_(init_seed) {
    cfg_.validate();
    net_ = std::make_unique<encoder::EncoderNet<T>>(cfg_.encoder, &reg_, vocab_size,
                                                    init_seed);
    const std::size_t d = cfg_.encoder.d_model;
    if (cfg_.architecture == Architecture::kBiConcat) {
      const std::size_t d_e = d * combination_width_factor(cfg_.combination);
      reg_.add_weight("head.ffn1.w", d_e, d, init_seed);
      reg_.add_bias("head.ffn1.b", d);
      reg_.add_weight("head.ffn2.w", d, 1, init_seed);
      reg_.add_bias("head.ffn2.b", 1);
    } else if (cfg_.architecture == Architecture::kCross) {
      reg_.add_weight("head.cls.w", d, 1, init_seed);
      reg_.add_bias("head.cls.b", 1);
    }
  }

  const ModelConfig& config() const { return cfg_; }
  nn::ParamRegistry<T>& registry() { return reg_; }
  const nn::ParamRegistry<T>& registry() const { return reg_; }
  const encoder::EncoderNet<T>& net() const { return *net_; }
  std::uint64_t init_seed() const { return init_seed_; }

  // E = [U; V; U-V; U.V] per combination mode (U topic, V text).
  Var combine(nn::Tape<T>& tape, Var topic_u, Var text_v) const {
    switch (cfg_.combination) {
      case CombinationMode::kConcat:
        return tape.concat_cols({topic_u, text_v});
      case CombinationMode::kConcatSub:
        return tape.concat_cols({topic_u, text_v, tape.sub(topic_u, text_v)});
      case CombinationMode::kConcatSubMult:
        return tape.concat_cols({topic_u, text_v, tape.sub(topic_u, text_v),
                                 tape.hadamard(topic_u, text_v)});
      case CombinationMode::kCosine:
        break;
    }
    throw ConfigError("combine undefined for cosine mode");
  }

  // logit = FFN2(dropout(relu(FFN1(E)))); one evaluation bumps the head
  // counter used by the complexity-contract tests.
  Var head_logit(nn::Tape<T>& tape, Var combined, bool train, Rng* rng) const {
    encoder::bump_head_evals(1);
    auto h = tape.add_rowvec(tape.matmul(combined, p(tape, "head.ffn1.w")),
                             p(tape, "head.ffn1.b"));
    h = tape.relu(h);
    if (train && cfg_.head_dropout > 0.0) {
      if (!rng) throw ConfigError("train-mode head requires an RNG for dropout");
      h = tape.dropout(h, cfg_.head_dropout, *rng);
    }
    auto logit = tape.add_rowvec(tape.matmul(h, p(tape, "head.ffn2.w")),
                                 p(tape, "head.ffn2.b"));
    return logit;
  }

  // Pooled embeddings for the two bi-encoder branches.
  Var encode_text(nn::Tape<T>& tape, const text::TokenSequence& seq, bool train = false,
                  Rng* rng = nullptr) const {
    return net_->encode_pooled(tape, seq, train, rng);
  }
  Var encode_topic(nn::Tape<T>& tape, const text::TokenSequence& seq, bool train = false,
                   Rng* rng = nullptr) const {
    return net_->encode_pooled(tape, seq, train, rng);
  }

  // Raw pair output: logit for cross/bi_concat, cosine for bi_cosine.
  Var pair_output(nn::Tape<T>& tape, const text::TokenSequence& text_seq,
                  const text::TokenSequence& topic_seq, bool train = false,
                  Rng* rng = nullptr) const {
    switch (cfg_.architecture) {
      case Architecture::kBiConcat: {
        auto v = encode_text(tape, text_seq, train, rng);
        auto u = encode_topic(tape, topic_seq, train, rng);
        return head_logit(tape, combine(tape, u, v), train, rng);
      }
      case Architecture::kBiCosine: {
        auto v = encode_text(tape, text_seq, train, rng);
        auto u = encode_topic(tape, topic_seq, train, rng);
        encoder::bump_head_evals(1);
        return tape.cosine(u, v);
      }
      case Architecture::kCross: {
        // Combined sequence arrives pre-built in text_seq; topic_seq unused.
        (void)topic_seq;
        auto tokens = net_->encode(tape, text_seq, train, rng);
        auto cls = net_->pool(tape, tokens, text_seq.mask, encoder::Pooling::kCls);
        encoder::bump_head_evals(1);
        return tape.add_rowvec(tape.matmul(cls, p(tape, "head.cls.w")),
                               p(tape, "head.cls.b"));
      }
    }
    throw ConfigError("unknown architecture");
  }

  // Loss per the architecture: BCE on logits, MSE on cosine.
  Var pair_loss(nn::Tape<T>& tape, const text::TokenSequence& text_seq,
                const text::TokenSequence& topic_seq, double label, bool train = false,
                Rng* rng = nullptr) const {
    auto out = pair_output(tape, text_seq, topic_seq, train, rng);
    if (cfg_.architecture == Architecture::kBiCosine) {
      return tape.mse_to_label(out, static_cast<T>(label));
    }
    return tape.bce_with_logits(out, static_cast<T>(label));
  }

  // Serving-score mapping into [0,1]: sigmoid for logit architectures,
  // (c+1)/2 for cosine (monotone, so ranking metrics are unaffected).
  static double to_unit_score(Architecture arch, double raw) {
    if (arch == Architecture::kBiCosine) return 0.5 * (raw + 1.0);
    return 1.0 / (1.0 + std::exp(-raw));
  }

  double score_pair(const text::TokenSequence& text_seq,
                    const text::TokenSequence& topic_seq) const {
    nn::Tape<T> tape;
    auto out = pair_output(tape, text_seq, topic_seq, false, nullptr);
    return to_unit_score(cfg_.architecture, static_cast<double>(tape.scalar(out)));
  }

 private:
  Var p(nn::Tape<T>& tape, const std::string& name) const {
    auto& param = const_cast<nn::ParamRegistry<T>&>(reg_).lookup(name);
    return tape.param(&param.value, &param.grad);
  }

  ModelConfig cfg_;
  nn::ParamRegistry<T> reg_;
  std::unique_ptr<encoder::EncoderNet<T>> net_;
  std::uint64_t init_seed_ = 0;
};

// Builds "[CLS] text [SEP] topic [SEP]", truncating the text first so the
// topic rendering always survives.
text::TokenSequence make_cross_sequence(const std::string& text_str,
                                        const std::string& topic_str,
                                        const text::Vocabulary& vocab, std::size_t l_max);

}  // namespace topicmatch::models
