// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "topicmatch/common.hpp"
#include "topicmatch/nn/autodiff.hpp"
#include "topicmatch/nn/registry.hpp"
#include "topicmatch/text/tokenizer.hpp"

namespace topicmatch::encoder {

enum class Pooling { kCls, kMean, kMax };

std::string to_string(Pooling p);
Pooling pooling_from_string(const std::string& s);

struct EncoderConfig {
  std::size_t d_model = 64;
  std::size_t num_layers = 2;
  std::size_t num_heads = 4;
  std::size_t ffn_hidden = 256;
  std::size_t l_max = 128;
  double dropout = 0.1;
  Pooling pooling = Pooling::kCls;
  std::string activation = "gelu";  // "gelu" | "relu"

  void validate() const {
    if (d_model == 0 || num_layers == 0 || num_heads == 0 || ffn_hidden == 0 || l_max == 0) {
      throw ConfigError("encoder dimensions must be positive");
    }
    if (d_model % num_heads != 0) {
      throw ConfigError("d_model must be divisible by num_heads");
    }
    if (dropout < 0.0 || dropout >= 1.0) throw ConfigError("dropout must be in [0,1)");
    if (activation != "gelu" && activation != "relu") {
      throw ConfigError("unknown activation: " + activation);
    }
  }

  std::size_t head_dim() const { return d_model / num_heads; }
};

// Instrumented call counters backing the O(N + T) vs O(N * T) encoding
// contract checks.
std::uint64_t encode_call_count();
void reset_encode_calls();
void bump_encode_calls(std::uint64_t n);

std::uint64_t head_eval_count();
void reset_head_evals();
void bump_head_evals(std::uint64_t n);

// Transformer encoder over the registry-owned weights (post-layer-norm
// blocks, learned positions, masked multi-head attention). The same registry
// instance backs every branch that encodes, which is what makes bi-encoder
// weight sharing hold by construction.
template <typename T>
class EncoderNet {
 public:
  using Var = typename nn::Tape<T>::Var;

  EncoderNet(EncoderConfig config, nn::ParamRegistry<T>* reg, std::size_t vocab_size,
             std::uint64_t init_seed, const std::string& prefix = "encoder.")
      : cfg_(std::move(config)), reg_(reg), prefix_(prefix), vocab_size_(vocab_size) {
    cfg_.validate();
    reg_->add_weight(prefix_ + "token_embed", vocab_size_, cfg_.d_model, init_seed);
    reg_->add_weight(prefix_ + "pos_embed", cfg_.l_max, cfg_.d_model, init_seed);
    for (std::size_t l = 0; l < cfg_.num_layers; ++l) {
      const std::string lp = prefix_ + "layer" + std::to_string(l) + ".";
      reg_->add_weight(lp + "attn.wq", cfg_.d_model, cfg_.d_model, init_seed);
      reg_->add_bias(lp + "attn.bq", cfg_.d_model);
      reg_->add_weight(lp + "attn.wk", cfg_.d_model, cfg_.d_model, init_seed);
      reg_->add_bias(lp + "attn.bk", cfg_.d_model);
      reg_->add_weight(lp + "attn.wv", cfg_.d_model, cfg_.d_model, init_seed);
      reg_->add_bias(lp + "attn.bv", cfg_.d_model);
      reg_->add_weight(lp + "attn.wo", cfg_.d_model, cfg_.d_model, init_seed);
      reg_->add_bias(lp + "attn.bo", cfg_.d_model);
      reg_->add_gain(lp + "ln1.gain", cfg_.d_model);
      reg_->add_bias(lp + "ln1.bias", cfg_.d_model);
      reg_->add_weight(lp + "ffn.w1", cfg_.d_model, cfg_.ffn_hidden, init_seed);
      reg_->add_bias(lp + "ffn.b1", cfg_.ffn_hidden);
      reg_->add_weight(lp + "ffn.w2", cfg_.ffn_hidden, cfg_.d_model, init_seed);
      reg_->add_bias(lp + "ffn.b2", cfg_.d_model);
      reg_->add_gain(lp + "ln2.gain", cfg_.d_model);
      reg_->add_bias(lp + "ln2.bias", cfg_.d_model);
    }
  }

  const EncoderConfig& config() const { return cfg_; }
  nn::ParamRegistry<T>* registry() const { return reg_; }
  std::size_t vocab_size() const { return vocab_size_; }
  const std::string& prefix() const { return prefix_; }

  // Per-token embeddings [L x d_model]. Padded positions get no attention
  // weight; train mode applies seeded dropout.
  Var encode(nn::Tape<T>& tape, const text::TokenSequence& seq, bool train = false,
             Rng* rng = nullptr) const {
    if (seq.ids.empty()) throw DimensionError("encode: empty sequence");
    if (seq.ids.size() > cfg_.l_max) {
      throw DimensionError("encode: sequence length " + std::to_string(seq.ids.size()) +
                           " exceeds l_max " + std::to_string(cfg_.l_max));
    }
    bump_encode_calls(1);
    const std::size_t L = seq.ids.size();

    std::vector<int> pos_ids(L);
    for (std::size_t i = 0; i < L; ++i) pos_ids[i] = static_cast<int>(i);

    auto tok = tape.gather_rows(p(tape, "token_embed"), seq.ids);
    auto pos = tape.gather_rows(p(tape, "pos_embed"), pos_ids);
    auto x = tape.add(tok, pos);
    x = maybe_dropout(tape, x, train, rng);

    // Additive key-mask bias: 0 for real tokens, -1e30 for padding, applied
    // to every query row before softmax.
    nn::Tensor<T> mask_bias(1, L);
    bool any_pad = false;
    for (std::size_t i = 0; i < L; ++i) {
      if (!seq.mask[i]) {
        mask_bias.v[i] = T(-1e30);
        any_pad = true;
      }
    }
    auto mask_var = any_pad ? tape.input(mask_bias) : Var{};

    for (std::size_t l = 0; l < cfg_.num_layers; ++l) {
      const std::string lp = "layer" + std::to_string(l) + ".";
      auto attn = attention(tape, x, lp, mask_var, L, train, rng);
      attn = maybe_dropout(tape, attn, train, rng);
      x = tape.layer_norm(tape.add(x, attn), p(tape, lp + "ln1.gain"),
                          p(tape, lp + "ln1.bias"));
      auto h = tape.add_rowvec(tape.matmul(x, p(tape, lp + "ffn.w1")),
                               p(tape, lp + "ffn.b1"));
      h = cfg_.activation == "relu" ? tape.relu(h) : tape.gelu(h);
      auto f = tape.add_rowvec(tape.matmul(h, p(tape, lp + "ffn.w2")),
                               p(tape, lp + "ffn.b2"));
      f = maybe_dropout(tape, f, train, rng);
      x = tape.layer_norm(tape.add(x, f), p(tape, lp + "ln2.gain"),
                          p(tape, lp + "ln2.bias"));
    }
    return x;
  }

  // Reduce [L x d_model] token embeddings to [1 x d_model].
  Var pool(nn::Tape<T>& tape, Var token_embeddings, const std::vector<std::uint8_t>& mask,
           Pooling strategy) const {
    bool any = false;
    for (auto m : mask) any = any || (m != 0);
    if (!any) throw DimensionError("pool: mask has no real tokens");
    switch (strategy) {
      case Pooling::kCls:
        return tape.row(token_embeddings, 0);
      case Pooling::kMean:
        return tape.masked_mean_rows(token_embeddings, mask);
      case Pooling::kMax:
        return tape.masked_max_rows(token_embeddings, mask);
    }
    throw ConfigError("unknown pooling strategy");
  }

  Var encode_pooled(nn::Tape<T>& tape, const text::TokenSequence& seq, bool train = false,
                    Rng* rng = nullptr) const {
    return pool(tape, encode(tape, seq, train, rng), seq.mask, cfg_.pooling);
  }

 private:
  Var p(nn::Tape<T>& tape, const std::string& name) const {
    auto& param = reg_->lookup(prefix_ + name);
    return tape.param(&param.value, &param.grad);
  }

  Var maybe_dropout(nn::Tape<T>& tape, Var x, bool train, Rng* rng) const {
    if (!train || cfg_.dropout == 0.0) return x;
    if (!rng) throw ConfigError("train-mode encode requires an RNG for dropout");
    return tape.dropout(x, cfg_.dropout, *rng);
  }

  Var attention(nn::Tape<T>& tape, Var x, const std::string& lp, Var mask_var,
                std::size_t /*L*/, bool /*train*/, Rng* /*rng*/) const {
    auto q = tape.add_rowvec(tape.matmul(x, p(tape, lp + "attn.wq")), p(tape, lp + "attn.bq"));
    auto k = tape.add_rowvec(tape.matmul(x, p(tape, lp + "attn.wk")), p(tape, lp + "attn.bk"));
    auto v = tape.add_rowvec(tape.matmul(x, p(tape, lp + "attn.wv")), p(tape, lp + "attn.bv"));
    const std::size_t dh = cfg_.head_dim();
    const T inv_sqrt = T(1) / std::sqrt(static_cast<T>(dh));
    std::vector<Var> heads;
    heads.reserve(cfg_.num_heads);
    for (std::size_t h = 0; h < cfg_.num_heads; ++h) {
      auto qh = tape.slice_cols(q, h * dh, (h + 1) * dh);
      auto kh = tape.slice_cols(k, h * dh, (h + 1) * dh);
      auto vh = tape.slice_cols(v, h * dh, (h + 1) * dh);
      auto scores = tape.scale(tape.matmul_nt(qh, kh), inv_sqrt);
      if (mask_var.valid()) scores = tape.add_rowvec(scores, mask_var);
      auto probs = tape.softmax_rows(scores);
      heads.push_back(tape.matmul(probs, vh));
    }
    auto concat = cfg_.num_heads == 1 ? heads[0] : tape.concat_cols(heads);
    return tape.add_rowvec(tape.matmul(concat, p(tape, lp + "attn.wo")),
                           p(tape, lp + "attn.bo"));
  }

  EncoderConfig cfg_;
  nn::ParamRegistry<T>* reg_;
  std::string prefix_;
  std::size_t vocab_size_;
};

}  // namespace topicmatch::encoder
