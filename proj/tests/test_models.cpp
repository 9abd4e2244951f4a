// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/models/models.hpp"

#include "doctest.h"
#include "topicmatch/nn/gradcheck.hpp"

using namespace topicmatch;
using namespace topicmatch::models;
using topicmatch::text::TokenSequence;
using topicmatch::text::Vocabulary;

namespace {

Vocabulary demo_vocab() {
  return Vocabulary::build({"lovely spa and wellness hotel", "city trip with museums",
                            "romantic getaway by the beach", "spa : massage sauna relax"});
}

ModelConfig tiny_model_config(Architecture arch, CombinationMode mode) {
  ModelConfig cfg;
  cfg.architecture = arch;
  cfg.combination = mode;
  cfg.encoder.d_model = 8;
  cfg.encoder.num_layers = 1;
  cfg.encoder.num_heads = 2;
  cfg.encoder.ffn_hidden = 16;
  cfg.encoder.l_max = 16;
  cfg.encoder.dropout = 0.0;
  cfg.encoder.pooling = arch == Architecture::kBiCosine ? encoder::Pooling::kMean
                                                        : encoder::Pooling::kCls;
  cfg.head_dropout = 0.0;
  return cfg;
}

}  // namespace

TEST_CASE("combine: direct formula, identity case, dimension ladder") {
  auto cfg = tiny_model_config(Architecture::kBiConcat, CombinationMode::kConcatSubMult);
  PairModel<double> model(cfg, 16, 1);

  nn::Tape<double> t;
  auto u = t.input(nn::Tensor<double>::from_rows({{1, 2}}));
  auto v = t.input(nn::Tensor<double>::from_rows({{3, 4}}));
  auto e = model.combine(t, u, v);
  CHECK(t.val(e).v == std::vector<double>{1, 2, 3, 4, -2, -2, 3, 8});

  auto same = model.combine(t, u, u);
  CHECK(t.val(same).v == std::vector<double>{1, 2, 1, 2, 0, 0, 1, 4});

  // d_model=64, concat_sub_mult -> d_E = 256, and FFN1 input must equal it
  auto cfg64 = tiny_model_config(Architecture::kBiConcat, CombinationMode::kConcatSubMult);
  cfg64.encoder.d_model = 64;
  cfg64.encoder.num_heads = 4;
  PairModel<double> big(cfg64, 16, 1);
  CHECK(big.registry().lookup("head.ffn1.w").value.rows() == 256);
  CHECK(big.registry().lookup("head.ffn1.w").value.cols() == 64);

  for (auto [mode, factor] :
       {std::pair{CombinationMode::kConcat, 2ul}, {CombinationMode::kConcatSub, 3ul},
        {CombinationMode::kConcatSubMult, 4ul}}) {
    PairModel<double> m(tiny_model_config(Architecture::kBiConcat, mode), 16, 1);
    CHECK(m.registry().lookup("head.ffn1.w").value.rows() == 8 * factor);
  }
}

TEST_CASE("zero-initialized head gives probability 0.5 for any pair") {
  auto vocab = demo_vocab();
  for (auto arch : {Architecture::kBiConcat, Architecture::kCross}) {
    auto cfg = tiny_model_config(
        arch, arch == Architecture::kCross ? CombinationMode::kConcatSubMult
                                           : CombinationMode::kConcatSub);
    PairModel<double> model(cfg, vocab.size(), 3);
    // zero the head weights
    auto& reg = model.registry();
    for (std::size_t i = 0; i < reg.size(); ++i) {
      auto& p = reg.at(i);
      if (p.name.rfind("head.", 0) == 0) p.value.zero();
    }
    TokenSequence a = text::tokenize("lovely spa hotel", vocab, true, 16);
    TokenSequence b =
        arch == Architecture::kCross
            ? make_cross_sequence("lovely spa hotel", "spa: massage sauna", vocab, 16)
            : text::tokenize("spa: massage sauna", vocab, true, 16);
    const double prob = arch == Architecture::kCross ? model.score_pair(b, b)
                                                     : model.score_pair(a, b);
    CHECK(prob == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("cross sequence: construction rule, order sensitivity, trailing SEP") {
  auto vocab = demo_vocab();
  auto ab = make_cross_sequence("city trip", "romantic getaway", vocab, 16);
  auto ba = make_cross_sequence("romantic getaway", "city trip", vocab, 16);
  CHECK(ab.ids != ba.ids);
  CHECK(ab.ids.front() == Vocabulary::kCls);
  CHECK(ab.ids.back() == Vocabulary::kSep);
  // [CLS] city trip [SEP] romantic getaway [SEP]
  CHECK(ab.ids.size() == 7);
  CHECK(ab.ids[3] == Vocabulary::kSep);

  // text truncated first: topic tokens survive a tight budget
  std::string longtext;
  for (int i = 0; i < 50; ++i) longtext += "city ";
  auto tight = make_cross_sequence(longtext, "romantic getaway", vocab, 12);
  CHECK(tight.ids.size() == 12);
  CHECK(tight.ids.back() == Vocabulary::kSep);
  int seps = 0;
  for (int id : tight.ids) seps += id == Vocabulary::kSep ? 1 : 0;
  CHECK(seps == 2);
}

TEST_CASE("bi-encoder branches share one parameter registry") {
  auto vocab = demo_vocab();
  auto cfg = tiny_model_config(Architecture::kBiConcat, CombinationMode::kConcatSubMult);
  PairModel<double> model(cfg, vocab.size(), 5);
  // Both branches resolve parameters through the same registry object, so a
  // mutation through one branch is visible to the other.
  auto& reg = model.registry();
  const double before = reg.lookup("encoder.token_embed").value.v[0];
  reg.lookup("encoder.token_embed").value.v[0] = before + 1.0;

  nn::Tape<double> t;
  auto seq = text::tokenize("lovely spa", vocab, true, 16);
  auto u = model.encode_topic(t, seq);
  auto v = model.encode_text(t, seq);
  CHECK(t.val(u).v == t.val(v).v);
}

TEST_CASE("caching equivalence: one text against two topics") {
  auto vocab = demo_vocab();
  auto cfg = tiny_model_config(Architecture::kBiConcat, CombinationMode::kConcatSubMult);
  PairModel<double> model(cfg, vocab.size(), 11);

  auto text_seq = text::tokenize("romantic getaway by the beach", vocab, true, 16);
  auto topic_a = text::tokenize("romantic: candles dinner", vocab, true, 16);
  auto topic_b = text::tokenize("city: museums streets", vocab, true, 16);

  // encode text once, reuse the pooled vector for both topics
  nn::Tape<double> t;
  auto v = model.encode_text(t, text_seq);
  auto ua = model.encode_topic(t, topic_a);
  auto ub = model.encode_topic(t, topic_b);
  const double la = t.scalar(model.head_logit(t, model.combine(t, ua, v), false, nullptr));
  const double lb = t.scalar(model.head_logit(t, model.combine(t, ub, v), false, nullptr));

  // independent double-encoding
  nn::Tape<double> t2;
  auto out_a = model.pair_output(t2, text_seq, topic_a);
  const double la2 = t2.scalar(out_a);
  nn::Tape<double> t3;
  auto out_b = model.pair_output(t3, text_seq, topic_b);
  const double lb2 = t3.scalar(out_b);

  CHECK(la == la2);
  CHECK(lb == lb2);
}

TEST_CASE("gradients match finite differences for every architecture") {
  auto vocab = demo_vocab();
  const struct {
    Architecture arch;
    CombinationMode mode;
  } variants[] = {
      {Architecture::kCross, CombinationMode::kConcatSubMult},
      {Architecture::kBiCosine, CombinationMode::kCosine},
      {Architecture::kBiConcat, CombinationMode::kConcat},
      {Architecture::kBiConcat, CombinationMode::kConcatSub},
      {Architecture::kBiConcat, CombinationMode::kConcatSubMult},
  };
  for (const auto& vnt : variants) {
    CAPTURE(to_string(vnt.arch));
    CAPTURE(to_string(vnt.mode));
    auto cfg = tiny_model_config(vnt.arch, vnt.mode);
    PairModel<double> model(cfg, vocab.size(), 13);

    TokenSequence text_seq = text::tokenize("lovely spa and wellness", vocab, true, 16);
    TokenSequence topic_seq =
        vnt.arch == Architecture::kCross
            ? make_cross_sequence("lovely spa and wellness", "spa: massage sauna", vocab, 16)
            : text::tokenize("spa: massage sauna relax", vocab, true, 16);
    TokenSequence text2 = text::tokenize("city trip with museums", vocab, true, 16);

    auto build = [&](nn::Tape<double>& t) {
      auto l1 = model.pair_loss(t, vnt.arch == Architecture::kCross ? topic_seq : text_seq,
                                topic_seq, 1.0);
      auto l2 = model.pair_loss(t, vnt.arch == Architecture::kCross ? topic_seq : text2,
                                topic_seq, 0.0);
      return t.scale(t.add(l1, l2), 0.5);
    };
    auto rep = grad_check<double>(build, model.registry(), 1e-5, 1e-4);
    INFO("worst ", rep.worst_param, " rel ", rep.max_rel_err, " a=", rep.analytic,
         " n=", rep.numeric);
    CHECK(rep.max_rel_err < 1e-4);
  }
}

TEST_CASE("model config json round-trip and validation") {
  auto cfg = tiny_model_config(Architecture::kBiConcat, CombinationMode::kConcatSub);
  auto s = cfg.to_json_string();
  auto back = ModelConfig::from_json_string(s);
  CHECK(back.architecture == cfg.architecture);
  CHECK(back.combination == cfg.combination);
  CHECK(back.encoder.d_model == cfg.encoder.d_model);
  CHECK(back.config_hash() == cfg.config_hash());

  CHECK_THROWS_AS(ModelConfig::from_json_string(R"({"architecture":"bi_cosine",)"
                                                R"("combination":"concat"})"),
                  ConfigError);
  auto bad = cfg;
  bad.combination = CombinationMode::kCosine;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  // pooling defaults: mean for bi_cosine, cls otherwise
  auto cosine_cfg = ModelConfig::from_json_string(R"({"architecture":"bi_cosine"})");
  CHECK(cosine_cfg.encoder.pooling == encoder::Pooling::kMean);
  auto concat_cfg = ModelConfig::from_json_string(R"({"architecture":"bi_concat"})");
  CHECK(concat_cfg.encoder.pooling == encoder::Pooling::kCls);
}
