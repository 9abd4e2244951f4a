// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>

#include "doctest.h"
#include "topicmatch/encoder/encoder.hpp"
#include "topicmatch/text/tokenizer.hpp"

using namespace topicmatch;
using namespace topicmatch::text;
using topicmatch::encoder::EncoderConfig;
using topicmatch::encoder::EncoderNet;
using topicmatch::encoder::Pooling;

namespace {

Vocabulary test_vocab() {
  return Vocabulary::build({"great view !", "the waterfall was peaceful",
                            "kids loved the pool", "great breakfast"});
}

EncoderConfig tiny_config() {
  EncoderConfig cfg;
  cfg.d_model = 8;
  cfg.num_layers = 1;
  cfg.num_heads = 2;
  cfg.ffn_hidden = 16;
  cfg.l_max = 12;
  cfg.dropout = 0.0;
  return cfg;
}

}  // namespace

TEST_CASE("tokenize: punctuation split, CLS, empty text, truncation") {
  auto vocab = test_vocab();
  auto seq = tokenize("Great view!", vocab, /*add_cls=*/true, 16);
  REQUIRE(seq.ids.size() == 4);
  CHECK(seq.ids[0] == Vocabulary::kCls);
  CHECK(seq.ids[1] == vocab.id_of("great"));
  CHECK(seq.ids[2] == vocab.id_of("view"));
  CHECK(seq.ids[3] == vocab.id_of("!"));
  CHECK(seq.ids[1] != Vocabulary::kUnk);
  CHECK(seq.mask == std::vector<std::uint8_t>{1, 1, 1, 1});

  auto empty = tokenize("", vocab, true, 16);
  CHECK(empty.ids == std::vector<int>{Vocabulary::kCls});

  std::string longtext;
  for (int i = 0; i < 10000; ++i) longtext += "word ";
  auto trunc = tokenize(longtext, vocab, true, 16);
  CHECK(trunc.ids.size() == 16);
  CHECK(trunc.mask == std::vector<std::uint8_t>(16, 1));

  auto unk = tokenize("zzzunknownzzz", vocab, false, 16);
  CHECK(unk.ids == std::vector<int>{Vocabulary::kUnk});
}

TEST_CASE("vocabulary: reserved ids, min frequency, tsv round-trip") {
  auto vocab = Vocabulary::build({"a a a b b c"}, /*min_frequency=*/2);
  CHECK(vocab.id_of("a") >= Vocabulary::kNumReserved);
  CHECK(vocab.id_of("b") > vocab.id_of("a"));
  CHECK(vocab.id_of("c") == Vocabulary::kUnk);  // below cutoff

  const auto path = std::filesystem::temp_directory_path() / "tm_vocab_test.tsv";
  vocab.save(path.string());
  auto loaded = Vocabulary::load(path.string());
  CHECK(loaded.size() == vocab.size());
  CHECK(loaded.id_of("a") == vocab.id_of("a"));
  CHECK(loaded.token_of(Vocabulary::kPad) == "[PAD]");
  std::filesystem::remove(path);
}

TEST_CASE("encode: shape contract and eval determinism") {
  auto vocab = test_vocab();
  EncoderConfig cfg = tiny_config();
  cfg.d_model = 64;
  cfg.num_heads = 4;
  nn::ParamRegistry<double> reg;
  EncoderNet<double> net(cfg, &reg, vocab.size(), 42);

  auto seq = tokenize("the waterfall was peaceful pool !", vocab, true, cfg.l_max);
  REQUIRE(seq.ids.size() == 7);

  nn::Tape<double> t1, t2;
  auto e1 = net.encode(t1, seq);
  auto e2 = net.encode(t2, seq);
  CHECK(t1.val(e1).rows() == 7);
  CHECK(t1.val(e1).cols() == 64);
  CHECK(t1.val(e1).v == t2.val(e2).v);

  text::TokenSequence toolong;
  toolong.ids.assign(cfg.l_max + 1, Vocabulary::kUnk);
  toolong.mask.assign(cfg.l_max + 1, 1);
  CHECK_THROWS_AS((void)net.encode(t1, toolong), DimensionError);
}

TEST_CASE("padding invariance: appended padding never changes real-token output") {
  auto vocab = test_vocab();
  auto cfg = tiny_config();
  nn::ParamRegistry<double> reg;
  EncoderNet<double> net(cfg, &reg, vocab.size(), 7);

  auto seq = tokenize("kids loved the pool", vocab, true, cfg.l_max);
  auto padded = seq;
  padded.pad_to(seq.size() + 4);

  nn::Tape<double> t1, t2;
  auto plain = net.encode(t1, seq);
  auto wide = net.encode(t2, padded);
  const auto& a = t1.val(plain);
  const auto& b = t2.val(wide);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = 0; j < cfg.d_model; ++j) {
      CHECK(a.at(i, j) == doctest::Approx(b.at(i, j)).epsilon(1e-6));
    }
  }

  // pooled vectors identical for every strategy
  for (auto strat : {Pooling::kCls, Pooling::kMean, Pooling::kMax}) {
    nn::Tape<double> tp1, tp2;
    auto p1 = net.pool(tp1, net.encode(tp1, seq), seq.mask, strat);
    auto p2 = net.pool(tp2, net.encode(tp2, padded), padded.mask, strat);
    for (std::size_t j = 0; j < cfg.d_model; ++j) {
      CHECK(tp1.val(p1).v[j] == doctest::Approx(tp2.val(p2).v[j]).epsilon(1e-6));
    }
  }
}

TEST_CASE("pool: mean, max, masked rows, all-masked error") {
  nn::Tape<double> t;
  auto rows = t.input(nn::Tensor<double>::from_rows({{1, 2}, {3, 4}}));
  auto mean = t.masked_mean_rows(rows, {1, 1});
  CHECK(t.val(mean).v == std::vector<double>{2, 3});
  auto mx = t.masked_max_rows(rows, {1, 1});
  CHECK(t.val(mx).v == std::vector<double>{3, 4});

  auto rows3 = t.input(nn::Tensor<double>::from_rows({{1, 2}, {3, 4}, {9, 9}}));
  auto mean3 = t.masked_mean_rows(rows3, {1, 1, 0});
  CHECK(t.val(mean3).v == std::vector<double>{2, 3});

  CHECK_THROWS_AS((void)t.masked_mean_rows(rows, {0, 0}), DimensionError);
}
