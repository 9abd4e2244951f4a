// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "topicmatch/rng.hpp"

namespace topicmatch::metrics {

using nlohmann::json;

void ScoreMatrix::validate() const {
  if (scores.rows() != text_ids.size() || scores.cols() != topic_ids.size()) {
    throw DimensionError("score matrix axes do not match id lists");
  }
  for (double s : scores.v) {
    if (!std::isfinite(s)) throw NumericError("score matrix contains non-finite values");
  }
}

namespace {

// Deterministically shuffled index order, then stable sort by descending
// score: the canonical ranking used by AP here and by the test oracles.
std::vector<std::size_t> ranked_order(const std::vector<double>& scores) {
  std::vector<std::size_t> idx(scores.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(kTieShuffleSeed);
  rng.shuffle(idx);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return idx;
}

}  // namespace

std::optional<double> average_precision(const std::vector<double>& scores,
                                        const std::vector<std::uint8_t>& labels) {
  if (scores.size() != labels.size()) {
    throw DimensionError("average_precision: scores/labels length mismatch");
  }
  std::size_t total_pos = 0;
  for (auto l : labels) total_pos += l ? 1 : 0;
  if (total_pos == 0) return std::nullopt;

  const auto order = ranked_order(scores);
  double ap = 0.0;
  std::size_t hits = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (labels[order[rank]]) {
      ++hits;
      const double precision = static_cast<double>(hits) / static_cast<double>(rank + 1);
      ap += precision / static_cast<double>(total_pos);
    }
  }
  return ap;
}

double fbeta_score(std::size_t tp, std::size_t fp, std::size_t fn, double beta) {
  if (tp + fp == 0 || tp + fn == 0 || tp == 0) return 0.0;
  const double p = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double r = static_cast<double>(tp) / static_cast<double>(tp + fn);
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (b2 * p + r);
}

ThresholdChoice select_threshold(const std::vector<double>& scores,
                                 const std::vector<std::uint8_t>& labels, double beta) {
  if (beta <= 0.0) throw ConfigError("beta must be positive");
  if (scores.empty() || scores.size() != labels.size()) {
    throw DimensionError("select_threshold: bad inputs");
  }

  std::vector<double> distinct = scores;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  // Below the minimum everything is positive; above the maximum nothing is.
  std::vector<double> candidates;
  candidates.push_back(distinct.front() - 1.0);
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    candidates.push_back(0.5 * (distinct[i] + distinct[i + 1]));
  }
  candidates.push_back(distinct.back() + 1.0);

  std::size_t total_pos = 0;
  for (auto l : labels) total_pos += l ? 1 : 0;

  ThresholdChoice best;
  bool first = true;
  for (double th : candidates) {
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= th) {
        if (labels[i]) ++tp;
        else ++fp;
      }
    }
    const double f = fbeta_score(tp, fp, total_pos - tp, beta);
    // strict > keeps the lowest threshold on ties (candidates ascend)
    if (first || f > best.fbeta) {
      best = ThresholdChoice{th, f};
      first = false;
    }
  }
  return best;
}

EvalReport aggregate(const ScoreMatrix& sm, const data::PartialLabelMatrix& labels,
                     double fbeta_beta) {
  sm.validate();
  if (labels.empty()) throw ConfigError("aggregate: no labeled pairs");

  const std::size_t n_topics = sm.topic_ids.size();
  std::vector<std::vector<double>> topic_scores(n_topics);
  std::vector<std::vector<std::uint8_t>> topic_labels(n_topics);
  std::vector<double> flat_scores;
  std::vector<std::uint8_t> flat_labels;

  for (const auto& e : labels.entries()) {
    if (e.text_idx >= sm.text_ids.size() || e.topic_idx >= n_topics) {
      throw DimensionError("label entry outside the score matrix");
    }
    const double s = sm.scores.at(e.text_idx, e.topic_idx);
    topic_scores[e.topic_idx].push_back(s);
    topic_labels[e.topic_idx].push_back(e.label);
    flat_scores.push_back(s);
    flat_labels.push_back(e.label);
  }

  EvalReport rep;
  rep.fbeta_beta = fbeta_beta;
  rep.labeled_pairs = flat_scores.size();

  double macro_sum = 0.0, weighted_sum = 0.0;
  std::size_t macro_n = 0, np_total = 0;
  for (std::size_t j = 0; j < n_topics; ++j) {
    TopicEval te;
    te.topic_id = sm.topic_ids[j];
    te.labeled = topic_scores[j].size();
    for (auto l : topic_labels[j]) te.positives += l ? 1 : 0;
    if (te.labeled > 0) {
      if (auto ap = average_precision(topic_scores[j], topic_labels[j])) {
        te.defined = true;
        te.ap = *ap;
        const auto choice = select_threshold(topic_scores[j], topic_labels[j], fbeta_beta);
        te.threshold = choice.threshold;
        te.fbeta = choice.fbeta;
      }
    }
    if (te.defined) {
      macro_sum += te.ap;
      ++macro_n;
      weighted_sum += te.ap * static_cast<double>(te.positives);
      np_total += te.positives;
    } else {
      ++rep.excluded_topics;
    }
    rep.per_topic.push_back(std::move(te));
  }

  if (macro_n == 0) throw ConfigError("aggregate: no topic has positive labels");
  rep.macro_map = macro_sum / static_cast<double>(macro_n);
  rep.weighted_map = weighted_sum / static_cast<double>(np_total);
  rep.micro_ap = average_precision(flat_scores, flat_labels).value();
  return rep;
}

std::string EvalReport::to_json_string() const {
  json j;
  j["macro_map"] = macro_map;
  j["weighted_map"] = weighted_map;
  j["micro_ap"] = micro_ap;
  j["labeled_pairs"] = labeled_pairs;
  j["excluded_topics"] = excluded_topics;
  j["fbeta_beta"] = fbeta_beta;
  json jt = json::array();
  for (const auto& t : per_topic) {
    jt.push_back(json{{"topic_id", t.topic_id},
                      {"defined", t.defined},
                      {"ap", t.ap},
                      {"positives", t.positives},
                      {"labeled", t.labeled},
                      {"threshold", t.threshold},
                      {"fbeta", t.fbeta}});
  }
  j["per_topic"] = std::move(jt);
  return j.dump(2);
}

void EvalReport::save_json(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << to_json_string() << "\n";
}

void EvalReport::save_per_topic_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "topic_id,AP,NP,threshold,fbeta\n";
  for (const auto& t : per_topic) {
    out << t.topic_id << ",";
    if (t.defined) out << t.ap;
    out << "," << t.positives << "," << t.threshold << "," << t.fbeta << "\n";
  }
}

}  // namespace topicmatch::metrics
