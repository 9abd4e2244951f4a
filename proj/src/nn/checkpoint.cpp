// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/nn/checkpoint.hpp"

#include <fstream>

#include "json.hpp"

namespace topicmatch::nn {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("malformed checkpoint " + path + ": " + e.what());
  }
  return j;
}

template <typename T>
const char* dtype_name();
template <>
const char* dtype_name<float>() {
  return "f32";
}
template <>
const char* dtype_name<double>() {
  return "f64";
}

}  // namespace

template <typename T>
void save_checkpoint(const std::string& path, const ParamRegistry<T>& params,
                     const CheckpointHeader& header) {
  json j;
  j["format"] = "topicmatch-checkpoint-v1";
  j["dtype"] = dtype_name<T>();
  j["seed"] = header.seed;
  j["config_hash"] = header.config_hash;
  json jp = json::object();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& p = params.at(i);
    json entry;
    entry["shape"] = p.value.shape;
    entry["gain_or_bias"] = p.is_gain_or_bias;
    // Store as double: exact for f64, and a float widened to double is exact
    // too, so both dtypes round-trip bit-identically.
    json data = json::array();
    for (T x : p.value.v) data.push_back(static_cast<double>(x));
    entry["data"] = std::move(data);
    jp[p.name] = std::move(entry);
  }
  j["params"] = std::move(jp);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write checkpoint: " + path);
  out << j.dump();
  out << "\n";
  if (!out) throw IoError("short write on checkpoint: " + path);
}

template <typename T>
CheckpointHeader load_checkpoint(const std::string& path, ParamRegistry<T>& params) {
  const json j = read_json_file(path);
  if (j.value("format", "") != std::string("topicmatch-checkpoint-v1")) {
    throw IoError("unrecognized checkpoint format in " + path);
  }
  if (j.value("dtype", "") != std::string(dtype_name<T>())) {
    throw IoError("checkpoint dtype " + j.value("dtype", std::string("?")) +
                  " does not match requested " + dtype_name<T>());
  }
  CheckpointHeader header;
  header.dtype = j.value("dtype", "");
  header.seed = j.value("seed", std::uint64_t{0});
  header.config_hash = j.value("config_hash", "");
  const auto& jp = j.at("params");
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& p = params.at(i);
    auto it = jp.find(p.name);
    if (it == jp.end()) throw IoError("checkpoint missing parameter " + p.name);
    const auto shape = it->at("shape").template get<std::vector<std::size_t>>();
    if (shape != p.value.shape) {
      throw IoError("checkpoint shape mismatch for " + p.name);
    }
    const auto& data = it->at("data");
    if (data.size() != p.value.numel()) {
      throw IoError("checkpoint size mismatch for " + p.name);
    }
    for (std::size_t k = 0; k < p.value.numel(); ++k) {
      p.value.v[k] = static_cast<T>(data[k].template get<double>());
    }
  }
  return header;
}

CheckpointHeader read_checkpoint_header(const std::string& path) {
  const json j = read_json_file(path);
  CheckpointHeader header;
  header.dtype = j.value("dtype", "");
  header.seed = j.value("seed", std::uint64_t{0});
  header.config_hash = j.value("config_hash", "");
  return header;
}

template void save_checkpoint<float>(const std::string&, const ParamRegistry<float>&,
                                     const CheckpointHeader&);
template void save_checkpoint<double>(const std::string&, const ParamRegistry<double>&,
                                      const CheckpointHeader&);
template CheckpointHeader load_checkpoint<float>(const std::string&, ParamRegistry<float>&);
template CheckpointHeader load_checkpoint<double>(const std::string&, ParamRegistry<double>&);

}  // namespace topicmatch::nn
