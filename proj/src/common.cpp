// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/common.hpp"

namespace topicmatch {

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace topicmatch
