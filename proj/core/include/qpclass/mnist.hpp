// Copyright 2026 The qpclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qpclass/bit_pattern.hpp"
#include "qpclass/idx.hpp"

namespace qpclass {

inline constexpr std::uint8_t kDefaultThreshold = 128;
inline constexpr std::uint32_t kDigitClasses = 10;

/// Bit k is 1 iff pixel k >= threshold.
BinaryPattern binarize(const GrayImage& image,
                       std::uint8_t threshold = kDefaultThreshold);

/// Which records make up a subset: the first n in file order, or a seeded
/// uniform sample without replacement.
struct SubsetSelection {
  bool first_n = true;
  std::uint64_t seed = 0;

  static SubsetSelection first() { return {}; }
  static SubsetSelection seeded(std::uint64_t seed) { return {false, seed}; }

  /// Accepts "first" or "seed:<u64>".
  static SubsetSelection parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const SubsetSelection&, const SubsetSelection&) = default;
};

struct TestExample {
  BinaryPattern pattern;
  ClassLabel label;
};

struct ExperimentData {
  TrainingSet training;
  std::vector<TestExample> tests;
};

/// Binarized training set (d = 10) and test examples. Throws ParameterError
/// when a requested size exceeds the dataset or is zero for training.
ExperimentData make_subsets(const IdxDataset& train, const IdxDataset& test,
                            std::size_t n_train, std::size_t n_test,
                            const SubsetSelection& selection,
                            std::uint8_t threshold = kDefaultThreshold);

}  // namespace qpclass
