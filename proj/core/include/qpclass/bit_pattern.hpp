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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpclass {

/// Fixed-length bit string, packed 64 bits per word (bit k lives in word
/// k / 64 at position k % 64). Bits past size() in the last word are zero.
class BinaryPattern {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  /// All-zero pattern of length n (n >= 1).
  explicit BinaryPattern(std::size_t n);
  /// From one value per feature; every value must be 0 or 1.
  explicit BinaryPattern(std::span<const std::uint8_t> bits);
  /// From a string of '0'/'1' characters, feature 0 first.
  static BinaryPattern from_string(std::string_view bits);

  std::size_t size() const noexcept { return size_; }
  bool bit(std::size_t k) const;
  void set(std::size_t k, bool value);
  void flip(std::size_t k);

  std::span<const Word> words() const noexcept { return words_; }
  std::size_t count_ones() const noexcept;
  std::string to_string() const;

  friend bool operator==(const BinaryPattern&, const BinaryPattern&) = default;
  friend auto operator<=>(const BinaryPattern& a, const BinaryPattern& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  std::size_t size_;
  std::vector<Word> words_;
};

/// Number of positions at which a and b differ. Throws DimensionError on
/// length mismatch.
std::size_t hamming_distance(const BinaryPattern& a, const BinaryPattern& b);

/// n - hamming_distance(a, b): the number of agreeing positions.
std::size_t match_count(const BinaryPattern& a, const BinaryPattern& b);

/// Zero-based class index. A 1-based display is a formatting
/// concern only.
struct ClassLabel {
  std::uint32_t value = 0;

  friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;
};

struct LabeledPattern {
  BinaryPattern pattern;
  ClassLabel label;
};

/// N >= 1 labeled patterns of common length n with labels below d.
/// Duplicates are allowed; each member keeps its own index.
class TrainingSet {
 public:
  TrainingSet(std::vector<LabeledPattern> members, std::uint32_t num_classes);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t feature_count() const noexcept { return feature_count_; }
  std::uint32_t num_classes() const noexcept { return num_classes_; }

  const LabeledPattern& operator[](std::size_t i) const {
    return members_[i];
  }
  const LabeledPattern& at(std::size_t i) const;
  std::span<const LabeledPattern> members() const noexcept {
    return members_;
  }

  /// Members per class, indexed by label.
  std::vector<std::size_t> class_counts() const;

  /// Throws DimensionError unless input.size() == feature_count().
  void check_input(const BinaryPattern& input) const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

 private:
  std::vector<LabeledPattern> members_;
  std::size_t feature_count_;
  std::uint32_t num_classes_;
};

}  // namespace qpclass
