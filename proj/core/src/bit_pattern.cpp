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

#include "qpclass/bit_pattern.hpp"

#include <bit>

#include "qpclass/errors.hpp"

namespace qpclass {

namespace {

std::size_t words_for(std::size_t n) {
  return (n + BinaryPattern::kWordBits - 1) / BinaryPattern::kWordBits;
}

}  // namespace

BinaryPattern::BinaryPattern(std::size_t n) : size_(n), words_(words_for(n)) {
  if (n == 0) throw ConstructionError("BinaryPattern: length must be >= 1");
}

BinaryPattern::BinaryPattern(std::span<const std::uint8_t> bits)
    : BinaryPattern(bits.size()) {
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] > 1) {
      throw ConstructionError("BinaryPattern: element " + std::to_string(k) +
                              " is " + std::to_string(bits[k]) +
                              ", expected 0 or 1");
    }
    if (bits[k]) words_[k / kWordBits] |= Word{1} << (k % kWordBits);
  }
}

BinaryPattern BinaryPattern::from_string(std::string_view bits) {
  BinaryPattern p(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != '0' && bits[k] != '1') {
      throw ConstructionError("BinaryPattern: invalid character '" +
                              std::string(1, bits[k]) + "' at position " +
                              std::to_string(k));
    }
    if (bits[k] == '1') p.set(k, true);
  }
  return p;
}

bool BinaryPattern::bit(std::size_t k) const {
  if (k >= size_) throw IndexError("BinaryPattern: bit index out of range");
  return (words_[k / kWordBits] >> (k % kWordBits)) & 1u;
}

void BinaryPattern::set(std::size_t k, bool value) {
  if (k >= size_) throw IndexError("BinaryPattern: bit index out of range");
  const Word mask = Word{1} << (k % kWordBits);
  if (value) {
    words_[k / kWordBits] |= mask;
  } else {
    words_[k / kWordBits] &= ~mask;
  }
}

void BinaryPattern::flip(std::size_t k) {
  if (k >= size_) throw IndexError("BinaryPattern: bit index out of range");
  words_[k / kWordBits] ^= Word{1} << (k % kWordBits);
}

std::size_t BinaryPattern::count_ones() const noexcept {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::string BinaryPattern::to_string() const {
  std::string s(size_, '0');
  for (std::size_t k = 0; k < size_; ++k) {
    if ((words_[k / kWordBits] >> (k % kWordBits)) & 1u) s[k] = '1';
  }
  return s;
}

std::size_t hamming_distance(const BinaryPattern& a, const BinaryPattern& b) {
  if (a.size() != b.size()) {
    throw DimensionError("hamming_distance: lengths " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return total;
}

std::size_t match_count(const BinaryPattern& a, const BinaryPattern& b) {
  return a.size() - hamming_distance(a, b);
}

TrainingSet::TrainingSet(std::vector<LabeledPattern> members,
                         std::uint32_t num_classes)
    : members_(std::move(members)), feature_count_(0),
      num_classes_(num_classes) {
  if (members_.empty()) {
    throw ConstructionError("TrainingSet: at least one member is required");
  }
  if (num_classes_ == 0) {
    throw ConstructionError("TrainingSet: class count must be >= 1");
  }
  feature_count_ = members_.front().pattern.size();
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& m = members_[i];
    if (m.pattern.size() != feature_count_) {
      throw DimensionError("TrainingSet: member " + std::to_string(i) +
                           " has length " + std::to_string(m.pattern.size()) +
                           ", expected " + std::to_string(feature_count_));
    }
    if (m.label.value >= num_classes_) {
      throw ConstructionError("TrainingSet: member " + std::to_string(i) +
                              " has label " + std::to_string(m.label.value) +
                              " >= class count " +
                              std::to_string(num_classes_));
    }
  }
}

const LabeledPattern& TrainingSet::at(std::size_t i) const {
  if (i >= members_.size()) {
    throw IndexError("TrainingSet: member index " + std::to_string(i) +
                     " out of range");
  }
  return members_[i];
}

std::vector<std::size_t> TrainingSet::class_counts() const {
  std::vector<std::size_t> counts(num_classes_, 0);
  for (const auto& m : members_) ++counts[m.label.value];
  return counts;
}

void TrainingSet::check_input(const BinaryPattern& input) const {
  if (input.size() != feature_count_) {
    throw DimensionError("input has length " + std::to_string(input.size()) +
                         ", training set has " +
                         std::to_string(feature_count_) + " features");
  }
}

}  // namespace qpclass
