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

#include <gtest/gtest.h>

#include "qpclass/errors.hpp"
#include "support/generators.hpp"

namespace qpclass {
namespace {

using testing::random_pattern;
using testing::Rng;

TEST(BinaryPattern, StringRoundTrip) {
  const auto p = BinaryPattern::from_string("0110100");
  EXPECT_EQ(p.size(), 7u);
  EXPECT_FALSE(p.bit(0));
  EXPECT_TRUE(p.bit(1));
  EXPECT_EQ(p.to_string(), "0110100");
  EXPECT_EQ(p.count_ones(), 3u);
}

TEST(BinaryPattern, RejectsBadConstruction) {
  EXPECT_THROW(BinaryPattern(0), ConstructionError);
  EXPECT_THROW(BinaryPattern::from_string("01x"), ConstructionError);
  const std::uint8_t bad[] = {0, 1, 2};
  EXPECT_THROW(BinaryPattern(std::span<const std::uint8_t>(bad)),
               ConstructionError);
}

TEST(BinaryPattern, BoundsChecked) {
  BinaryPattern p(3);
  EXPECT_THROW(p.bit(3), IndexError);
  EXPECT_THROW(p.set(3, true), IndexError);
  EXPECT_THROW(p.flip(5), IndexError);
}

TEST(BinaryPattern, WordBoundaries) {
  BinaryPattern p(130);
  p.set(63, true);
  p.set(64, true);
  p.set(129, true);
  EXPECT_EQ(p.words().size(), 3u);
  EXPECT_EQ(p.count_ones(), 3u);
  p.flip(64);
  EXPECT_FALSE(p.bit(64));
  EXPECT_EQ(p.count_ones(), 2u);
}

TEST(Hamming, KnownValues) {
  EXPECT_EQ(hamming_distance(BinaryPattern::from_string("0000"),
                             BinaryPattern::from_string("1111")), 4u);
  EXPECT_EQ(hamming_distance(BinaryPattern::from_string("0101"),
                             BinaryPattern::from_string("0110")), 2u);
  EXPECT_EQ(match_count(BinaryPattern::from_string("0101"),
                        BinaryPattern::from_string("0110")), 2u);
}

TEST(Hamming, LengthMismatch) {
  EXPECT_THROW(hamming_distance(BinaryPattern(3), BinaryPattern(4)),
               DimensionError);
}

// Metric axioms, exhaustive over all triples for n <= 6.
TEST(Hamming, MetricAxiomsExhaustive) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::size_t count = std::size_t{1} << n;
    std::vector<BinaryPattern> all;
    for (std::size_t v = 0; v < count; ++v) {
      BinaryPattern p(n);
      for (std::size_t k = 0; k < n; ++k) p.set(k, (v >> k) & 1u);
      all.push_back(p);
    }
    for (const auto& a : all) {
      EXPECT_EQ(hamming_distance(a, a), 0u);
      for (const auto& b : all) {
        const auto ab = hamming_distance(a, b);
        ASSERT_EQ(ab, hamming_distance(b, a));
        ASSERT_EQ(ab == 0, a == b);
        ASSERT_EQ(ab + match_count(a, b), n);
        for (const auto& c : all) {
          ASSERT_LE(hamming_distance(a, c), ab + hamming_distance(b, c));
        }
      }
    }
  }
}

TEST(Hamming, FlipChangesDistanceByOne) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = testing::uniform_int(rng, 1, 300);
    const auto a = random_pattern(rng, n);
    auto b = random_pattern(rng, n);
    const auto before = hamming_distance(a, b);
    const auto k = testing::uniform_int(rng, 0, n - 1);
    b.flip(k);
    const auto after = hamming_distance(a, b);
    EXPECT_EQ(after, a.bit(k) == b.bit(k) ? before - 1 : before + 1);
  }
}

TEST(TrainingSet, Validation) {
  std::vector<LabeledPattern> none;
  EXPECT_THROW(TrainingSet(none, 2), ConstructionError);
  EXPECT_THROW(testing::make_training({{"01", 0}, {"011", 1}}, 2),
               DimensionError);
  EXPECT_THROW(testing::make_training({{"01", 2}}, 2), ConstructionError);
  const auto t = testing::make_training({{"01", 0}, {"11", 1}, {"10", 1}}, 3);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.feature_count(), 2u);
  EXPECT_EQ(t.class_counts(), (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_THROW(t.at(3), IndexError);
  EXPECT_THROW(t.check_input(BinaryPattern(3)), DimensionError);
}

}  // namespace
}  // namespace qpclass
