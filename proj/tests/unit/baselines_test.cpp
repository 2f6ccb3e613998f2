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

#include "qpclass/baselines.hpp"

#include <gtest/gtest.h>

#include "qpclass/classifier.hpp"
#include "qpclass/errors.hpp"
#include "support/generators.hpp"

namespace qpclass {
namespace {

using testing::make_training;
using testing::random_pattern;
using testing::random_training;
using testing::Rng;

TEST(NearestMembers, OrderedByDistanceThenIndex) {
  const auto t = make_training(
      {{"111", 0}, {"001", 1}, {"000", 0}, {"100", 1}, {"011", 1}}, 2);
  const auto x = BinaryPattern::from_string("000");
  EXPECT_EQ(nearest_members(t, x, 3), (std::vector<std::size_t>{2, 1, 3}));
  EXPECT_EQ(nearest_members(t, x, 5),
            (std::vector<std::size_t>{2, 1, 3, 4, 0}));
  EXPECT_THROW(nearest_members(t, x, 0), ParameterError);
  EXPECT_THROW(nearest_members(t, x, 6), ParameterError);
}

TEST(Knn, MajorityAndTies) {
  const auto t = make_training(
      {{"0000", 1}, {"0001", 0}, {"0010", 0}, {"1111", 1}}, 2);
  const auto x = BinaryPattern::from_string("0000");
  EXPECT_EQ(knn_classify(t, x, {1, Weighting::Uniform}), ClassLabel{1});
  EXPECT_EQ(knn_classify(t, x, {3, Weighting::Uniform}), ClassLabel{0});
  // Two votes each: lowest label wins.
  EXPECT_EQ(knn_classify(t, x, {4, Weighting::Uniform}), ClassLabel{0});
}

TEST(WeightedKnn, WeightingsDiffer) {
  // One exact twin of class 1 against three distance-4 members of class 0.
  const auto t = make_training({{"00000000", 1},
                                {"11110000", 0},
                                {"00111100", 0},
                                {"00001111", 0}},
                               2);
  const auto x = BinaryPattern::from_string("00000000");
  EXPECT_EQ(weighted_knn_classify(t, x, {4, Weighting::Uniform}), ClassLabel{0});
  // 1 against 3 / 5.
  EXPECT_EQ(weighted_knn_classify(t, x, {4, Weighting::InverseDistance}),
            ClassLabel{1});
  // cos^2(pi * 4 / 16) = 0.5 each: 1 against 1.5.
  EXPECT_EQ(weighted_knn_classify(t, x, {4, Weighting::CosineSquared}),
            ClassLabel{0});
  EXPECT_EQ(weighted_knn_classify(t, x, {2, Weighting::CosineSquared}),
            ClassLabel{1});
}

TEST(Centroid, EuclideanToMean) {
  // Class 0 mean (0.5, 0.5): squared distance 0.5 from 00. Class 1 mean
  // (1, 0): squared distance 1.
  const auto t = make_training({{"00", 0}, {"11", 0}, {"10", 1}}, 2);
  EXPECT_EQ(centroid_classify(t, BinaryPattern::from_string("00")),
            ClassLabel{0});
  EXPECT_EQ(centroid_classify(t, BinaryPattern::from_string("10")),
            ClassLabel{1});
}

TEST(Centroid, SkipsEmptyClassesAndTiesLow) {
  const auto t = make_training({{"01", 2}, {"10", 1}}, 3);
  EXPECT_EQ(centroid_classify(t, BinaryPattern::from_string("00")),
            ClassLabel{1});
}

// Property: a twin in the training set is always recovered by 1-NN, and
// the label is one of the k nearest members' labels.
TEST(KnnProperty, TwinRecoveredAndLabelFromNeighbours) {
  Rng rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = testing::uniform_int(rng, 1, 64);
    const auto N = testing::uniform_int(rng, 1, 30);
    const auto t = random_training(rng, N, n, 5);
    const auto p = testing::uniform_int(rng, 0, N - 1);
    const auto& twin = t[p].pattern;
    const auto first = nearest_members(t, twin, 1).front();
    EXPECT_EQ(hamming_distance(t[first].pattern, twin), 0u);
    EXPECT_LE(first, p);

    const auto x = random_pattern(rng, n);
    const auto k = testing::uniform_int(rng, 1, N);
    const auto near = nearest_members(t, x, k);
    const auto label = knn_classify(t, x, {k, Weighting::Uniform});
    bool found = false;
    for (auto i : near) found |= t[i].label == label;
    EXPECT_TRUE(found);
  }
}

}  // namespace
}  // namespace qpclass
