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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "qpclass/errors.hpp"

namespace qpclass {

namespace {

ClassLabel best_label(const std::vector<double>& score) {
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < score.size(); ++c) {
    if (score[c] > score[best]) best = c;
  }
  return ClassLabel{best};
}

double neighbour_weight(Weighting w, std::size_t distance, std::size_t n) {
  switch (w) {
    case Weighting::Uniform:
      return 1.0;
    case Weighting::InverseDistance:
      return 1.0 / (1.0 + static_cast<double>(distance));
    case Weighting::CosineSquared: {
      const double c = std::cos(std::numbers::pi * static_cast<double>(distance) /
                                (2.0 * static_cast<double>(n)));
      return c * c;
    }
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(Weighting w) {
  switch (w) {
    case Weighting::Uniform: return "uniform";
    case Weighting::InverseDistance: return "inverse";
    case Weighting::CosineSquared: return "cos2";
  }
  return "?";
}

std::vector<std::size_t> nearest_members(const TrainingSet& training,
                                         const BinaryPattern& input,
                                         std::size_t k) {
  training.check_input(input);
  if (k == 0 || k > training.size()) {
    throw ParameterError("k = " + std::to_string(k) + " must lie in [1, N = " +
                         std::to_string(training.size()) + "]");
  }
  std::vector<std::pair<std::size_t, std::size_t>> ranked;  // (distance, index)
  ranked.reserve(training.size());
  for (std::size_t i = 0; i < training.size(); ++i) {
    ranked.emplace_back(hamming_distance(input, training[i].pattern), i);
  }
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                    ranked.end());
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = ranked[i].second;
  return out;
}

ClassLabel knn_classify(const TrainingSet& training, const BinaryPattern& input,
                        const BaselineConfig& config) {
  std::vector<double> votes(training.num_classes(), 0.0);
  for (auto i : nearest_members(training, input, config.k)) {
    votes[training[i].label.value] += 1.0;
  }
  return best_label(votes);
}

ClassLabel weighted_knn_classify(const TrainingSet& training,
                                 const BinaryPattern& input,
                                 const BaselineConfig& config) {
  const std::size_t n = training.feature_count();
  std::vector<double> score(training.num_classes(), 0.0);
  for (auto i : nearest_members(training, input, config.k)) {
    const auto dist = hamming_distance(input, training[i].pattern);
    score[training[i].label.value] += neighbour_weight(config.weighting, dist, n);
  }
  return best_label(score);
}

ClassLabel centroid_classify(const TrainingSet& training,
                             const BinaryPattern& input) {
  training.check_input(input);
  const std::size_t n = training.feature_count();
  const std::uint32_t d = training.num_classes();

  std::vector<std::vector<double>> ones(d, std::vector<double>(n, 0.0));
  const auto counts = training.class_counts();
  for (const auto& m : training) {
    auto& row = ones[m.label.value];
    for (std::size_t k = 0; k < n; ++k) {
      if (m.pattern.bit(k)) row[k] += 1.0;
    }
  }

  std::uint32_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::uint32_t c = 0; c < d; ++c) {
    if (counts[c] == 0) continue;
    const double inv = 1.0 / static_cast<double>(counts[c]);
    double dist2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double diff = (input.bit(k) ? 1.0 : 0.0) - ones[c][k] * inv;
      dist2 += diff * diff;
    }
    if (dist2 < best_dist) {
      best_dist = dist2;
      best = c;
    }
  }
  return ClassLabel{best};
}

}  // namespace qpclass
