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

// Classical comparators under Hamming distance.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "qpclass/bit_pattern.hpp"

namespace qpclass {

enum class Weighting {
  Uniform,
  InverseDistance,  // 1 / (1 + d_H)
  CosineSquared,    // cos^2(pi d_H / 2n), the quantum amplitude weighting
};

std::string_view to_string(Weighting w);

/// Ties: the k-th neighbour boundary is cut by pattern index, label votes
/// by lowest label.
struct BaselineConfig {
  std::size_t k = 1;
  Weighting weighting = Weighting::Uniform;
};

/// Indices of the k nearest members, ordered by (distance, index).
/// Throws ParameterError if k == 0 or k > N.
std::vector<std::size_t> nearest_members(const TrainingSet& training,
                                         const BinaryPattern& input,
                                         std::size_t k);

/// Majority label among the k nearest members (weighting ignored).
ClassLabel knn_classify(const TrainingSet& training, const BinaryPattern& input,
                        const BaselineConfig& config);

/// Label with the largest summed weight over the k nearest members.
ClassLabel weighted_knn_classify(const TrainingSet& training,
                                 const BinaryPattern& input,
                                 const BaselineConfig& config);

/// Nearest class mean in Euclidean distance. Classes without members are
/// skipped.
ClassLabel centroid_classify(const TrainingSet& training,
                             const BinaryPattern& input);

}  // namespace qpclass
