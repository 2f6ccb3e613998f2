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

// Quantum pattern classification on top of the sparse simulator.
//
// Conditioned on the ancilla measuring 0, class c is observed with
//
//   P(c) = 1 / (N P(0_a)) * sum_{l in c} cos^2(gamma d_H(x, v^l)),
//   P(0_a) = 1/N * sum_p cos^2(gamma d_H(x, v^p)).
//
// Three ways to turn that into a label:
//   analytic       evaluate P(c) in closed form (shots == 0)
//   class measure  sample (ancilla, class) outcomes from psi4, T shots
//   neighbours     sample k pattern-register outcomes, majority vote

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "qpclass/bit_pattern.hpp"
#include "qpclass/sparse_state.hpp"

namespace qpclass {

struct ClassDistribution {
  std::vector<double> probabilities;  // indexed by ClassLabel::value
  double p_ancilla_zero = 0.0;        // P(0_a) the distribution is conditioned on

  /// Highest-probability label; ties go to the lowest label.
  ClassLabel argmax() const;
  /// Difference between the two largest probabilities (the top one alone
  /// when d == 1).
  double margin() const;
};

enum class RetrievalVersion { ClassMeasurement, NeighbourSampling };

std::string_view to_string(RetrievalVersion v);

struct QpcConfig {
  double epsilon = 1.0;
  /// Measurement shots T. 0 selects the analytic closed form.
  std::uint64_t shots = 1024;
  RetrievalVersion version = RetrievalVersion::ClassMeasurement;
  std::uint32_t neighbour_samples = 10;
  std::uint64_t rng_seed = 0;

  bool analytic() const noexcept { return shots == 0; }
  /// Throws ParameterError on epsilon <= 0 or neighbour_samples == 0.
  void validate() const;
};

struct ClassificationResult {
  ClassLabel predicted;
  ClassDistribution distribution;
  double p_ancilla_zero = 0.0;
  std::uint64_t shots_used = 0;
  std::uint64_t postselection_failures = 0;
  double margin = 0.0;
};

/// Closed-form P(c). Throws PostselectionImpossible if P(0_a) < 1e-15.
ClassDistribution analytic_distribution(const TrainingSet& training,
                                        const BinaryPattern& input,
                                        double epsilon);

/// Born-rule class probabilities of a psi4 state, conditioned on ancilla 0.
ClassDistribution born_class_distribution(const SparseQState& psi4,
                                          std::uint32_t num_classes);

/// Class-qudit measurement: one sparse pipeline run, T sampled
/// (ancilla, class) outcomes. Ancilla-1 shots are counted as postselection
/// failures; the distribution is the empirical class frequency among the
/// rest.
ClassificationResult simulate_distribution(const TrainingSet& training,
                                           const BinaryPattern& input,
                                           const QpcConfig& config);

/// Weighted-neighbour retrieval: draws pattern-register outcomes until k of
/// them land on ancilla 0, then takes the majority class of those k.
ClassificationResult sample_neighbours(const TrainingSet& training,
                                       const BinaryPattern& input,
                                       const QpcConfig& config);

/// Dispatch on config: analytic when shots == 0, else by retrieval version.
ClassificationResult classify(const TrainingSet& training,
                              const BinaryPattern& input,
                              const QpcConfig& config);

/// Seeded generator for measurement sampling. Uniforms are built from the
/// top 53 bits of mt19937_64 so sequences are identical across standard
/// libraries.
class ShotSampler {
 public:
  explicit ShotSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Index i with probability weights[i] / sum(weights), by inverse CDF.
  /// `cdf` must be the running sum of the weights.
  std::size_t draw(std::span<const double> cdf);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qpclass
