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

// Experiment runner: evaluates QPC and the classical baselines over a test
// subset and collects per-example records.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpclass/baselines.hpp"
#include "qpclass/classifier.hpp"
#include "qpclass/mnist.hpp"

namespace qpclass {

enum class ClassifierKind { Qpc, Knn, WeightedKnn, Centroid };

/// One configured classifier. Textual form (also its report name):
///
///   qpc[:mode=analytic|class|neighbour,eps=<f>,shots=<T>,k=<int>,seed=<u64>]
///   knn[:k=<int>|all]
///   wknn[:k=<int>|all,weight=uniform|inverse|cos2]   (defaults k=all, cos2)
///   centroid
///
/// Keys left out take their values from the defaults passed to parse().
/// mode=analytic forces shots=0; k=all (stored as 0) means k = N.
struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::Qpc;
  QpcConfig qpc;
  BaselineConfig baseline;

  static ClassifierSpec parse(std::string_view text,
                              const QpcConfig& qpc_defaults = {});
  /// Canonical text; parse(to_string()) round-trips.
  std::string to_string() const;
};

struct ExampleRecord {
  std::size_t index = 0;
  ClassLabel true_label;
  std::optional<ClassLabel> predicted;  // empty on abstention
  bool correct = false;
  bool abstained = false;
  std::string abstain_reason;
  // Filled for QPC only.
  std::vector<double> distribution;
  std::optional<double> p_ancilla_zero;
  std::optional<double> margin;
  std::uint64_t shots_used = 0;
  std::uint64_t postselection_failures = 0;
};

struct ClassifierReport {
  ClassifierSpec spec;
  std::vector<ExampleRecord> records;
  std::size_t correct = 0;
  std::size_t abstentions = 0;
  double accuracy = 0.0;
  /// Mean P(0_a) over non-abstaining QPC examples.
  std::optional<double> mean_p_ancilla_zero;
  double seconds = 0.0;
};

/// Deterministic per-example seed from a base seed and an example index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// Runs one classifier over all tests with `workers` threads (0 = hardware
/// concurrency). Postselection failures become abstentions.
ClassifierReport evaluate_classifier(const ExperimentData& data,
                                     const ClassifierSpec& spec,
                                     unsigned workers = 0);

enum class OutputFormat { Json, Csv };

struct ExperimentSpec {
  std::string train_images;
  std::string train_labels;
  std::string test_images;
  std::string test_labels;
  std::size_t n_train = 400;
  std::size_t n_test = 100;
  SubsetSelection subset;
  std::uint8_t threshold = kDefaultThreshold;
  std::vector<ClassifierSpec> classifiers;
  std::string output_path;  // empty = stdout
  OutputFormat format = OutputFormat::Json;
  unsigned workers = 0;
  bool include_timings = false;

  /// Throws ParameterError when no classifier is configured.
  void validate() const;
};

struct EvaluationReport {
  ExperimentSpec spec;
  std::size_t training_size = 0;
  std::size_t test_size = 0;
  std::vector<ClassifierReport> classifiers;
  double seconds = 0.0;
};

/// Evaluates every classifier on already-loaded data.
EvaluationReport run_experiment(const ExperimentSpec& spec,
                                const ExperimentData& data);
/// Loads the IDX files named in the spec, carves the subsets, evaluates.
EvaluationReport run_experiment(const ExperimentSpec& spec);
ExperimentData load_experiment_data(const ExperimentSpec& spec);

struct DistributionTable {
  std::size_t example_index = 0;
  ClassLabel true_label;
  ClassDistribution analytic;
  /// Class-measurement sampling at config.shots; empty when shots == 0.
  std::optional<ClassificationResult> sampled;
  double margin = 0.0;  // top-2 margin of the analytic distribution
};

/// Analytic and sampled distributions for one test example. Throws
/// ParameterError if example_index is out of range.
DistributionTable distribution_command(const ExperimentData& data,
                                       const QpcConfig& config,
                                       std::size_t example_index);

struct TimingGrid {
  std::vector<std::size_t> patterns{1000};  // N
  std::vector<std::size_t> features{256};   // n
  std::vector<std::uint64_t> shots{8};      // T
  std::uint32_t num_classes = 10;
  unsigned repeats = 3;
  std::uint64_t seed = 1;
};

struct TimingRow {
  std::size_t patterns = 0;
  std::size_t features = 0;
  std::uint64_t shots = 0;
  double seconds = 0.0;  // best of `repeats`
};

/// Runs T independent shots (fresh psi0 through one measurement each) on a
/// random instance for every grid point, in row-major (N, n, T) order.
std::vector<TimingRow> timing_command(const TimingGrid& grid);

/// The simulated workload of timing_command: `shots` full pipeline runs,
/// one outcome each. Returns the number of ancilla-0 outcomes.
std::uint64_t run_shot_loop(const TrainingSet& training,
                            const BinaryPattern& input, double epsilon,
                            std::uint64_t shots, std::uint64_t seed);

}  // namespace qpclass
