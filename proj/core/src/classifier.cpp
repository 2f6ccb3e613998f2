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

#include "qpclass/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpclass/errors.hpp"

namespace qpclass {

namespace {

// Sums in ascending order so the result does not depend on the order in
// which the terms were produced.
double canonical_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

std::vector<double> running_sum(std::span<const double> weights) {
  std::vector<double> cdf(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cdf[i] = acc;
  }
  return cdf;
}

ClassDistribution from_counts(std::span<const std::uint64_t> counts,
                              std::uint64_t total, double p0) {
  ClassDistribution dist;
  dist.p_ancilla_zero = p0;
  dist.probabilities.reserve(counts.size());
  for (auto c : counts) {
    dist.probabilities.push_back(static_cast<double>(c) /
                                 static_cast<double>(total));
  }
  return dist;
}

void require_postselectable(double p0) {
  if (p0 < kPostselectionFloor) {
    throw PostselectionImpossible("P(0_a) = " + std::to_string(p0) +
                                  "; every training pattern sits at a cosine "
                                  "zero");
  }
}

}  // namespace

ClassLabel ClassDistribution::argmax() const {
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < probabilities.size(); ++c) {
    if (probabilities[c] > probabilities[best]) best = c;
  }
  return ClassLabel{best};
}

double ClassDistribution::margin() const {
  double first = 0.0, second = 0.0;
  for (double p : probabilities) {
    if (p > first) {
      second = first;
      first = p;
    } else if (p > second) {
      second = p;
    }
  }
  return first - second;
}

std::string_view to_string(RetrievalVersion v) {
  return v == RetrievalVersion::ClassMeasurement ? "class" : "neighbour";
}

void QpcConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be positive, got " +
                         std::to_string(epsilon));
  }
  if (neighbour_samples == 0) {
    throw ParameterError("neighbour sample count k must be >= 1");
  }
}

std::size_t ShotSampler::draw(std::span<const double> cdf) {
  const double target = uniform() * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.end()) --it;
  return static_cast<std::size_t>(it - cdf.begin());
}

ClassDistribution analytic_distribution(const TrainingSet& training,
                                        const BinaryPattern& input,
                                        double epsilon) {
  training.check_input(input);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be positive, got " +
                         std::to_string(epsilon));
  }
  const std::size_t n = training.feature_count();
  const std::uint32_t d = training.num_classes();
  const double gamma = phase_slope(epsilon, n);

  // Per-class histogram of Hamming distances; the cos^2 weight only depends
  // on the distance.
  std::vector<std::vector<std::size_t>> hist(d, std::vector<std::size_t>(n + 1));
  for (const auto& m : training) {
    ++hist[m.label.value][hamming_distance(input, m.pattern)];
  }
  std::vector<double> weight(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double c = std::cos(gamma * static_cast<double>(k));
    weight[k] = c * c;
  }

  std::vector<double> score(d, 0.0);
  double total = 0.0;
  for (std::uint32_t c = 0; c < d; ++c) {
    for (std::size_t k = 0; k <= n; ++k) {
      score[c] += static_cast<double>(hist[c][k]) * weight[k];
    }
    total += score[c];
  }
  const double p0 = total / static_cast<double>(training.size());
  require_postselectable(p0);

  ClassDistribution dist;
  dist.p_ancilla_zero = p0;
  dist.probabilities.resize(d);
  for (std::uint32_t c = 0; c < d; ++c) dist.probabilities[c] = score[c] / total;
  return dist;
}

ClassDistribution born_class_distribution(const SparseQState& psi4,
                                          std::uint32_t num_classes) {
  std::vector<double> score(num_classes, 0.0);
  double p0 = 0.0;
  for (const auto& t : psi4.terms()) {
    if (t.ancilla != 0) continue;
    if (t.label.value >= num_classes) {
      throw IndexError("born_class_distribution: label out of range");
    }
    const double w = std::norm(t.amplitude);
    score[t.label.value] += w;
    p0 += w;
  }
  require_postselectable(p0);
  ClassDistribution dist;
  dist.p_ancilla_zero = p0;
  dist.probabilities.resize(num_classes);
  for (std::uint32_t c = 0; c < num_classes; ++c) {
    dist.probabilities[c] = score[c] / p0;
  }
  return dist;
}

ClassificationResult simulate_distribution(const TrainingSet& training,
                                           const BinaryPattern& input,
                                           const QpcConfig& config) {
  config.validate();
  if (config.shots == 0) {
    throw ParameterError("simulate_distribution: shots must be >= 1");
  }
  const auto psi4 = run_to_psi4(training, input, config.epsilon);
  const double p0 = psi4.ancilla_zero_probability();
  require_postselectable(p0);

  // Outcome (ancilla a, class c) at slot a * d + c.
  const std::uint32_t d = training.num_classes();
  std::vector<std::vector<double>> parts(2 * d);
  for (const auto& t : psi4.terms()) {
    parts[t.ancilla * d + t.label.value].push_back(std::norm(t.amplitude));
  }
  std::vector<double> outcome(2 * d);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    outcome[i] = canonical_sum(parts[i]);
  }
  const auto cdf = running_sum(outcome);

  ShotSampler sampler(config.rng_seed);
  std::vector<std::uint64_t> counts(d, 0);
  std::uint64_t failures = 0;
  for (std::uint64_t shot = 0; shot < config.shots; ++shot) {
    const std::size_t o = sampler.draw(cdf);
    if (o >= d) {
      ++failures;
    } else {
      ++counts[o];
    }
  }
  if (failures == config.shots) {
    throw PostselectionExhausted("all " + std::to_string(config.shots) +
                                 " shots measured the ancilla in |1>");
  }

  ClassificationResult result;
  result.distribution = from_counts(counts, config.shots - failures, p0);
  result.predicted = result.distribution.argmax();
  result.margin = result.distribution.margin();
  result.p_ancilla_zero = p0;
  result.shots_used = config.shots;
  result.postselection_failures = failures;
  return result;
}

ClassificationResult sample_neighbours(const TrainingSet& training,
                                       const BinaryPattern& input,
                                       const QpcConfig& config) {
  config.validate();
  const auto psi4 = run_to_psi4(training, input, config.epsilon);
  const double p0 = psi4.ancilla_zero_probability();
  require_postselectable(p0);

  const auto terms = psi4.terms();
  std::vector<double> weight(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    weight[i] = std::norm(terms[i].amplitude);
  }
  const auto cdf = running_sum(weight);

  const std::uint64_t k = config.neighbour_samples;
  const std::uint64_t max_attempts = std::max<std::uint64_t>(1'000'000, 1000 * k);
  ShotSampler sampler(config.rng_seed);
  std::vector<std::uint64_t> votes(training.num_classes(), 0);
  std::uint64_t drawn = 0, attempts = 0;
  while (drawn < k) {
    if (attempts == max_attempts) {
      throw PostselectionExhausted(
          "sample_neighbours: " + std::to_string(attempts) +
          " attempts yielded only " + std::to_string(drawn) + " of " +
          std::to_string(k) + " ancilla-0 outcomes");
    }
    ++attempts;
    const auto& t = terms[sampler.draw(cdf)];
    if (t.ancilla != 0) continue;
    ++votes[t.label.value];
    ++drawn;
  }

  ClassificationResult result;
  result.distribution = from_counts(votes, k, p0);
  result.predicted = result.distribution.argmax();
  result.margin = result.distribution.margin();
  result.p_ancilla_zero = p0;
  result.shots_used = attempts;
  result.postselection_failures = attempts - k;
  return result;
}

ClassificationResult classify(const TrainingSet& training,
                              const BinaryPattern& input,
                              const QpcConfig& config) {
  config.validate();
  if (config.analytic()) {
    ClassificationResult result;
    result.distribution = analytic_distribution(training, input, config.epsilon);
    result.predicted = result.distribution.argmax();
    result.margin = result.distribution.margin();
    result.p_ancilla_zero = result.distribution.p_ancilla_zero;
    return result;
  }
  if (config.version == RetrievalVersion::NeighbourSampling) {
    return sample_neighbours(training, input, config);
  }
  return simulate_distribution(training, input, config);
}

}  // namespace qpclass
