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

#include "qpclass/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <utility>

#include "qpclass/errors.hpp"

namespace qpclass {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParameterError("classifier option " + std::string(key) +
                         ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

std::size_t parse_k(std::string_view text) {
  if (text == "all") return 0;
  const auto k = parse_number<std::size_t>("k", text);
  if (k == 0) throw ParameterError("classifier option k must be >= 1 or 'all'");
  return k;
}

std::vector<std::pair<std::string_view, std::string_view>> split_options(
    std::string_view text) {
  std::vector<std::pair<std::string_view, std::string_view>> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParameterError("classifier option '" + std::string(item) +
                           "' is not key=value");
    }
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void unknown_option(std::string_view kind, std::string_view key) {
  throw ParameterError("classifier '" + std::string(kind) +
                       "' has no option '" + std::string(key) + "'");
}

// One classification; fills everything except index and true label.
ExampleRecord classify_one(const ExperimentData& data, const ClassifierSpec& spec,
                           std::size_t index) {
  const auto& example = data.tests[index];
  ExampleRecord rec;
  rec.index = index;
  rec.true_label = example.label;
  try {
    switch (spec.kind) {
      case ClassifierKind::Qpc: {
        QpcConfig cfg = spec.qpc;
        cfg.rng_seed = derive_seed(spec.qpc.rng_seed, index);
        const auto r = classify(data.training, example.pattern, cfg);
        rec.predicted = r.predicted;
        rec.distribution = r.distribution.probabilities;
        rec.p_ancilla_zero = r.p_ancilla_zero;
        rec.margin = r.margin;
        rec.shots_used = r.shots_used;
        rec.postselection_failures = r.postselection_failures;
        break;
      }
      case ClassifierKind::Knn:
      case ClassifierKind::WeightedKnn: {
        BaselineConfig cfg = spec.baseline;
        if (cfg.k == 0) cfg.k = data.training.size();
        rec.predicted = spec.kind == ClassifierKind::Knn
                            ? knn_classify(data.training, example.pattern, cfg)
                            : weighted_knn_classify(data.training,
                                                    example.pattern, cfg);
        break;
      }
      case ClassifierKind::Centroid:
        rec.predicted = centroid_classify(data.training, example.pattern);
        break;
    }
  } catch (const PostselectionImpossible& e) {
    rec.abstained = true;
    rec.abstain_reason = std::string("postselection-impossible: ") + e.what();
  } catch (const PostselectionExhausted& e) {
    rec.abstained = true;
    rec.abstain_reason = std::string("postselection-exhausted: ") + e.what();
  }
  rec.correct = rec.predicted.has_value() && *rec.predicted == rec.true_label;
  return rec;
}

// Random patterns/labels for the timing sweep.
TrainingSet random_training(std::size_t count, std::size_t features,
                            std::uint32_t classes, std::mt19937_64& rng) {
  std::vector<LabeledPattern> members;
  members.reserve(count);
  for (std::size_t p = 0; p < count; ++p) {
    BinaryPattern v(features);
    for (std::size_t k = 0; k < features; ++k) v.set(k, rng() & 1u);
    members.push_back({std::move(v), ClassLabel{static_cast<std::uint32_t>(
                                         rng() % classes)}});
  }
  return TrainingSet(std::move(members), classes);
}

}  // namespace

ClassifierSpec ClassifierSpec::parse(std::string_view text,
                                     const QpcConfig& qpc_defaults) {
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const auto opts = colon == std::string_view::npos
                        ? std::vector<std::pair<std::string_view, std::string_view>>{}
                        : split_options(text.substr(colon + 1));
  ClassifierSpec spec;
  spec.qpc = qpc_defaults;

  if (kind == "qpc") {
    spec.kind = ClassifierKind::Qpc;
    std::optional<std::string_view> mode;
    for (auto [key, value] : opts) {
      if (key == "mode") {
        if (value != "analytic" && value != "class" && value != "neighbour") {
          throw ParameterError("qpc mode must be analytic, class or neighbour");
        }
        mode = value;
      } else if (key == "eps") {
        spec.qpc.epsilon = parse_number<double>(key, value);
      } else if (key == "shots") {
        spec.qpc.shots = parse_number<std::uint64_t>(key, value);
      } else if (key == "k") {
        spec.qpc.neighbour_samples = parse_number<std::uint32_t>(key, value);
      } else if (key == "seed") {
        spec.qpc.rng_seed = parse_number<std::uint64_t>(key, value);
      } else {
        unknown_option(kind, key);
      }
    }
    if (mode == "analytic") {
      spec.qpc.shots = 0;
    } else if (mode) {
      spec.qpc.version = *mode == "class" ? RetrievalVersion::ClassMeasurement
                                          : RetrievalVersion::NeighbourSampling;
      // An explicit sampling mode never falls back to the closed form.
      if (spec.qpc.shots == 0) spec.qpc.shots = QpcConfig{}.shots;
    }
    spec.qpc.validate();
  } else if (kind == "knn" || kind == "wknn") {
    spec.kind = kind == "knn" ? ClassifierKind::Knn : ClassifierKind::WeightedKnn;
    spec.baseline.weighting =
        kind == "knn" ? Weighting::Uniform : Weighting::CosineSquared;
    if (kind == "wknn") spec.baseline.k = 0;  // all members
    for (auto [key, value] : opts) {
      if (key == "k") {
        spec.baseline.k = parse_k(value);
      } else if (key == "weight" && kind == "wknn") {
        if (value == "uniform") {
          spec.baseline.weighting = Weighting::Uniform;
        } else if (value == "inverse") {
          spec.baseline.weighting = Weighting::InverseDistance;
        } else if (value == "cos2") {
          spec.baseline.weighting = Weighting::CosineSquared;
        } else {
          throw ParameterError("wknn weight must be uniform, inverse or cos2");
        }
      } else {
        unknown_option(kind, key);
      }
    }
  } else if (kind == "centroid") {
    spec.kind = ClassifierKind::Centroid;
    if (!opts.empty()) unknown_option(kind, opts.front().first);
  } else {
    throw ParameterError("unknown classifier '" + std::string(kind) +
                         "' (expected qpc, knn, wknn or centroid)");
  }
  return spec;
}

std::string ClassifierSpec::to_string() const {
  auto k_text = [](std::size_t k) {
    return k == 0 ? std::string("all") : std::to_string(k);
  };
  switch (kind) {
    case ClassifierKind::Qpc: {
      std::string s = "qpc:mode=";
      if (qpc.analytic()) {
        s += "analytic";
      } else {
        s += std::string(qpclass::to_string(qpc.version));
      }
      s += ",eps=" + format_double(qpc.epsilon);
      if (!qpc.analytic()) {
        if (qpc.version == RetrievalVersion::ClassMeasurement) {
          s += ",shots=" + std::to_string(qpc.shots);
        } else {
          s += ",k=" + std::to_string(qpc.neighbour_samples);
        }
        s += ",seed=" + std::to_string(qpc.rng_seed);
      }
      return s;
    }
    case ClassifierKind::Knn:
      return "knn:k=" + k_text(baseline.k);
    case ClassifierKind::WeightedKnn:
      return "wknn:k=" + k_text(baseline.k) + ",weight=" +
             std::string(qpclass::to_string(baseline.weighting));
    case ClassifierKind::Centroid:
      return "centroid";
  }
  return "?";
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  // splitmix64 finalizer over base + golden-ratio stride.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

ClassifierReport evaluate_classifier(const ExperimentData& data,
                                     const ClassifierSpec& spec,
                                     unsigned workers) {
  const auto start = Clock::now();
  const std::size_t total = data.tests.size();
  ClassifierReport report;
  report.spec = spec;
  report.records.resize(total);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        report.records[i] = classify_one(data, spec, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  double p0_sum = 0.0;
  std::size_t p0_count = 0;
  for (const auto& r : report.records) {
    report.correct += r.correct ? 1 : 0;
    report.abstentions += r.abstained ? 1 : 0;
    if (r.p_ancilla_zero) {
      p0_sum += *r.p_ancilla_zero;
      ++p0_count;
    }
  }
  report.accuracy = total == 0 ? 0.0
                               : static_cast<double>(report.correct) /
                                     static_cast<double>(total);
  if (spec.kind == ClassifierKind::Qpc && p0_count > 0) {
    report.mean_p_ancilla_zero = p0_sum / static_cast<double>(p0_count);
  }
  report.seconds = seconds_since(start);
  return report;
}

void ExperimentSpec::validate() const {
  if (classifiers.empty()) {
    throw ParameterError("at least one classifier must be configured");
  }
  for (const auto& c : classifiers) {
    if (c.kind == ClassifierKind::Qpc) c.qpc.validate();
  }
}

EvaluationReport run_experiment(const ExperimentSpec& spec,
                                const ExperimentData& data) {
  spec.validate();
  const auto start = Clock::now();
  EvaluationReport report;
  report.spec = spec;
  report.training_size = data.training.size();
  report.test_size = data.tests.size();
  for (const auto& c : spec.classifiers) {
    report.classifiers.push_back(evaluate_classifier(data, c, spec.workers));
  }
  report.seconds = seconds_since(start);
  return report;
}

ExperimentData load_experiment_data(const ExperimentSpec& spec) {
  const auto train = load_idx_dataset(spec.train_images, spec.train_labels);
  const auto test = load_idx_dataset(spec.test_images, spec.test_labels);
  return make_subsets(train, test, spec.n_train, spec.n_test, spec.subset,
                      spec.threshold);
}

EvaluationReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  return run_experiment(spec, load_experiment_data(spec));
}

DistributionTable distribution_command(const ExperimentData& data,
                                       const QpcConfig& config,
                                       std::size_t example_index) {
  config.validate();
  if (example_index >= data.tests.size()) {
    throw ParameterError("example index " + std::to_string(example_index) +
                         " out of range [0, " +
                         std::to_string(data.tests.size()) + ")");
  }
  const auto& example = data.tests[example_index];
  DistributionTable table;
  table.example_index = example_index;
  table.true_label = example.label;
  table.analytic =
      analytic_distribution(data.training, example.pattern, config.epsilon);
  table.margin = table.analytic.margin();
  if (config.shots > 0) {
    QpcConfig cfg = config;
    cfg.version = RetrievalVersion::ClassMeasurement;
    cfg.rng_seed = derive_seed(config.rng_seed, example_index);
    table.sampled = simulate_distribution(data.training, example.pattern, cfg);
  }
  return table;
}

std::uint64_t run_shot_loop(const TrainingSet& training,
                            const BinaryPattern& input, double epsilon,
                            std::uint64_t shots, std::uint64_t seed) {
  ShotSampler sampler(seed);
  std::uint64_t zeros = 0;
  std::vector<double> cdf;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const auto psi4 = run_to_psi4(training, input, epsilon);
    const auto terms = psi4.terms();
    cdf.resize(terms.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      acc += std::norm(terms[i].amplitude);
      cdf[i] = acc;
    }
    if (terms[sampler.draw(cdf)].ancilla == 0) ++zeros;
  }
  return zeros;
}

std::vector<TimingRow> timing_command(const TimingGrid& grid) {
  if (grid.repeats == 0) throw ParameterError("timing: repeats must be >= 1");
  std::vector<TimingRow> rows;
  for (auto N : grid.patterns) {
    for (auto n : grid.features) {
      for (auto T : grid.shots) {
        if (N == 0 || n == 0 || T == 0) {
          throw ParameterError("timing: N, n and T must be >= 1");
        }
        std::mt19937_64 rng(derive_seed(grid.seed, N * 1'000'003 + n));
        const auto training = random_training(N, n, grid.num_classes, rng);
        BinaryPattern input(n);
        for (std::size_t k = 0; k < n; ++k) input.set(k, rng() & 1u);

        double best = 0.0;
        for (unsigned r = 0; r < grid.repeats; ++r) {
          const auto start = Clock::now();
          run_shot_loop(training, input, 1.0, T, grid.seed + r);
          const double t = seconds_since(start);
          if (r == 0 || t < best) best = t;
        }
        rows.push_back(TimingRow{N, n, T, best});
      }
    }
  }
  return rows;
}

}  // namespace qpclass
