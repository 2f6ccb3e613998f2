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

// qpclass command-line tool.
//
//   qpclass evaluate      run every configured classifier over a test subset
//   qpclass distribution  class probabilities for one test example
//   qpclass timing        wall-clock sweep of the sparse pipeline
//   qpclass parse-check   validate a pair of IDX files
//
// Exit codes: 0 ok, 1 usage/config error, 2 data error, 3 runtime error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpclass/errors.hpp"
#include "qpclass/experiment.hpp"
#include "qpclass/idx.hpp"
#include "qpclass/report.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string config;
  std::string train_images, train_labels, test_images, test_labels;
  std::size_t n_train = 400, n_test = 100;
  std::string subset = "first";
  int threshold = qpclass::kDefaultThreshold;
  std::vector<std::string> classifiers;
  double epsilon = 1.0;
  std::uint64_t shots = 0;
  std::string version = "class";
  std::uint32_t k = 10;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  unsigned workers = 0;
  bool include_timings = false;
};

bool given(const CLI::App* cmd, const char* name) {
  return cmd->get_option(name)->count() > 0;
}

void add_data_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override it");
  cmd->add_option("--train-images", f.train_images, "IDX training images");
  cmd->add_option("--train-labels", f.train_labels, "IDX training labels");
  cmd->add_option("--test-images", f.test_images, "IDX test images");
  cmd->add_option("--test-labels", f.test_labels, "IDX test labels");
  cmd->add_option("--n-train", f.n_train, "training subset size")
      ->capture_default_str();
  cmd->add_option("--n-test", f.n_test, "test subset size")
      ->capture_default_str();
  cmd->add_option("--subset", f.subset, "first | seed:<u64>")
      ->capture_default_str();
  cmd->add_option("--threshold", f.threshold, "binarization threshold")
      ->check(CLI::Range(0, 255))
      ->capture_default_str();
}

void add_qpc_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--epsilon", f.epsilon, "phase scale epsilon")
      ->capture_default_str();
  cmd->add_option("--shots", f.shots, "shots T; 0 = closed form")
      ->capture_default_str();
  cmd->add_option("--version", f.version, "retrieval version")
      ->check(CLI::IsMember({"class", "neighbour"}))
      ->capture_default_str();
  cmd->add_option("--k", f.k, "neighbour samples for --version neighbour")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "base RNG seed")->capture_default_str();
}

// An explicit --version asks for sampling even when --shots is left at 0.
qpclass::QpcConfig qpc_defaults(const CLI::App* cmd, const CommonFlags& f) {
  qpclass::QpcConfig c;
  c.epsilon = f.epsilon;
  c.shots = f.shots;
  if (c.shots == 0 && given(cmd, "--version")) c.shots = qpclass::QpcConfig{}.shots;
  c.version = f.version == "neighbour"
                  ? qpclass::RetrievalVersion::NeighbourSampling
                  : qpclass::RetrievalVersion::ClassMeasurement;
  c.neighbour_samples = f.k;
  c.rng_seed = f.seed;
  c.validate();
  return c;
}

// Config file first, then any flag given on the command line.
qpclass::ExperimentSpec resolve_spec(const CLI::App* cmd, const CommonFlags& f) {
  const auto qpc = qpc_defaults(cmd, f);
  qpclass::ExperimentSpec spec;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw UsageError("cannot open config file '" + f.config + "'");
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(f.config + ": " + e.what());
    }
    spec = qpclass::spec_from_json(j, qpc);
  }
  if (given(cmd, "--train-images")) spec.train_images = f.train_images;
  if (given(cmd, "--train-labels")) spec.train_labels = f.train_labels;
  if (given(cmd, "--test-images")) spec.test_images = f.test_images;
  if (given(cmd, "--test-labels")) spec.test_labels = f.test_labels;
  if (given(cmd, "--n-train")) spec.n_train = f.n_train;
  if (given(cmd, "--n-test")) spec.n_test = f.n_test;
  if (given(cmd, "--subset")) {
    spec.subset = qpclass::SubsetSelection::parse(f.subset);
  }
  if (given(cmd, "--threshold")) {
    spec.threshold = static_cast<std::uint8_t>(f.threshold);
  }
  if (cmd->get_option_no_throw("--classifier") && given(cmd, "--classifier")) {
    spec.classifiers.clear();
    for (const auto& c : f.classifiers) {
      spec.classifiers.push_back(qpclass::ClassifierSpec::parse(c, qpc));
    }
  }
  if (spec.classifiers.empty()) {
    spec.classifiers.push_back(qpclass::ClassifierSpec::parse("qpc", qpc));
  }
  if (cmd->get_option_no_throw("--out") && given(cmd, "--out")) {
    spec.output_path = f.out;
  }
  if (cmd->get_option_no_throw("--format") && given(cmd, "--format")) {
    spec.format = f.format == "csv" ? qpclass::OutputFormat::Csv
                                    : qpclass::OutputFormat::Json;
  }
  if (cmd->get_option_no_throw("--workers") && given(cmd, "--workers")) {
    spec.workers = f.workers;
  }
  if (f.include_timings) spec.include_timings = true;
  for (const auto* path : {&spec.train_images, &spec.train_labels,
                           &spec.test_images, &spec.test_labels}) {
    if (path->empty()) {
      throw UsageError("all four of --train-images, --train-labels, "
                       "--test-images and --test-labels are required");
    }
  }
  spec.validate();
  return spec;
}

template <typename Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(out);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

int run_evaluate(const CLI::App* cmd, const CommonFlags& f) {
  const auto spec = resolve_spec(cmd, f);
  const auto report = qpclass::run_experiment(spec);
  emit(spec.output_path, [&](std::ostream& out) {
    if (spec.format == qpclass::OutputFormat::Csv) {
      qpclass::write_report_csv(report, out);
    } else {
      qpclass::write_report_json(report, out);
    }
  });
  for (const auto& c : report.classifiers) {
    std::cerr << c.spec.to_string() << ": accuracy " << c.accuracy << " ("
              << c.correct << "/" << c.records.size() << ")";
    if (c.mean_p_ancilla_zero) {
      std::cerr << ", mean P(0_a) " << *c.mean_p_ancilla_zero;
    }
    if (c.abstentions > 0) std::cerr << ", " << c.abstentions << " abstained";
    std::cerr << ", " << c.seconds << " s\n";
  }
  return 0;
}

int run_distribution(const CLI::App* cmd, const CommonFlags& f,
                     std::size_t example) {
  const auto spec = resolve_spec(cmd, f);
  const auto data = qpclass::load_experiment_data(spec);
  const auto qpc = qpc_defaults(cmd, f);
  const auto table = qpclass::distribution_command(data, qpc, example);
  emit(spec.output_path, [&](std::ostream& out) {
    if (spec.format == qpclass::OutputFormat::Csv) {
      qpclass::write_distribution_csv(table, out);
    } else {
      out << qpclass::distribution_to_json(table).dump(2) << '\n';
    }
  });
  return 0;
}

int run_timing(const qpclass::TimingGrid& grid, const std::string& out_path) {
  const auto rows = qpclass::timing_command(grid);
  emit(out_path, [&](std::ostream& out) { qpclass::write_timing_csv(rows, out); });
  return 0;
}

int run_parse_check(const std::string& images, const std::string& labels) {
  qpclass::IdxDataset ds;
  if (!images.empty()) {
    const auto bytes = qpclass::read_file_bytes(images);
    try {
      ds.images = qpclass::parse_idx_images(
          qpclass::is_gzip(bytes) ? qpclass::gunzip(bytes) : bytes);
    } catch (const qpclass::DataError& e) {
      throw qpclass::FormatError(images + ": " + e.what());
    }
    std::cout << images << ": " << ds.images.size() << " images";
    if (!ds.images.empty()) {
      std::cout << " of " << ds.images.front().height << "x"
                << ds.images.front().width;
    }
    std::cout << '\n';
  }
  if (!labels.empty()) {
    const auto bytes = qpclass::read_file_bytes(labels);
    try {
      ds.labels = qpclass::parse_idx_labels(
          qpclass::is_gzip(bytes) ? qpclass::gunzip(bytes) : bytes);
    } catch (const qpclass::DataError& e) {
      throw qpclass::FormatError(labels + ": " + e.what());
    }
    std::cout << labels << ": " << ds.labels.size() << " labels\n";
  }
  if (!images.empty() && !labels.empty()) {
    ds.validate();
    std::cout << "ok\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-inspired pattern classifier: simulation and baselines"};
  app.require_subcommand(1);

  CommonFlags f;

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate classifiers on a test subset");
  add_data_flags(evaluate, f);
  add_qpc_flags(evaluate, f);
  evaluate->add_option("--classifier", f.classifiers,
                       "qpc[:mode=..,eps=..,shots=..,k=..,seed=..] | "
                       "knn[:k=..] | wknn[:k=..,weight=..] | centroid");
  evaluate->add_option("--out", f.out, "output file (default stdout)");
  evaluate->add_option("--format", f.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  evaluate->add_option("--workers", f.workers, "worker threads (0 = all cores)");
  evaluate->add_flag("--include-timings", f.include_timings,
                     "add wall-clock seconds to the report");

  std::size_t example = 0;
  auto* distribution =
      app.add_subcommand("distribution", "Class probabilities for one test example");
  add_data_flags(distribution, f);
  add_qpc_flags(distribution, f);
  distribution->add_option("--example", example, "test-subset index")->required();
  distribution->add_option("--out", f.out, "output file (default stdout)");
  distribution->add_option("--format", f.format, "table format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  qpclass::TimingGrid grid;
  std::string timing_out;
  auto* timing = app.add_subcommand("timing", "Time the sparse pipeline over a grid");
  timing->add_option("--sweep-N", grid.patterns, "training-set sizes")
      ->capture_default_str();
  timing->add_option("--sweep-n", grid.features, "feature counts")
      ->capture_default_str();
  timing->add_option("--sweep-T", grid.shots, "shot counts")
      ->capture_default_str();
  timing->add_option("--classes", grid.num_classes, "number of classes")
      ->capture_default_str();
  timing->add_option("--repeats", grid.repeats, "best-of repeats")
      ->capture_default_str();
  timing->add_option("--seed", grid.seed, "instance seed")->capture_default_str();
  timing->add_option("--out", timing_out, "output file (default stdout)");

  std::string check_images, check_labels;
  auto* parse_check = app.add_subcommand("parse-check", "Validate IDX files");
  parse_check->add_option("--images", check_images, "IDX image file");
  parse_check->add_option("--labels", check_labels, "IDX label file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (evaluate->parsed()) return run_evaluate(evaluate, f);
    if (distribution->parsed()) return run_distribution(distribution, f, example);
    if (timing->parsed()) return run_timing(grid, timing_out);
    if (parse_check->parsed()) {
      if (check_images.empty() && check_labels.empty()) {
        throw UsageError("parse-check needs --images and/or --labels");
      }
      return run_parse_check(check_images, check_labels);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qpclass::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qpclass::ConstructionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qpclass::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
