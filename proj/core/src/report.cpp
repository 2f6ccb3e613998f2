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

#include "qpclass/report.hpp"

#include <charconv>
#include <ostream>
#include <string>

#include "qpclass/errors.hpp"

namespace qpclass {

using nlohmann::ordered_json;

namespace {

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string_view kind_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::Qpc: return "qpc";
    case ClassifierKind::Knn: return "knn";
    case ClassifierKind::WeightedKnn: return "wknn";
    case ClassifierKind::Centroid: return "centroid";
  }
  return "?";
}

ordered_json record_to_json(const ExampleRecord& r, ClassifierKind kind) {
  ordered_json j;
  j["index"] = r.index;
  j["true_label"] = r.true_label.value;
  j["predicted"] = r.predicted ? ordered_json(r.predicted->value) : ordered_json();
  j["correct"] = r.correct;
  j["abstained"] = r.abstained;
  if (kind != ClassifierKind::Qpc) return j;
  j["abstain_reason"] =
      r.abstained ? ordered_json(r.abstain_reason) : ordered_json();
  j["distribution"] =
      r.distribution.empty() ? ordered_json() : ordered_json(r.distribution);
  j["p_ancilla_zero"] =
      r.p_ancilla_zero ? ordered_json(*r.p_ancilla_zero) : ordered_json();
  j["margin"] = r.margin ? ordered_json(*r.margin) : ordered_json();
  j["shots_used"] = r.shots_used;
  j["postselection_failures"] = r.postselection_failures;
  return j;
}

template <typename T>
T get_or(const ordered_json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

ordered_json spec_to_json(const ExperimentSpec& spec) {
  // Output location, format, and worker count do not change the results and
  // are left out so reports stay comparable across runs.
  ordered_json j;
  j["schema"] = kConfigSchema;
  j["train_images"] = spec.train_images;
  j["train_labels"] = spec.train_labels;
  j["test_images"] = spec.test_images;
  j["test_labels"] = spec.test_labels;
  j["n_train"] = spec.n_train;
  j["n_test"] = spec.n_test;
  j["subset"] = spec.subset.to_string();
  j["threshold"] = spec.threshold;
  ordered_json classifiers = ordered_json::array();
  for (const auto& c : spec.classifiers) classifiers.push_back(c.to_string());
  j["classifiers"] = std::move(classifiers);
  return j;
}

ExperimentSpec spec_from_json(const ordered_json& j,
                              const QpcConfig& qpc_defaults) {
  if (!j.is_object()) throw ParameterError("config must be a JSON object");
  ExperimentSpec spec;
  spec.train_images = get_or<std::string>(j, "train_images", spec.train_images);
  spec.train_labels = get_or<std::string>(j, "train_labels", spec.train_labels);
  spec.test_images = get_or<std::string>(j, "test_images", spec.test_images);
  spec.test_labels = get_or<std::string>(j, "test_labels", spec.test_labels);
  spec.n_train = get_or<std::size_t>(j, "n_train", spec.n_train);
  spec.n_test = get_or<std::size_t>(j, "n_test", spec.n_test);
  spec.subset = SubsetSelection::parse(
      get_or<std::string>(j, "subset", spec.subset.to_string()));
  const int threshold = get_or<int>(j, "threshold", spec.threshold);
  if (threshold < 0 || threshold > 255) {
    throw ParameterError("config threshold must lie in [0, 255]");
  }
  spec.threshold = static_cast<std::uint8_t>(threshold);
  for (const auto& c :
       get_or<std::vector<std::string>>(j, "classifiers", {})) {
    spec.classifiers.push_back(ClassifierSpec::parse(c, qpc_defaults));
  }
  spec.output_path = get_or<std::string>(j, "out", spec.output_path);
  const auto format = get_or<std::string>(j, "format", "json");
  if (format == "json") {
    spec.format = OutputFormat::Json;
  } else if (format == "csv") {
    spec.format = OutputFormat::Csv;
  } else {
    throw ParameterError("config format must be json or csv");
  }
  spec.workers = get_or<unsigned>(j, "workers", spec.workers);
  spec.include_timings = get_or<bool>(j, "include_timings", false);
  return spec;
}

ordered_json report_to_json(const EvaluationReport& report) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["config"] = spec_to_json(report.spec);
  j["training_size"] = report.training_size;
  j["test_size"] = report.test_size;
  ordered_json classifiers = ordered_json::array();
  for (const auto& c : report.classifiers) {
    ordered_json cj;
    cj["name"] = c.spec.to_string();
    cj["type"] = kind_name(c.spec.kind);
    cj["accuracy"] = c.accuracy;
    cj["correct"] = c.correct;
    cj["total"] = c.records.size();
    cj["abstentions"] = c.abstentions;
    if (c.spec.kind == ClassifierKind::Qpc) {
      cj["mean_p_ancilla_zero"] = c.mean_p_ancilla_zero
                                      ? ordered_json(*c.mean_p_ancilla_zero)
                                      : ordered_json();
    }
    if (report.spec.include_timings) cj["seconds"] = c.seconds;
    ordered_json records = ordered_json::array();
    for (const auto& r : c.records) {
      records.push_back(record_to_json(r, c.spec.kind));
    }
    cj["records"] = std::move(records);
    classifiers.push_back(std::move(cj));
  }
  j["classifiers"] = std::move(classifiers);
  if (report.spec.include_timings) j["seconds"] = report.seconds;
  return j;
}

void write_report_json(const EvaluationReport& report, std::ostream& out) {
  out << report_to_json(report).dump(2) << '\n';
}

void write_report_csv(const EvaluationReport& report, std::ostream& out) {
  std::size_t classes = 0;
  for (const auto& c : report.classifiers) {
    for (const auto& r : c.records) {
      classes = std::max(classes, r.distribution.size());
    }
  }
  out << "# schema: " << kEvaluateCsvSchema << '\n';
  out << "classifier,example,true_label,predicted,correct,abstained,"
         "p_ancilla_zero,margin,shots_used,postselection_failures";
  for (std::size_t c = 0; c < classes; ++c) out << ",p" << c;
  out << '\n';
  for (const auto& c : report.classifiers) {
    const auto name = c.spec.to_string();
    for (const auto& r : c.records) {
      out << '"' << name << "\"," << r.index << ',' << r.true_label.value << ',';
      if (r.predicted) out << r.predicted->value;
      out << ',' << (r.correct ? 1 : 0) << ',' << (r.abstained ? 1 : 0) << ',';
      if (r.p_ancilla_zero) out << num(*r.p_ancilla_zero);
      out << ',';
      if (r.margin) out << num(*r.margin);
      out << ',' << r.shots_used << ',' << r.postselection_failures;
      for (std::size_t k = 0; k < classes; ++k) {
        out << ',';
        if (k < r.distribution.size()) out << num(r.distribution[k]);
      }
      out << '\n';
    }
  }
}

ordered_json distribution_to_json(const DistributionTable& table) {
  ordered_json j;
  j["schema"] = kDistributionSchema;
  j["example"] = table.example_index;
  j["true_label"] = table.true_label.value;
  j["p_ancilla_zero"] = table.analytic.p_ancilla_zero;
  j["margin"] = table.margin;
  j["analytic"] = table.analytic.probabilities;
  if (table.sampled) {
    ordered_json s;
    s["shots"] = table.sampled->shots_used;
    s["postselection_failures"] = table.sampled->postselection_failures;
    s["predicted"] = table.sampled->predicted.value;
    s["margin"] = table.sampled->margin;
    s["probabilities"] = table.sampled->distribution.probabilities;
    j["sampled"] = std::move(s);
  } else {
    j["sampled"] = nullptr;
  }
  return j;
}

void write_distribution_csv(const DistributionTable& table, std::ostream& out) {
  out << "# schema: " << kDistributionSchema << '\n';
  out << "example,true_label,class,analytic,sampled,p_ancilla_zero,margin\n";
  const auto& a = table.analytic.probabilities;
  for (std::size_t c = 0; c < a.size(); ++c) {
    out << table.example_index << ',' << table.true_label.value << ',' << c
        << ',' << num(a[c]) << ',';
    if (table.sampled) out << num(table.sampled->distribution.probabilities[c]);
    out << ',' << num(table.analytic.p_ancilla_zero) << ',' << num(table.margin)
        << '\n';
  }
}

void write_timing_csv(std::span<const TimingRow> rows, std::ostream& out) {
  out << "# schema: " << kTimingCsvSchema << '\n';
  out << "N,n,T,seconds,seconds_per_shot\n";
  for (const auto& r : rows) {
    out << r.patterns << ',' << r.features << ',' << r.shots << ','
        << num(r.seconds) << ',' << num(r.seconds / static_cast<double>(r.shots))
        << '\n';
  }
}

}  // namespace qpclass
