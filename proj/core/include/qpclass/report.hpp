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

// JSON/CSV serialization of experiment specs and results. Every document
// carries a schema tag; CSV files start with a "# schema: ..." line.

#pragma once

#include <iosfwd>
#include <span>

#include <nlohmann/json.hpp>

#include "qpclass/experiment.hpp"

namespace qpclass {

inline constexpr const char* kReportSchema = "qpclass.report/v1";
inline constexpr const char* kEvaluateCsvSchema = "qpclass.evaluate.csv/v1";
inline constexpr const char* kDistributionSchema = "qpclass.distribution/v1";
inline constexpr const char* kTimingCsvSchema = "qpclass.timing.csv/v1";
inline constexpr const char* kConfigSchema = "qpclass.config/v1";

nlohmann::ordered_json spec_to_json(const ExperimentSpec& spec);
/// Missing keys keep their ExperimentSpec defaults. Throws ParameterError
/// on malformed values.
ExperimentSpec spec_from_json(const nlohmann::ordered_json& j,
                              const QpcConfig& qpc_defaults = {});

/// Wall-clock fields are emitted only when spec.include_timings is set,
/// so the default document is reproducible byte for byte.
nlohmann::ordered_json report_to_json(const EvaluationReport& report);
void write_report_json(const EvaluationReport& report, std::ostream& out);
void write_report_csv(const EvaluationReport& report, std::ostream& out);

nlohmann::ordered_json distribution_to_json(const DistributionTable& table);
void write_distribution_csv(const DistributionTable& table, std::ostream& out);

void write_timing_csv(std::span<const TimingRow> rows, std::ostream& out);

}  // namespace qpclass
