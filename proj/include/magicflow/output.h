// Copyright 2026 The magicflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAGICFLOW_OUTPUT_H
#define MAGICFLOW_OUTPUT_H

#include <string>
#include <vector>

#include "json.hpp"
#include "magicflow/harness.h"

namespace magicflow {

using Json = nlohmann::json;

/// Canonical config echo. Keys are sorted, so equal configs dump identically.
Json config_to_json(const ExperimentConfig &config);
ExperimentConfig config_from_json(const Json &json);

struct Provenance {
    uint64_t seed = 0;
    std::string version;
    double wall_time_seconds = 0;
};

/// Provenance with the library version filled in.
Provenance make_provenance(uint64_t seed, double wall_time_seconds);

/// Summary bundle:
///   {"config": ..., "trajectories": N,
///    "arrays": {"step": [...], "observables": {name: {"mean", "std", "stderr"}}},
///    "records": [...]            (only when `records` is non-null),
///    "provenance": {"seed", "version", "wall_time_seconds"}}
Json summary_bundle(const ExperimentConfig &config, const EnsembleSummary &summary,
                    const std::vector<TrajectoryRecord> *records, const Provenance &provenance);

Json record_to_json(const TrajectoryRecord &record, const std::vector<std::string> &observables);

/// Plot-ready table of doubles.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
};

/// Columns step, <obs>_mean, <obs>_std, <obs>_stderr for every observable.
Table summary_table(const EnsembleSummary &summary);

/// CSV text whose first line is "# config: <compact json>".
std::string csv_string(const Table &table, const Json &config);

/// Writes `content` to `path`; throws std::runtime_error on failure.
void write_text_file(const std::string &path, const std::string &content);

}  // namespace magicflow

#endif
