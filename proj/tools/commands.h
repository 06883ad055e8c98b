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

#ifndef MAGICFLOW_TOOLS_COMMANDS_H
#define MAGICFLOW_TOOLS_COMMANDS_H

#include <string>
#include <vector>

#include "magicflow/harness.h"

namespace magicflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCap = 2;
inline constexpr int kExitSelftest = 3;

struct SimulateOptions {
    ExperimentConfig config;
    std::string out;
    std::string csv;
    std::string plot;
    bool plot_log_x = true;
    bool plot_log_y = false;
    bool records = false;
    bool quiet = false;
};

struct ModelOptions {
    int n = 10;
    bool magic_basis = false;
    bool analytic = false;
    int steps = -1;
    std::string out;
    std::string plot;
};

struct FitOptions {
    std::string input;
    std::string model = "nullity_fit";
    std::string observable;
    double time_shift = 1.0;
    std::vector<double> guess;
};

struct ReproduceOptions {
    std::string figure;
    std::string outdir = ".";
    bool quick = false;
    int workers = 1;
    uint64_t seed = 7;
};

struct SelftestOptions {
    std::string inject_failure;
};

int cmd_simulate(const SimulateOptions &options);
int cmd_model(const ModelOptions &options);
int cmd_fit(const FitOptions &options);
int cmd_reproduce(const ReproduceOptions &options);
int cmd_selftest(const SelftestOptions &options);

/// Figure ids accepted by cmd_reproduce.
const std::vector<std::string> &figure_ids();

/// Writes JSON, CSV and SVG for one ensemble run under `stem`.
void write_run_outputs(const ExperimentConfig &config, const EnsembleResult &result, const std::string &json_path,
                       const std::string &csv_path, const std::string &plot_path, bool include_records,
                       double wall_time_seconds, bool log_x, bool log_y);

}  // namespace magicflow::cli

#endif
