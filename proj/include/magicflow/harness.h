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

#ifndef MAGICFLOW_HARNESS_H
#define MAGICFLOW_HARNESS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "magicflow/spectrum.h"
#include "magicflow/state.h"

namespace magicflow {

enum class InitialState { Haar, TProduct, Gue, Zero };

std::string to_string(InitialState s);
/// Accepts "haar", "t", "t_product", "gue", "zero".
InitialState parse_initial_state(const std::string &text);

/// Steps at which observables are evaluated.
struct Schedule {
    enum class Kind { EveryStep, LogSpaced };
    Kind kind = Kind::LogSpaced;
    int points_per_decade = 20;

    static Schedule every_step() { return {Kind::EveryStep, 0}; }
    static Schedule log_spaced(int points_per_decade) { return {Kind::LogSpaced, points_per_decade}; }

    /// Strictly increasing steps in [0, steps]; always contains 0 and `steps`.
    /// Log spacing takes round(10^(k/K)) for k = 0, 1, ... and drops
    /// duplicates.
    std::vector<int> checkpoints(int steps) const;

    std::string str() const;  // "dense" or "log:K"
    static Schedule parse(const std::string &text);
};

/// Which observables each checkpoint records.
struct ObservableSet {
    bool nullity = true;
    /// Renyi indices of the SREs to record; 2 gives M_2.
    std::vector<double> sre_alphas = {2.0};
    bool entropy = false;
    /// Entanglement cut; 0 selects n/2.
    int cut = 0;

    /// Column names in record order: "nullity", "sre2", "sre0.5", ..., "entropy".
    std::vector<std::string> names() const;
    bool needs_spectrum() const { return nullity || !sre_alphas.empty(); }

    /// Comma-separated list, e.g. "nullity,sre2,sre3,entropy".
    static ObservableSet parse(const std::string &text);
};

/// Name of the SRE column for a Renyi index ("sre2", "sre0.5").
std::string sre_column_name(double alpha);

struct ExperimentConfig {
    int n = 6;
    double theta_m = 0.0;
    int steps = 100;
    int trajectories = 100;
    InitialState initial = InitialState::Haar;
    /// Evolution time of the GUE initial state.
    double gue_time = 0.1;
    uint64_t master_seed = 1;
    Schedule schedule;
    ObservableSet observables;
    double nullity_tolerance = kDefaultNullityTolerance;
    /// Worker threads; 0 uses the hardware concurrency. Results do not depend
    /// on it.
    int workers = 1;

    /// Throws std::invalid_argument on bad ranges and CapExceeded when an
    /// observable cannot be evaluated at this size.
    void validate() const;
    int effective_cut() const { return observables.cut > 0 ? observables.cut : n / 2; }
};

struct Checkpoint {
    int step = 0;
    /// Outcome of the measurement performed at this step (0 at step 0).
    int outcome = 0;
    /// One value per ObservableSet::names() entry.
    std::vector<double> values;
};

struct TrajectoryRecord {
    uint64_t index = 0;
    uint64_t seed = 0;
    std::vector<Checkpoint> checkpoints;
};

struct Stats {
    double mean = 0;
    double std = 0;
    double stderr_ = 0;
};

struct EnsembleSummary {
    std::vector<int> steps;
    std::vector<std::string> observables;
    /// stats[observable][checkpoint]
    std::vector<std::vector<Stats>> stats;
    int trajectories = 0;

    /// Column index of `name`; throws if absent.
    size_t column(const std::string &name) const;
    std::vector<double> means(const std::string &name) const;
    std::vector<double> stderrs(const std::string &name) const;
};

struct EnsembleResult {
    EnsembleSummary summary;
    std::vector<TrajectoryRecord> records;
};

/// Builds the initial state of a trajectory; consumes `rng` for the random
/// ensembles.
StateVector make_initial_state(const ExperimentConfig &config, Rng &rng);

/// Evaluates the configured observables on `state`.
std::vector<double> evaluate_observables(const ExperimentConfig &config, const StateVector &state);

/// Runs one trajectory. Deterministic in (master_seed, trajectory_index):
/// the generator is seeded with trajectory_seed(master_seed, index).
TrajectoryRecord run_trajectory(const ExperimentConfig &config, uint64_t trajectory_index);

/// Mean, sample standard deviation and standard error per checkpoint, reduced
/// in trajectory order.
EnsembleSummary summarize(const ExperimentConfig &config, const std::vector<TrajectoryRecord> &records);

/// Runs all trajectories (on config.workers threads) and summarizes them.
EnsembleResult run_ensemble(const ExperimentConfig &config, bool keep_records = false);

struct Estimate {
    double mean = 0;
    double error = 0;
};

/// max(N, T_up(2^-N, 0.01)) steps.
int default_burn_in(int n);

/// Average of the ensemble means over the last ceil(tail_fraction * count)
/// of the checkpoints at or after burn_in. The error sqrt(sum stderr_i^2) / k
/// treats checkpoints as independent and so ignores autocorrelation. Throws
/// with fewer than 5 tail checkpoints.
Estimate steady_state_estimate(const EnsembleSummary &summary, const std::string &observable,
                               double tail_fraction, int burn_in = 0);

/// Per-trajectory tail averages, then mean and standard error across
/// trajectories. Autocorrelation within a trajectory is absorbed into the
/// per-trajectory average.
Estimate steady_state_from_records(const std::vector<TrajectoryRecord> &records, size_t column,
                                   double tail_fraction, int burn_in = 0);

/// Trapezoidal time average of `values` over checkpoints with step in
/// [t_min, t_max].
double time_averaged_std(const std::vector<int> &steps, const std::vector<double> &values, double t_min,
                         double t_max);

struct RareEvent {
    uint64_t trajectory;
    int step;
    double delta_m2;
    double delta_nu;
};

/// Positive SRE jumps larger than `threshold` between consecutive checkpoints.
std::vector<RareEvent> rare_event_scan(const std::vector<TrajectoryRecord> &records, size_t sre_column,
                                       size_t nullity_column, double threshold = 1e-6);

/// SRE drops across single-step nullity decrements nu+1 -> nu, grouped by nu.
/// Only consecutive checkpoints one step apart are used.
std::vector<std::vector<double>> sre_drops_by_nullity(const std::vector<TrajectoryRecord> &records, int n,
                                                      size_t sre_column, size_t nullity_column);

}  // namespace magicflow

#endif
