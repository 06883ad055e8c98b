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

#include "magicflow/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "magicflow/errors.h"
#include "magicflow/model.h"
#include "magicflow/pauli.h"
#include "magicflow/random.h"

namespace magicflow {

namespace {

constexpr int kMinTailCheckpoints = 5;

// Neumaier-compensated accumulator.
struct Accumulator {
    double sum = 0;
    double comp = 0;
    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

std::string format_alpha(double alpha) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", alpha);
    return buf;
}

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

Stats stats_of(const std::vector<double> &values) {
    Stats s;
    size_t count = values.size();
    if (count == 0) {
        return s;
    }
    Accumulator mean_acc;
    for (double v : values) {
        mean_acc.add(v);
    }
    s.mean = mean_acc.value() / static_cast<double>(count);
    if (count > 1) {
        Accumulator var_acc;
        for (double v : values) {
            double d = v - s.mean;
            var_acc.add(d * d);
        }
        s.std = std::sqrt(var_acc.value() / static_cast<double>(count - 1));
    }
    s.stderr_ = s.std / std::sqrt(static_cast<double>(count));
    return s;
}

}  // namespace

std::string to_string(InitialState s) {
    switch (s) {
        case InitialState::Haar:
            return "haar";
        case InitialState::TProduct:
            return "t";
        case InitialState::Gue:
            return "gue";
        case InitialState::Zero:
            return "zero";
    }
    return "?";
}

InitialState parse_initial_state(const std::string &text) {
    if (text == "haar") {
        return InitialState::Haar;
    }
    if (text == "t" || text == "t_product") {
        return InitialState::TProduct;
    }
    if (text == "gue") {
        return InitialState::Gue;
    }
    if (text == "zero") {
        return InitialState::Zero;
    }
    throw std::invalid_argument("unknown initial state '" + text + "' (expected haar, t, gue or zero)");
}

std::vector<int> Schedule::checkpoints(int steps) const {
    if (steps < 0) {
        throw std::invalid_argument("steps must be non-negative");
    }
    std::vector<int> out;
    if (kind == Kind::EveryStep) {
        out.reserve(static_cast<size_t>(steps) + 1);
        for (int t = 0; t <= steps; t++) {
            out.push_back(t);
        }
        return out;
    }
    if (points_per_decade < 1) {
        throw std::invalid_argument("points_per_decade must be >= 1");
    }
    out.push_back(0);
    for (int k = 0;; k++) {
        double t = std::round(std::pow(10.0, static_cast<double>(k) / points_per_decade));
        if (t >= steps) {
            break;
        }
        int ti = static_cast<int>(t);
        if (ti > out.back()) {
            out.push_back(ti);
        }
    }
    if (steps > out.back()) {
        out.push_back(steps);
    }
    return out;
}

std::string Schedule::str() const {
    if (kind == Kind::EveryStep) {
        return "dense";
    }
    return "log:" + std::to_string(points_per_decade);
}

Schedule Schedule::parse(const std::string &text) {
    if (text == "dense") {
        return every_step();
    }
    if (text.rfind("log:", 0) == 0) {
        size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(text.substr(4), &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == text.size() - 4 && used > 0 && k >= 1) {
            return log_spaced(k);
        }
    }
    throw std::invalid_argument("bad schedule '" + text + "' (expected dense or log:K)");
}

std::string sre_column_name(double alpha) { return "sre" + format_alpha(alpha); }

std::vector<std::string> ObservableSet::names() const {
    std::vector<std::string> out;
    if (nullity) {
        out.push_back("nullity");
    }
    for (double a : sre_alphas) {
        out.push_back(sre_column_name(a));
    }
    if (entropy) {
        out.push_back("entropy");
    }
    return out;
}

ObservableSet ObservableSet::parse(const std::string &text) {
    ObservableSet set;
    set.nullity = false;
    set.sre_alphas.clear();
    set.entropy = false;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            continue;
        }
        if (item == "nullity") {
            set.nullity = true;
        } else if (item == "entropy") {
            set.entropy = true;
        } else if (item.rfind("sre", 0) == 0) {
            std::string rest = item.substr(3);
            size_t used = 0;
            double a = 0;
            try {
                a = std::stod(rest, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used == 0 || used != rest.size() || !(a > 0) || a == 1.0 || !std::isfinite(a)) {
                throw std::invalid_argument("bad SRE observable '" + item + "'");
            }
            if (std::find(set.sre_alphas.begin(), set.sre_alphas.end(), a) == set.sre_alphas.end()) {
                set.sre_alphas.push_back(a);
            }
        } else {
            throw std::invalid_argument("unknown observable '" + item + "'");
        }
    }
    if (set.names().empty()) {
        throw std::invalid_argument("no observables requested");
    }
    return set;
}

void ExperimentConfig::validate() const {
    if (n < 1) {
        throw std::invalid_argument("n must be >= 1");
    }
    if (!(theta_m >= 0.0 && theta_m <= 1.0)) {
        throw std::invalid_argument("theta_m must lie in [0, 1]");
    }
    if (steps < 1) {
        throw std::invalid_argument("steps must be >= 1");
    }
    if (trajectories < 1) {
        throw std::invalid_argument("trajectories must be >= 1");
    }
    if (workers < 0) {
        throw std::invalid_argument("workers must be >= 0");
    }
    if (!(gue_time >= 0.0) || !std::isfinite(gue_time)) {
        throw std::invalid_argument("gue_time must be a finite non-negative number");
    }
    if (observables.names().empty()) {
        throw std::invalid_argument("no observables requested");
    }
    for (double a : observables.sre_alphas) {
        if (!(a > 0) || a == 1.0) {
            throw std::invalid_argument("SRE index must be positive and != 1");
        }
    }
    if (observables.entropy) {
        int cut = effective_cut();
        if (cut < 1 || cut >= n) {
            throw std::invalid_argument("entropy cut must lie in [1, n-1]");
        }
    }
    if (n > max_qubits()) {
        throw CapExceeded("state vector", n, max_qubits());
    }
    if (observables.needs_spectrum() && n > spectrum_max_qubits()) {
        throw CapExceeded("SRE/nullity observables", n, spectrum_max_qubits());
    }
    if (initial == InitialState::Gue && n > gue_max_qubits()) {
        throw CapExceeded("GUE initial state", n, gue_max_qubits());
    }
    (void)schedule.checkpoints(steps);
}

size_t EnsembleSummary::column(const std::string &name) const {
    auto it = std::find(observables.begin(), observables.end(), name);
    if (it == observables.end()) {
        throw std::out_of_range("observable '" + name + "' not recorded");
    }
    return static_cast<size_t>(it - observables.begin());
}

std::vector<double> EnsembleSummary::means(const std::string &name) const {
    std::vector<double> out;
    for (const Stats &s : stats[column(name)]) {
        out.push_back(s.mean);
    }
    return out;
}

std::vector<double> EnsembleSummary::stderrs(const std::string &name) const {
    std::vector<double> out;
    for (const Stats &s : stats[column(name)]) {
        out.push_back(s.stderr_);
    }
    return out;
}

StateVector make_initial_state(const ExperimentConfig &config, Rng &rng) {
    switch (config.initial) {
        case InitialState::Haar:
            return haar_state(config.n, rng);
        case InitialState::TProduct:
            return t_product_state(config.n);
        case InitialState::Gue:
            return gue_state(config.n, config.gue_time, rng);
        case InitialState::Zero:
            return zero_state(config.n);
    }
    throw std::logic_error("unhandled initial state");
}

std::vector<double> evaluate_observables(const ExperimentConfig &config, const StateVector &state) {
    const ObservableSet &obs = config.observables;
    std::vector<double> values;
    if (obs.needs_spectrum()) {
        MagicReport report = magic_report(state, obs.sre_alphas, config.nullity_tolerance);
        if (obs.nullity) {
            values.push_back(report.nullity);
        }
        for (const SreValue &v : report.sre) {
            values.push_back(v.value);
        }
    }
    if (obs.entropy) {
        values.push_back(entanglement_entropy(state, config.effective_cut()));
    }
    return values;
}

TrajectoryRecord run_trajectory(const ExperimentConfig &config, uint64_t trajectory_index) {
    config.validate();
    TrajectoryRecord record;
    record.index = trajectory_index;
    record.seed = trajectory_seed(config.master_seed, trajectory_index);
    Rng rng(record.seed);

    std::vector<int> schedule = config.schedule.checkpoints(config.steps);
    record.checkpoints.reserve(schedule.size());

    StateVector state = make_initial_state(config, rng);
    size_t next = 0;
    if (schedule[next] == 0) {
        record.checkpoints.push_back({0, 0, evaluate_observables(config, state)});
        next++;
    }
    for (int t = 1; t <= config.steps; t++) {
        MeasurementFrame frame = sample_frame(config.n, rng);
        MeasurementOutcome outcome = measure_frame_inplace(state, frame, config.theta_m, rng);
        if (next < schedule.size() && schedule[next] == t) {
            record.checkpoints.push_back({t, outcome.sign, evaluate_observables(config, state)});
            next++;
        }
    }
    return record;
}

EnsembleSummary summarize(const ExperimentConfig &config, const std::vector<TrajectoryRecord> &records) {
    EnsembleSummary summary;
    summary.observables = config.observables.names();
    summary.trajectories = static_cast<int>(records.size());
    if (records.empty()) {
        return summary;
    }
    size_t n_checkpoints = records.front().checkpoints.size();
    for (const Checkpoint &c : records.front().checkpoints) {
        summary.steps.push_back(c.step);
    }
    for (const TrajectoryRecord &r : records) {
        if (r.checkpoints.size() != n_checkpoints) {
            throw std::invalid_argument("records have mismatched checkpoint counts");
        }
    }
    summary.stats.assign(summary.observables.size(), std::vector<Stats>(n_checkpoints));
    std::vector<double> column(records.size());
    for (size_t k = 0; k < summary.observables.size(); k++) {
        for (size_t c = 0; c < n_checkpoints; c++) {
            for (size_t r = 0; r < records.size(); r++) {
                column[r] = records[r].checkpoints[c].values.at(k);
            }
            summary.stats[k][c] = stats_of(column);
        }
    }
    return summary;
}

EnsembleResult run_ensemble(const ExperimentConfig &config, bool keep_records) {
    config.validate();
    size_t count = static_cast<size_t>(config.trajectories);
    std::vector<TrajectoryRecord> records(count);

    int workers = config.workers;
    if (workers == 0) {
        workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    workers = std::min<int>(workers, static_cast<int>(count));

    if (workers <= 1) {
        for (size_t i = 0; i < count; i++) {
            records[i] = run_trajectory(config, i);
        }
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto work = [&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    records[i] = run_trajectory(config, i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next.store(count);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; w++) {
            pool.emplace_back(work);
        }
        for (std::thread &t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    EnsembleResult result;
    result.summary = summarize(config, records);
    if (keep_records) {
        result.records = std::move(records);
    }
    return result;
}

namespace {

size_t tail_count(size_t total, double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
        throw std::invalid_argument("tail_fraction must lie in (0, 1)");
    }
    size_t k = static_cast<size_t>(std::ceil(tail_fraction * static_cast<double>(total) - 1e-9));
    if (k < kMinTailCheckpoints) {
        throw std::invalid_argument("too few tail checkpoints (" + std::to_string(k) + " < " +
                                    std::to_string(kMinTailCheckpoints) + ")");
    }
    return k;
}

}  // namespace

static size_t past_burn_in(const std::vector<int> &steps, int burn_in) {
    return static_cast<size_t>(steps.end() - std::lower_bound(steps.begin(), steps.end(), burn_in));
}

int default_burn_in(int n) {
    if (std::ldexp(1.0, -n) >= model::w_fixed_point()) {
        return n;
    }
    double t_up = model::convergence_time(std::ldexp(1.0, -n), 0.01, model::Direction::Up);
    return std::max(n, static_cast<int>(std::ceil(t_up)));
}

Estimate steady_state_estimate(const EnsembleSummary &summary, const std::string &observable,
                               double tail_fraction, int burn_in) {
    const std::vector<Stats> &series = summary.stats[summary.column(observable)];
    size_t k = tail_count(past_burn_in(summary.steps, burn_in), tail_fraction);
    Accumulator mean_acc;
    Accumulator var_acc;
    for (size_t i = series.size() - k; i < series.size(); i++) {
        mean_acc.add(series[i].mean);
        var_acc.add(series[i].stderr_ * series[i].stderr_);
    }
    double kk = static_cast<double>(k);
    return {mean_acc.value() / kk, std::sqrt(var_acc.value()) / kk};
}

Estimate steady_state_from_records(const std::vector<TrajectoryRecord> &records, size_t column,
                                   double tail_fraction, int burn_in) {
    if (records.empty()) {
        throw std::invalid_argument("no records");
    }
    std::vector<double> per_trajectory;
    per_trajectory.reserve(records.size());
    for (const TrajectoryRecord &r : records) {
        std::vector<int> steps;
        for (const Checkpoint &cp : r.checkpoints) {
            steps.push_back(cp.step);
        }
        size_t k = tail_count(past_burn_in(steps, burn_in), tail_fraction);
        Accumulator acc;
        for (size_t i = r.checkpoints.size() - k; i < r.checkpoints.size(); i++) {
            acc.add(r.checkpoints[i].values.at(column));
        }
        per_trajectory.push_back(acc.value() / static_cast<double>(k));
    }
    Stats s = stats_of(per_trajectory);
    return {s.mean, s.stderr_};
}

double time_averaged_std(const std::vector<int> &steps, const std::vector<double> &values, double t_min,
                         double t_max) {
    if (steps.size() != values.size()) {
        throw std::invalid_argument("steps and values differ in length");
    }
    if (!(t_min < t_max)) {
        throw std::invalid_argument("t_min must be below t_max");
    }
    std::vector<std::pair<double, double>> window;
    for (size_t i = 0; i < steps.size(); i++) {
        if (steps[i] >= t_min && steps[i] <= t_max) {
            window.emplace_back(steps[i], values[i]);
        }
    }
    if (window.size() < 2) {
        throw std::invalid_argument("time window holds fewer than two checkpoints");
    }
    Accumulator area;
    for (size_t i = 1; i < window.size(); i++) {
        double dt = window[i].first - window[i - 1].first;
        area.add(0.5 * dt * (window[i].second + window[i - 1].second));
    }
    return area.value() / (window.back().first - window.front().first);
}

std::vector<RareEvent> rare_event_scan(const std::vector<TrajectoryRecord> &records, size_t sre_column,
                                       size_t nullity_column, double threshold) {
    std::vector<RareEvent> events;
    for (const TrajectoryRecord &r : records) {
        for (size_t i = 1; i < r.checkpoints.size(); i++) {
            const Checkpoint &prev = r.checkpoints[i - 1];
            const Checkpoint &cur = r.checkpoints[i];
            double dm = cur.values.at(sre_column) - prev.values.at(sre_column);
            if (dm > threshold) {
                double dnu = cur.values.at(nullity_column) - prev.values.at(nullity_column);
                events.push_back({r.index, cur.step, dm, dnu});
            }
        }
    }
    return events;
}

std::vector<std::vector<double>> sre_drops_by_nullity(const std::vector<TrajectoryRecord> &records, int n,
                                                      size_t sre_column, size_t nullity_column) {
    std::vector<std::vector<double>> drops(static_cast<size_t>(n) + 1);
    for (const TrajectoryRecord &r : records) {
        for (size_t i = 1; i < r.checkpoints.size(); i++) {
            const Checkpoint &prev = r.checkpoints[i - 1];
            const Checkpoint &cur = r.checkpoints[i];
            if (cur.step != prev.step + 1) {
                continue;
            }
            int nu_prev = static_cast<int>(std::lround(prev.values.at(nullity_column)));
            int nu_cur = static_cast<int>(std::lround(cur.values.at(nullity_column)));
            if (nu_cur == nu_prev - 1 && nu_cur >= 0 && nu_cur <= n) {
                drops[static_cast<size_t>(nu_cur)].push_back(prev.values.at(sre_column) -
                                                             cur.values.at(sre_column));
            }
        }
    }
    return drops;
}

}  // namespace magicflow
